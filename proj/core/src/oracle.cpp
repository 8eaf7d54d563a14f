#include "dki/oracle.hpp"

#include <algorithm>
#include <climits>

#include "dki/errors.hpp"

namespace dki {

namespace {

constexpr int kMaxLength = 21;  // 3 bits of region code per value
constexpr int kMaxStacks = 4;

constexpr std::uint64_t kCodeInput = 0;
constexpr std::uint64_t kCodeEmitted = 1;

std::uint64_t stack_code(int stack_index) {
  return 2 + static_cast<std::uint64_t>(stack_index);
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Lexicographic rank of a permutation of 1..m within S_m.
std::uint64_t lex_rank(const std::vector<int>& vals) {
  const int m = static_cast<int>(vals.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < m; ++i) {
    int smaller_right = 0;
    for (int j = i + 1; j < m; ++j)
      if (vals[static_cast<size_t>(j)] < vals[static_cast<size_t>(i)])
        ++smaller_right;
    rank += static_cast<std::uint64_t>(smaller_right) * factorial(m - 1 - i);
  }
  return rank;
}

}  // namespace

std::string format_witness(const Witness& w) {
  std::string out;
  for (size_t i = 0; i < w.ops.size(); ++i) {
    if (i) out.push_back(' ');
    out += operation_name(w.ops[i]);
  }
  return out;
}

Oracle::Oracle(int k, OracleOptions opts) : k_(k), opts_(opts) {
  if (k < 0) throw std::invalid_argument("oracle: k must be >= 0");
  if (k > kMaxStacks)
    throw LimitError("oracle: state packing supports k <= " +
                     std::to_string(kMaxStacks));
  stacks_.resize(static_cast<size_t>(k) + 1);
}

void Oracle::prepare(std::span<const int> values) {
  if (values.size() > kMaxLength)
    throw LimitError("oracle: permutations longer than " +
                     std::to_string(kMaxLength) + " are not supported");
  input_.assign(values.begin(), values.end());
  pos_ = 0;
  for (auto& s : stacks_) s.clear();
  next_needed_ = 1;
  key_ = 0;
  path_.clear();
  dead_.clear();
}

bool Oracle::trapped_after_push(int b) const {
  // A smaller value sits in a decreasing stack no later than a larger one.
  int running_min = INT_MAX;
  bool stack_holds_larger = false;
  for (int j = 0; j < k_; ++j) {
    const auto& d = stacks_[static_cast<size_t>(j)];
    if (d.empty()) continue;
    running_min = std::min(running_min, d.front());
    if (d.back() > b) {
      if (running_min < b) return true;
      stack_holds_larger = true;
    }
  }
  // A smaller value still in the input, behind a larger one (in a stack or
  // earlier in the input itself).
  bool input_holds_larger = false;
  const int n = static_cast<int>(input_.size());
  for (int t = pos_; t < n; ++t) {
    const int v = input_[static_cast<size_t>(t)];
    if (v > b) {
      input_holds_larger = true;
    } else if (v < b) {
      if (stack_holds_larger || input_holds_larger) return true;
    }
  }
  return false;
}

bool Oracle::search() {
  const int n = static_cast<int>(input_.size());

  int emitted_here = 0;
  if (!opts_.unrestricted_emissions) {
    // Emitting the value the output needs is never a mistake: nothing can be
    // pushed onto it (no smaller value remains), so take it immediately.
    auto& ist = stacks_[static_cast<size_t>(k_)];
    while (!ist.empty() && ist.back() == next_needed_) {
      ist.pop_back();
      key_ ^= (stack_code(k_) ^ kCodeEmitted)
              << (3 * (next_needed_ - 1));
      ++next_needed_;
      path_.push_back(Operation{k_ + 1});
      ++emitted_here;
    }
  }

  bool found = false;
  if (next_needed_ > n) {
    found = true;
  } else if (dead_.insert(key_).second) {
    if (opts_.unrestricted_emissions) {
      auto& ist = stacks_[static_cast<size_t>(k_)];
      if (!ist.empty() && ist.back() == next_needed_) {
        const int v = ist.back();
        ist.pop_back();
        key_ ^= (stack_code(k_) ^ kCodeEmitted) << (3 * (v - 1));
        ++next_needed_;
        path_.push_back(Operation{k_ + 1});
        if (search()) return true;
        path_.pop_back();
        --next_needed_;
        key_ ^= (stack_code(k_) ^ kCodeEmitted) << (3 * (v - 1));
        ist.push_back(v);
      }
      // A last-resort emission of anything else makes the output leave the
      // identity prefix; those branches are dead on arrival and skipped.
    }
    for (int i = k_; i >= 0 && !found; --i) {
      auto& target = stacks_[static_cast<size_t>(i)];
      int v;
      if (i == 0) {
        if (pos_ >= n) continue;
        v = input_[static_cast<size_t>(pos_)];
      } else {
        auto& src = stacks_[static_cast<size_t>(i - 1)];
        if (src.empty()) continue;
        v = src.back();
      }
      if (!target.empty()) {
        const bool ok = i == k_ ? v < target.back() : v > target.back();
        if (!ok) continue;
      }
      // Apply.
      const std::uint64_t from = i == 0 ? kCodeInput : stack_code(i - 1);
      if (i == 0)
        ++pos_;
      else
        stacks_[static_cast<size_t>(i - 1)].pop_back();
      target.push_back(v);
      key_ ^= (from ^ stack_code(i)) << (3 * (v - 1));
      path_.push_back(Operation{i});

      if (opts_.prune_trapped && i == k_ && trapped_after_push(v)) {
        dead_.insert(key_);
      } else if (search()) {
        return true;
      }

      // Undo.
      path_.pop_back();
      key_ ^= (from ^ stack_code(i)) << (3 * (v - 1));
      target.pop_back();
      if (i == 0)
        --pos_;
      else
        stacks_[static_cast<size_t>(i - 1)].push_back(v);
    }
  }

  if (found) return true;
  for (int t = 0; t < emitted_here; ++t) {
    --next_needed_;
    stacks_[static_cast<size_t>(k_)].push_back(next_needed_);
    key_ ^= (stack_code(k_) ^ kCodeEmitted) << (3 * (next_needed_ - 1));
    path_.pop_back();
  }
  return false;
}

bool Oracle::is_sortable(std::span<const int> values) {
  prepare(values);
  return search();
}

bool Oracle::is_sortable(const Permutation& p) {
  return is_sortable(std::span<const int>(p.values()));
}

std::optional<Witness> Oracle::sorting_witness(const Permutation& p) {
  prepare(p.values());
  if (!search()) return std::nullopt;
  return Witness{path_};
}

bool Oracle::is_minimal_nonsortable(const Permutation& p) {
  if (is_sortable(p)) return false;
  for (int pos = 1; pos <= p.size(); ++pos)
    if (!is_sortable(p.delete_at(pos))) return false;
  return true;
}

bool is_sortable(const Permutation& p, int k, OracleOptions opts) {
  Oracle oracle(k, opts);
  return oracle.is_sortable(p);
}

std::optional<Witness> sorting_witness(const Permutation& p, int k,
                                       OracleOptions opts) {
  Oracle oracle(k, opts);
  return oracle.sorting_witness(p);
}

bool is_minimal_nonsortable(const Permutation& p, int k, OracleOptions opts) {
  Oracle oracle(k, opts);
  return oracle.is_minimal_nonsortable(p);
}

std::vector<Permutation> basis_up_to(int n_max, int k, OracleOptions opts) {
  if (n_max > kMaxOracleScanLength)
    throw LimitError("basis mining scans all of S_n; n_max <= " +
                     std::to_string(kMaxOracleScanLength) + " required");
  Oracle oracle(k, opts);
  std::vector<Permutation> basis;
  std::vector<std::uint8_t> prev_sortable;  // indexed by lexicographic rank
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::uint8_t> cur_sortable(factorial(n));
    std::vector<int> vals(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = i + 1;
    std::uint64_t idx = 0;
    do {
      const bool sortable = oracle.is_sortable(vals);
      cur_sortable[idx] = sortable ? 1 : 0;
      if (!sortable) {
        const Permutation p = Permutation::from_sequence(vals);
        bool minimal = true;
        for (int pos = 1; pos <= n && minimal; ++pos) {
          const Permutation q = p.delete_at(pos);
          minimal = n == 1 || prev_sortable[lex_rank(q.values())] != 0;
        }
        if (minimal) basis.push_back(p);
      }
      ++idx;
    } while (std::next_permutation(vals.begin(), vals.end()));
    prev_sortable = std::move(cur_sortable);
  }
  return basis;
}

}  // namespace dki
