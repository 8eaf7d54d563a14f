#include "dki/analysis.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <thread>

#include "dki/errors.hpp"

namespace dki {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Lexicographically idx-th permutation of 1..n (factorial number system).
std::vector<int> nth_permutation(int n, std::uint64_t idx) {
  std::vector<int> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = n; i >= 1; --i) {
    const std::uint64_t f = factorial(i - 1);
    const size_t digit = static_cast<size_t>(idx / f);
    idx %= f;
    out.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return out;
}

// Visits permutations of S_n with lexicographic indices in [begin, end).
template <typename Visit>
void visit_sn_range(int n, std::uint64_t begin, std::uint64_t end,
                    Visit&& visit) {
  if (begin >= end) return;
  std::vector<int> vals = nth_permutation(n, begin);
  std::uint64_t remaining = end - begin;
  do {
    visit(std::span<const int>(vals));
  } while (--remaining > 0 && std::next_permutation(vals.begin(), vals.end()));
}

// Splits S_n into contiguous lexicographic blocks, one per worker. Each
// worker gets its own decider instance; results land in per-worker slots and
// are merged by the caller, so output does not depend on scheduling.
// `work(decider_fn, begin, end, slot)`.
template <typename Work>
void parallel_sweep(const DeciderSpec& decider, int n, int jobs, Work&& work) {
  const std::uint64_t total = factorial(n);
  const int workers =
      (jobs > 1 && n >= 2 && total >= 100000) ? jobs : 1;
  if (workers == 1) {
    auto fn = decider.make_decider();
    work(fn, static_cast<std::uint64_t>(0), total, 0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t begin = total * static_cast<std::uint64_t>(w) /
                                static_cast<std::uint64_t>(workers);
    const std::uint64_t end = total * static_cast<std::uint64_t>(w + 1) /
                              static_cast<std::uint64_t>(workers);
    threads.emplace_back([&decider, &work, begin, end, w] {
      auto fn = decider.make_decider();
      work(fn, begin, end, w);
    });
  }
  for (auto& t : threads) t.join();
}

void check_scan_limit(const DeciderSpec& decider, int n_max,
                      bool allow_length_11) {
  if (decider.is_oracle()) {
    if (n_max > kMaxOracleScanLength)
      throw LimitError("oracle sweeps are limited to n <= " +
                       std::to_string(kMaxOracleScanLength));
    return;
  }
  const int limit = allow_length_11 ? 11 : 10;
  if (n_max > limit)
    throw LimitError(
        n_max <= 11
            ? "n = 11 sweeps 39.9M permutations; pass the explicit "
              "length-11 flag to run it"
            : "strategy sweeps are limited to n <= 11");
}

int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

DeciderSpec DeciderSpec::strategy(StrategyId id) {
  DeciderSpec spec;
  spec.strategy_ = id;
  spec.k_ = id.k;
  return spec;
}

DeciderSpec DeciderSpec::oracle(int k, OracleOptions opts) {
  DeciderSpec spec;
  spec.k_ = k;
  spec.opts_ = opts;
  return spec;
}

std::string DeciderSpec::name() const {
  return strategy_ ? strategy_->name() : "oracle";
}

std::function<bool(std::span<const int>)> DeciderSpec::make_decider() const {
  if (strategy_) {
    auto runner = std::make_shared<StrategyRunner>(*strategy_);
    return [runner](std::span<const int> vals) { return runner->sorts(vals); };
  }
  auto oracle = std::make_shared<Oracle>(k_, opts_);
  return [oracle](std::span<const int> vals) {
    return oracle->is_sortable(vals);
  };
}

CountTable count_sortable_by_length(const DeciderSpec& decider, int n_max,
                                    int jobs, bool allow_length_11) {
  if (n_max < 0)
    throw std::invalid_argument("count_sortable_by_length: n_max < 0");
  check_scan_limit(decider, n_max, allow_length_11);
  jobs = effective_jobs(jobs);

  CountTable table;
  table.decider = decider.name();
  table.k = decider.k();
  table.rows.emplace_back(0, 1);  // the empty permutation sorts trivially
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::uint64_t> partial(static_cast<size_t>(jobs), 0);
    parallel_sweep(decider, n, jobs,
                   [&](auto& decide, std::uint64_t begin, std::uint64_t end,
                       int slot) {
                     std::uint64_t local = 0;
                     visit_sn_range(n, begin, end,
                                    [&](std::span<const int> vals) {
                                      if (decide(vals)) ++local;
                                    });
                     partial[static_cast<size_t>(slot)] = local;
                   });
    table.rows.emplace_back(
        n, std::accumulate(partial.begin(), partial.end(),
                           static_cast<std::uint64_t>(0)));
  }
  return table;
}

EquivalenceResult verify_class_equivalence(const DeciderSpec& decider,
                                           const std::vector<Permutation>& basis,
                                           int n_max, int jobs,
                                           bool allow_length_11) {
  check_scan_limit(decider, n_max, allow_length_11);
  jobs = effective_jobs(jobs);

  EquivalenceResult result;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<std::vector<Permutation>> partial(static_cast<size_t>(jobs));
    parallel_sweep(
        decider, n, jobs,
        [&](auto& decide, std::uint64_t begin, std::uint64_t end, int slot) {
          visit_sn_range(n, begin, end, [&](std::span<const int> vals) {
            const bool decided = decide(vals);
            Permutation p = Permutation::from_sequence(
                std::vector<int>(vals.begin(), vals.end()));
            bool avoids = true;
            for (const Permutation& b : basis)
              if (contains(b, p)) {
                avoids = false;
                break;
              }
            if (decided != avoids)
              partial[static_cast<size_t>(slot)].push_back(std::move(p));
          });
        });
    for (auto& chunk : partial)
      for (auto& p : chunk) result.counterexamples.push_back(std::move(p));
  }
  std::sort(result.counterexamples.begin(), result.counterexamples.end(),
            length_lex_less);
  result.equal = result.counterexamples.empty();
  return result;
}

std::uint64_t count_avoiders(const std::vector<Permutation>& basis, int n) {
  if (n == 0) return 1;
  std::uint64_t count = 0;
  visit_sn_range(n, 0, factorial(n), [&](std::span<const int> vals) {
    Permutation p = Permutation::from_sequence(
        std::vector<int>(vals.begin(), vals.end()));
    for (const Permutation& b : basis)
      if (contains(b, p)) return;
    ++count;
  });
  return count;
}

const std::vector<ExtensionPattern>& extension_patterns() {
  static const std::vector<ExtensionPattern> patterns = [] {
    const Permutation base = parse_permutation("52314");
    std::vector<ExtensionPattern> out = {
        {parse_permutation("631425"), {3}},
        {parse_permutation("7214536"), {2, 3}},
        {parse_permutation("7314526"), {2, 3}},
        {parse_permutation("72814536"), {1, 2, 4}},
        {parse_permutation("73814526"), {1, 2, 4}},
        {parse_permutation("82714536"), {1, 2, 4}},
        {parse_permutation("83714526"), {1, 2, 4}},
    };
    for (const ExtensionPattern& ep : out) {
      Permutation reduced = ep.pattern;
      for (auto it = ep.dotted.rbegin(); it != ep.dotted.rend(); ++it)
        reduced = reduced.delete_at(*it);
      if (!(reduced == base))
        throw std::logic_error("extension pattern does not reduce to 52314");
    }
    return out;
  }();
  return patterns;
}

namespace {

bool is_occurrence_of_52314(const Permutation& host, const Occurrence& occ) {
  if (occ.size() != 5) return false;
  std::vector<int> sub;
  for (size_t i = 0; i < occ.size(); ++i) {
    const int pos = occ[i];
    if (pos < 1 || pos > host.size()) return false;
    if (i > 0 && occ[i - 1] >= pos) return false;
    sub.push_back(host.at(pos));
  }
  return Permutation::standardize(sub) == parse_permutation("52314");
}

}  // namespace

std::vector<int> matching_extension_patterns(const Permutation& host,
                                             const Occurrence& occ) {
  if (!is_occurrence_of_52314(host, occ))
    throw std::invalid_argument("not an occurrence of 52314 in the host");
  if (host.size() > 14)
    throw LimitError("extension search is brute force; hosts up to length 14");
  std::vector<int> matched;
  const auto& patterns = extension_patterns();
  for (size_t idx = 0; idx < patterns.size(); ++idx) {
    const ExtensionPattern& ep = patterns[idx];
    for (const Occurrence& full : occurrences(ep.pattern, host)) {
      Occurrence undotted;
      for (size_t pos = 1; pos <= full.size(); ++pos)
        if (std::find(ep.dotted.begin(), ep.dotted.end(),
                      static_cast<int>(pos)) == ep.dotted.end())
          undotted.push_back(full[pos - 1]);
      if (undotted == occ) {
        matched.push_back(static_cast<int>(idx));
        break;
      }
    }
  }
  return matched;
}

bool occurrence_extends(const Permutation& host, const Occurrence& occ) {
  return !matching_extension_patterns(host, occ).empty();
}

CharactReport charact_conditions(const Permutation& p) {
  CharactReport report;
  report.avoids_3214 = !contains(parse_permutation("3214"), p);
  report.overall = report.avoids_3214;
  for (const Occurrence& occ : occurrences(parse_permutation("52314"), p)) {
    OccurrenceVerdict verdict;
    verdict.positions = occ;
    verdict.matched = matching_extension_patterns(p, occ);
    verdict.extends = !verdict.matched.empty();
    if (!verdict.extends) report.overall = false;
    report.occurrences_52314.push_back(std::move(verdict));
  }
  return report;
}

NecessityReport verify_charact_necessity(int n_max) {
  if (n_max > kMaxOracleScanLength)
    throw LimitError("necessity sweeps are limited to n <= " +
                     std::to_string(kMaxOracleScanLength));
  NecessityReport report;
  report.n_max = n_max;
  StrategyRunner qlg(StrategyId::quasi_left_greedy(2));
  for (int n = 1; n <= n_max; ++n) {
    std::uint64_t condition_only = 0;
    visit_sn_range(n, 0, factorial(n), [&](std::span<const int> vals) {
      const bool sortable = qlg.sorts(vals);
      Permutation p = Permutation::from_sequence(
          std::vector<int>(vals.begin(), vals.end()));
      const CharactReport cr = charact_conditions(p);
      if (sortable) {
        ++report.sortable_checked;
        if (!cr.overall) report.violations.push_back(std::move(p));
      } else if (cr.overall) {
        ++condition_only;
      }
    });
    report.condition_only.emplace_back(n, condition_only);
  }
  return report;
}

}  // namespace dki
