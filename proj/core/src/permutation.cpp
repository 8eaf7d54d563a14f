#include "dki/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace dki {

Permutation Permutation::from_sequence(std::vector<int> raw) {
  const int n = static_cast<int>(raw.size());
  std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
  for (int v : raw) {
    if (v < 1 || v > n)
      throw std::invalid_argument("permutation value " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(n));
    if (seen[static_cast<size_t>(v)])
      throw std::invalid_argument("duplicate permutation value " +
                                  std::to_string(v));
    seen[static_cast<size_t>(v)] = true;
  }
  return Permutation(std::move(raw), Unchecked{});
}

Permutation Permutation::standardize(std::span<const int> raw) {
  const size_t n = raw.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return raw[static_cast<size_t>(a)] < raw[static_cast<size_t>(b)]; });
  std::vector<int> out(n);
  for (size_t rank = 0; rank < n; ++rank) {
    if (rank > 0 && raw[static_cast<size_t>(order[rank])] == raw[static_cast<size_t>(order[rank - 1])])
      throw std::invalid_argument("standardize: duplicate entry " +
                                  std::to_string(raw[static_cast<size_t>(order[rank])]));
    out[static_cast<size_t>(order[rank])] = static_cast<int>(rank) + 1;
  }
  return Permutation(std::move(out), Unchecked{});
}

Permutation Permutation::identity(int n) {
  std::vector<int> vals(static_cast<size_t>(n));
  std::iota(vals.begin(), vals.end(), 1);
  return Permutation(std::move(vals), Unchecked{});
}

int Permutation::at(int pos) const {
  if (pos < 1 || pos > size())
    throw std::out_of_range("position " + std::to_string(pos) +
                            " out of range 1.." + std::to_string(size()));
  return vals_[static_cast<size_t>(pos - 1)];
}

Permutation Permutation::delete_at(int pos) const {
  if (pos < 1 || pos > size())
    throw std::out_of_range("delete_at: position " + std::to_string(pos) +
                            " out of range 1.." + std::to_string(size()));
  std::vector<int> rest;
  rest.reserve(vals_.size() - 1);
  const int removed = vals_[static_cast<size_t>(pos - 1)];
  for (int v : vals_)
    if (v != removed) rest.push_back(v > removed ? v - 1 : v);
  return Permutation(std::move(rest), Unchecked{});
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (vals_[static_cast<size_t>(i)] != i + 1) return false;
  return true;
}

namespace {

// Depth-first subsequence search. `chosen` holds 0-based host indices matched
// so far; a candidate index is accepted only if it keeps the chosen
// subsequence order-isomorphic to the pattern prefix.
template <typename Sink>
void match_from(const std::vector<int>& pat, const std::vector<int>& host,
                std::vector<int>& chosen, int next_host, Sink&& sink,
                bool& stop) {
  const int j = static_cast<int>(chosen.size());
  const int m = static_cast<int>(pat.size());
  if (j == m) {
    sink(chosen);
    return;
  }
  const int n = static_cast<int>(host.size());
  // Not enough host elements left to finish the pattern.
  for (int cand = next_host; cand <= n - (m - j); ++cand) {
    if (stop) return;
    const int hv = host[static_cast<size_t>(cand)];
    bool ok = true;
    for (int t = 0; t < j; ++t) {
      const bool pat_less = pat[static_cast<size_t>(t)] < pat[static_cast<size_t>(j)];
      const bool host_less = host[static_cast<size_t>(chosen[static_cast<size_t>(t)])] < hv;
      if (pat_less != host_less) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    chosen.push_back(cand);
    match_from(pat, host, chosen, cand + 1, sink, stop);
    chosen.pop_back();
    if (stop) return;
  }
}

}  // namespace

bool contains(const Permutation& pattern, const Permutation& host) {
  if (pattern.size() > host.size()) return false;
  if (pattern.empty()) return true;
  bool found = false;
  bool stop = false;
  std::vector<int> chosen;
  chosen.reserve(static_cast<size_t>(pattern.size()));
  match_from(pattern.values(), host.values(), chosen, 0,
             [&](const std::vector<int>&) {
               found = true;
               stop = true;
             },
             stop);
  return found;
}

std::vector<Occurrence> occurrences(const Permutation& pattern,
                                    const Permutation& host) {
  std::vector<Occurrence> result;
  if (pattern.size() > host.size()) return result;
  if (pattern.empty()) {
    result.push_back({});
    return result;
  }
  bool stop = false;
  std::vector<int> chosen;
  chosen.reserve(static_cast<size_t>(pattern.size()));
  match_from(pattern.values(), host.values(), chosen, 0,
             [&](const std::vector<int>& idx) {
               Occurrence occ;
               occ.reserve(idx.size());
               for (int i : idx) occ.push_back(i + 1);
               result.push_back(std::move(occ));
             },
             stop);
  return result;
}

bool comparable(const Permutation& a, const Permutation& b) {
  return contains(a, b) || contains(b, a);
}

bool length_lex_less(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.values() < b.values();
}

Permutation parse_permutation(std::string_view text) {
  // Trim.
  size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return Permutation{};
  size_t end = text.find_last_not_of(" \t\r\n");
  text = text.substr(begin, end - begin + 1);

  const bool has_separator =
      text.find_first_of(" ,\t") != std::string_view::npos;
  std::vector<int> vals;
  if (!has_separator && text.size() > 1) {
    // Compact digit form: one value per character, each in 1..9.
    for (char c : text) {
      if (c < '1' || c > '9')
        throw std::invalid_argument(
            "compact permutation form admits only digits 1..9: '" +
            std::string(text) + "'");
      vals.push_back(c - '0');
    }
  } else {
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      size_t used = 0;
      int v;
      try {
        v = std::stoi(token, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad permutation value '" + token + "'");
      }
      if (used != token.size())
        throw std::invalid_argument("bad permutation value '" + token + "'");
      vals.push_back(v);
      token.clear();
    };
    for (char c : text) {
      if (c == ' ' || c == ',' || c == '\t')
        flush();
      else
        token.push_back(c);
    }
    flush();
  }
  return Permutation::from_sequence(std::move(vals));
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  if (p.size() <= 9) {
    for (int v : p.values()) out.push_back(static_cast<char>('0' + v));
  } else {
    for (size_t i = 0; i < p.values().size(); ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(p.values()[i]);
    }
  }
  return out;
}

}  // namespace dki
