#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dki/machine.hpp"
#include "dki/permutation.hpp"
#include "dki/strategy.hpp"

namespace dki::testing {

// Containment decided by enumerating every index subset, with no pruning.
// Deliberately independent of the library's search.
inline bool naive_contains(const Permutation& pattern,
                           const Permutation& host) {
  const auto& p = pattern.values();
  const auto& h = host.values();
  const size_t m = p.size(), n = h.size();
  if (m > n) return false;
  if (m == 0) return true;
  std::vector<size_t> idx(m);
  // Iterate all strictly increasing index tuples.
  for (size_t i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    bool iso = true;
    for (size_t a = 0; a < m && iso; ++a)
      for (size_t b = a + 1; b < m && iso; ++b)
        if ((p[a] < p[b]) != (h[idx[a]] < h[idx[b]])) iso = false;
    if (iso) return true;
    // Next combination.
    size_t i = m;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - m) {
        ++idx[i];
        for (size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
  }
}

inline Permutation random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> vals(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = i + 1;
  std::shuffle(vals.begin(), vals.end(), rng);
  return Permutation::from_sequence(std::move(vals));
}

inline std::uint64_t catalan(int n) {
  // C_0 = 1, C_{n+1} = sum C_i C_{n-i}
  std::vector<std::uint64_t> c{1};
  for (int i = 1; i <= n; ++i) {
    std::uint64_t s = 0;
    for (int j = 0; j < i; ++j) s += c[static_cast<size_t>(j)] * c[static_cast<size_t>(i - 1 - j)];
    c.push_back(s);
  }
  return c[static_cast<size_t>(n)];
}

// Stage of each region for the progress measure: input 0, D_1..D_k 1..k,
// I k+1, output k+2.
inline long stage_sum(const Configuration& c) {
  long sum = 0;
  for (int i = 1; i <= c.k(); ++i)
    sum += static_cast<long>(c.dstack(i).size()) * i;
  sum += static_cast<long>(c.istack().size()) * (c.k() + 1);
  sum += static_cast<long>(c.output().size()) * (c.k() + 2);
  return sum;
}

// Structural invariants that must hold in every configuration: conservation
// of {1..n} across the regions and strict stack orders.
inline bool configuration_invariants_hold(const Configuration& c) {
  std::multiset<int> all;
  for (int v : c.input_tail()) all.insert(v);
  for (int i = 1; i <= c.k(); ++i) {
    auto d = c.dstack(i);
    for (size_t t = 0; t < d.size(); ++t) {
      all.insert(d[t]);
      if (t > 0 && d[t] <= d[t - 1]) return false;  // top must be largest
    }
  }
  auto ist = c.istack();
  for (size_t t = 0; t < ist.size(); ++t) {
    all.insert(ist[t]);
    if (t > 0 && ist[t] >= ist[t - 1]) return false;  // top must be smallest
  }
  for (int v : c.output()) all.insert(v);
  if (static_cast<int>(all.size()) != c.n()) return false;
  int expect = 1;
  for (int v : all)
    if (v != expect++) return false;
  return true;
}

struct TraceCheck {
  bool ok = true;
  std::string why;
};

// Replays a report's operations from the initial configuration and checks,
// step by step: structural invariants, the +1 progress measure, digest
// agreement, and that values enter the increasing stack in an order that
// never repairs an inversion of the input.
inline TraceCheck validate_trace(const SortReport& report) {
  TraceCheck check;
  auto fail = [&](std::string why) {
    check.ok = false;
    check.why = std::move(why);
    return check;
  };
  Configuration c(report.input, report.strategy.k);
  if (!configuration_invariants_hold(c)) return fail("initial invariants");
  long expected_sum = stage_sum(c);
  std::map<int, int> entered_i;  // value -> step index of entry into I
  int step_index = 0;
  for (const TraceStep& step : report.trace) {
    const bool into_i = step.op.index == report.strategy.k;
    c.step(step.op);
    if (into_i) entered_i[c.istack().back()] = step_index;
    ++expected_sum;
    if (stage_sum(c) != expected_sum) return fail("progress measure");
    if (!configuration_invariants_hold(c))
      return fail("invariants after step " + std::to_string(step_index));
    if (!step.digest.empty() && step.digest != c.render())
      return fail("digest mismatch at step " + std::to_string(step_index));
    ++step_index;
  }
  if (!c.is_final()) return fail("trace does not finish the run");
  if (c.is_sorted_final() != report.sorted) return fail("sorted flag");
  // Inversions of the input must reach I in input order.
  const auto& in = report.input.values();
  for (size_t i = 0; i < in.size(); ++i)
    for (size_t j = i + 1; j < in.size(); ++j)
      if (in[i] > in[j] && entered_i[in[i]] >= entered_i[in[j]])
        return fail("inversion repaired between " + std::to_string(in[i]) +
                    " and " + std::to_string(in[j]));
  return check;
}

}  // namespace dki::testing
