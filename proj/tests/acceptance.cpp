// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Timings go to stderr so stdout stays stable.

#include <algorithm>
#include <bitset>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "dki/analysis.hpp"
#include "dki/families.hpp"
#include "dki/machine.hpp"
#include "dki/oracle.hpp"
#include "dki/permutation.hpp"
#include "dki/strategy.hpp"
#include "support.hpp"

using namespace dki;
using dki::testing::catalan;
using dki::testing::configuration_invariants_hold;
using dki::testing::random_permutation;
using dki::testing::stage_sum;

namespace {

template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  if (n == 0) {
    fn(Permutation{});
    return;
  }
  std::vector<int> vals;
  for (int i = 1; i <= n; ++i) vals.push_back(i);
  do {
    fn(Permutation::from_sequence(vals));
  } while (std::next_permutation(vals.begin(), vals.end()));
}

bool criterion_count_sequence(std::string& detail) {
  const std::vector<std::uint64_t> expected{
      1, 1, 2, 6, 24, 117, 651, 3961, 25661, 174062, 1222784};
  const CountTable table = count_sortable_by_length(
      DeciderSpec::strategy(StrategyId::optimal2()), 10, /*jobs=*/0);
  if (table.rows.size() != expected.size()) {
    detail = "row count " + std::to_string(table.rows.size());
    return false;
  }
  for (size_t i = 0; i < expected.size(); ++i)
    if (table.rows[i].second != expected[i]) {
      detail = "n=" + std::to_string(i) + " got " +
               std::to_string(table.rows[i].second) + " want " +
               std::to_string(expected[i]);
      return false;
    }
  return true;
}

bool criterion_oracle_equivalence(std::string& detail) {
  Oracle oracle(2);
  StrategyRunner optimal(StrategyId::optimal2());
  std::uint64_t checked = 0;
  for (int n = 0; n <= 8; ++n) {
    bool bad = false;
    std::string culprit;
    for_each_permutation(n, [&](const Permutation& p) {
      if (bad) return;
      ++checked;
      if (oracle.is_sortable(p) != optimal.sorts(p.values())) {
        bad = true;
        culprit = format_permutation(p);
      }
    });
    if (bad) {
      detail = "disagreement on " + culprit;
      return false;
    }
  }
  if (checked != 46234) {  // all permutations of length 0..8
    detail = "checked " + std::to_string(checked);
    return false;
  }
  return true;
}

bool criterion_reference_bases(std::string& detail) {
  const auto smith = basis_up_to(6, 1);
  if (smith.size() != 2 || smith[0] != parse_permutation("3142") ||
      smith[1] != parse_permutation("3241")) {
    detail = "k=1 basis wrong";
    return false;
  }
  const auto knuth = basis_up_to(5, 0);
  if (knuth.size() != 1 || knuth[0] != parse_permutation("231")) {
    detail = "k=0 basis wrong";
    return false;
  }
  return true;
}

bool criterion_antichain(std::string& detail) {
  const VerificationReport report = verify_antichain(3);
  if (!report.all_pass()) {
    for (const CheckResult& c : report.checks)
      if (!c.pass) detail += c.name + "; ";
    return false;
  }
  return true;
}

bool criterion_generators(std::string& detail) {
  if (antichain_element(0) != parse_permutation("43152") ||
      antichain_element(1) != parse_permutation("6347152") ||
      antichain_element(2) != parse_permutation("836947152")) {
    detail = "antichain fixtures";
    return false;
  }
  if (parity_chain_element(1) != parse_permutation("52314")) {
    detail = "chain fixture";
    return false;
  }
  for (int m = 1; m <= 10; ++m)
    if (parity_chain_element(m).size() != 3 * m + 2) {
      detail = "chain length at m=" + std::to_string(m);
      return false;
    }
  return true;
}

bool criterion_left_greedy_class(std::string& detail) {
  const Permutation blocker = parse_permutation("231");
  // k = 0 is classical stacksort; the same class, checked alongside.
  for (int k = 0; k <= 3; ++k) {
    StrategyRunner lg(k == 0 ? StrategyId::stacksort()
                             : StrategyId::left_greedy(k));
    for (int n = 0; n <= 8; ++n) {
      std::uint64_t count = 0;
      bool bad = false;
      std::string culprit;
      for_each_permutation(n, [&](const Permutation& p) {
        if (bad) return;
        const bool sorted = lg.sorts(p.values());
        if (sorted) ++count;
        if (sorted == contains(blocker, p)) {
          bad = true;
          culprit = format_permutation(p);
        }
      });
      if (bad) {
        detail = "k=" + std::to_string(k) + ": " + culprit;
        return false;
      }
      if (count != catalan(n)) {
        detail = "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                 " count " + std::to_string(count);
        return false;
      }
    }
  }
  return true;
}

bool criterion_quasi_left_greedy(std::string& detail) {
  const Permutation blocker = parse_permutation("213");
  StrategyRunner qlg1(StrategyId::quasi_left_greedy(1));
  for (int n = 0; n <= 8; ++n) {
    bool bad = false;
    std::string culprit;
    for_each_permutation(n, [&](const Permutation& p) {
      if (bad) return;
      if (qlg1.sorts(p.values()) == contains(blocker, p)) {
        bad = true;
        culprit = format_permutation(p);
      }
    });
    if (bad) {
      detail = "qlg-1 vs Av(213): " + culprit;
      return false;
    }
  }
  StrategyRunner qlg2(StrategyId::quasi_left_greedy(2));
  if (!qlg2.sorts(parse_permutation("631425").values())) {
    detail = "631425 should sort";
    return false;
  }
  if (qlg2.sorts(parse_permutation("52314").values())) {
    detail = "52314 should not sort";
    return false;
  }
  if (!qlg2.sorts(parse_permutation("231").values())) {
    detail = "231 should sort";
    return false;
  }
  return true;
}

bool criterion_output_fixtures(std::string& detail) {
  const SortReport lg1 =
      run(StrategyId::left_greedy(1), parse_permutation("2341"));
  if (lg1.output != parse_permutation("2134")) {
    detail = "lg-1 output " + format_permutation(lg1.output);
    return false;
  }
  const SortReport ss =
      run(StrategyId::stacksort(), parse_permutation("2341"));
  if (ss.output != parse_permutation("2314")) {
    detail = "stacksort output " + format_permutation(ss.output);
    return false;
  }
  return true;
}

bool criterion_parity_chain(std::string& detail) {
  const VerificationReport report = verify_parity_chain(6);
  if (!report.all_pass()) {
    for (const CheckResult& c : report.checks)
      if (!c.pass) detail += c.name + "; ";
    return false;
  }
  return true;
}

bool criterion_charact(std::string& detail) {
  const NecessityReport sweep = verify_charact_necessity(8);
  if (!sweep.pass()) {
    detail = std::to_string(sweep.violations.size()) + " violations";
    return false;
  }
  const Permutation gamma3 = parse_permutation("11 2 10 1 4 9 3 6 7 5 8");
  if (sorts(StrategyId::quasi_left_greedy(2), gamma3)) {
    detail = "counterexample unexpectedly sorts";
    return false;
  }
  const CharactReport report = charact_conditions(gamma3);
  if (!report.avoids_3214 || !report.overall) {
    detail = "counterexample fails the conditions";
    return false;
  }
  if (report.occurrences_52314.size() != 3) {
    detail = "expected exactly 3 occurrences, got " +
             std::to_string(report.occurrences_52314.size());
    return false;
  }
  int via_82714536 = 0, via_7214536 = 0;
  for (const OccurrenceVerdict& v : report.occurrences_52314) {
    if (!v.extends) {
      detail = "an occurrence does not extend";
      return false;
    }
    if (std::find(v.matched.begin(), v.matched.end(), 5) != v.matched.end())
      ++via_82714536;
    if (std::find(v.matched.begin(), v.matched.end(), 1) != v.matched.end())
      ++via_7214536;
  }
  if (via_82714536 < 2 || via_7214536 < 1) {
    detail = "extension attribution off: 82714536 x" +
             std::to_string(via_82714536) + ", 7214536 x" +
             std::to_string(via_7214536);
    return false;
  }
  return true;
}

// ---- criterion 11: property suites ----

bool random_trace_invariants(std::string& detail) {
  std::mt19937_64 rng(20260810);
  for (int trial = 0; trial < 100000; ++trial) {
    const int n = static_cast<int>(rng() % 9);
    const int k = static_cast<int>(rng() % 4);
    Configuration c(random_permutation(rng, n), k);
    long sum = stage_sum(c);
    while (!c.is_final()) {
      const auto ops = c.legal_ops();
      if (ops.empty()) {
        detail = "deadlock in a random trace";
        return false;
      }
      c.step(ops[rng() % ops.size()]);
      ++sum;
      if (stage_sum(c) != sum || !configuration_invariants_hold(c)) {
        detail = "invariant broke in a random trace";
        return false;
      }
    }
  }
  return true;
}

// Region code per value, 3 bits each; enough for k <= 3 and n <= 6.
std::uint32_t pack_state(const Configuration& c) {
  std::uint32_t key = 0;
  auto set = [&](int value, std::uint32_t code) {
    key |= code << (3 * (value - 1));
  };
  for (int i = 1; i <= c.k(); ++i)
    for (int v : c.dstack(i)) set(v, static_cast<std::uint32_t>(i));
  for (int v : c.istack()) set(v, static_cast<std::uint32_t>(c.k() + 1));
  for (int v : c.output()) set(v, static_cast<std::uint32_t>(c.k() + 2));
  return key;  // input-tail values keep code 0
}

bool exhaustive_reachability(std::string& detail) {
  for (int k = 0; k <= 3; ++k) {
    for (int n = 0; n <= 6; ++n) {
      bool bad = false;
      for_each_permutation(n, [&](const Permutation& p) {
        if (bad) return;
        std::vector<Configuration> frontier{Configuration(p, k)};
        std::unordered_set<std::uint32_t> seen;
        while (!frontier.empty()) {
          Configuration c = std::move(frontier.back());
          frontier.pop_back();
          if (!seen.insert(pack_state(c)).second) continue;
          const auto ops = c.legal_ops();
          if (c.is_final()) {
            if (!ops.empty() ||
                stage_sum(c) != static_cast<long>(n) * (k + 2)) {
              bad = true;
              return;
            }
            continue;
          }
          if (ops.empty()) {  // deadlock
            bad = true;
            return;
          }
          const long before = stage_sum(c);
          for (const Operation op : ops) {
            Configuration next = apply(c, op);
            if (stage_sum(next) != before + 1 ||
                !configuration_invariants_hold(next)) {
              bad = true;
              return;
            }
            frontier.push_back(std::move(next));
          }
        }
      });
      if (bad) {
        detail = "k=" + std::to_string(k) + " n=" + std::to_string(n);
        return false;
      }
    }
  }
  return true;
}

bool optimal2_run_invariants(std::string& detail) {
  // The engine itself throws if the standing inequalities or the
  // instruction-6 corollaries break; here every run up to length 7 is
  // driven to completion and the failure marker is tied to sortedness.
  StrategyRunner optimal(StrategyId::optimal2());
  for (int n = 0; n <= 7; ++n) {
    bool bad = false;
    for_each_permutation(n, [&](const Permutation& p) {
      if (bad) return;
      const SortReport r = optimal.run(p);
      int first_fallback = -1;
      for (size_t i = 0; i < r.trace.size() && first_fallback < 0; ++i)
        if (r.trace[i].instruction == 6) first_fallback = static_cast<int>(i);
      const bool fired = first_fallback >= 0;
      if (r.sorted == fired) bad = true;
      if (fired != r.first_failure.has_value()) bad = true;
      if (fired && *r.first_failure != first_fallback) bad = true;
      const auto checked = dki::testing::validate_trace(r);
      if (!checked.ok) bad = true;
    });
    if (bad) {
      detail = "n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool downset_and_monotonicity(std::string& detail) {
  std::vector<Permutation> perms;
  for (int n = 0; n <= 6; ++n)
    for_each_permutation(n, [&](const Permutation& p) { perms.push_back(p); });
  const size_t total = perms.size();  // 874

  std::vector<std::bitset<874>> below(total);
  for (size_t i = 0; i < total; ++i)
    for (size_t j = 0; j < total; ++j)
      if (contains(perms[i], perms[j])) below[j][i] = true;

  std::vector<std::vector<bool>> sortable(4,
                                          std::vector<bool>(total, false));
  for (int k = 0; k <= 3; ++k) {
    Oracle oracle(k);
    for (size_t i = 0; i < total; ++i)
      sortable[static_cast<size_t>(k)][i] = oracle.is_sortable(perms[i]);
  }

  for (int k = 0; k <= 2; ++k)
    for (size_t i = 0; i < total; ++i)
      if (sortable[static_cast<size_t>(k)][i] &&
          !sortable[static_cast<size_t>(k) + 1][i]) {
        detail = "monotonicity at k=" + std::to_string(k) + ": " +
                 format_permutation(perms[i]);
        return false;
      }

  for (int k = 1; k <= 2; ++k)
    for (size_t big = 0; big < total; ++big) {
      if (!sortable[static_cast<size_t>(k)][big]) continue;
      for (size_t small = 0; small < total; ++small)
        if (below[big][small] && !sortable[static_cast<size_t>(k)][small]) {
          detail = "downset at k=" + std::to_string(k) + ": " +
                   format_permutation(perms[small]) + " inside " +
                   format_permutation(perms[big]);
          return false;
        }
    }
  return true;
}

bool criterion_properties(std::string& detail) {
  return random_trace_invariants(detail) && exhaustive_reachability(detail) &&
         optimal2_run_invariants(detail) && downset_and_monotonicity(detail);
}

struct Criterion {
  int number;
  std::string description;
  std::function<bool(std::string&)> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "count sequence 1,1,2,6,24,117,651,3961,25661,174062,1222784",
       criterion_count_sequence},
      {2, "oracle and optimal strategy agree on every |p| <= 8",
       criterion_oracle_equivalence},
      {3, "reference bases: k=1 {3142,3241}, k=0 {231}",
       criterion_reference_bases},
      {4, "antichain elements 0..3 incomparable, non-sortable, minimal",
       criterion_antichain},
      {5, "generator fixtures and lengths", criterion_generators},
      {6, "left-greedy sorts exactly Av(231) for k in {1,2,3}, n <= 8",
       criterion_left_greedy_class},
      {7, "quasi-left-greedy facts (Av(213) at k=1; 631425/52314/231 at k=2)",
       criterion_quasi_left_greedy},
      {8, "output fixtures: lg-1(2341)=2134, stacksort(2341)=2314",
       criterion_output_fixtures},
      {9, "parity chain up to m=6: sortable iff even, chain under containment",
       criterion_parity_chain},
      {10, "necessary conditions hold for every qlg-2-sortable |p| <= 8; "
           "length-11 counterexample behaves as documented",
       criterion_charact},
      {11, "property suites: random traces, exhaustive reachability, "
           "optimal-strategy run invariants, downset and k-monotonicity",
       criterion_properties},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.number << ": "
              << c.description;
    if (!pass && !detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n" << std::flush;
    std::cerr << "criterion " << c.number << " took " << secs << "s\n";
    if (!pass) ++failures;
  }
  return failures;
}
