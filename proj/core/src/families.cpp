#include "dki/families.hpp"

#include <algorithm>
#include <stdexcept>

#include "dki/errors.hpp"
#include "dki/oracle.hpp"
#include "dki/strategy.hpp"

namespace dki {

Permutation antichain_element(int j) {
  if (j < 0) throw std::invalid_argument("antichain_element: j must be >= 0");
  std::vector<int> vals;
  vals.reserve(static_cast<size_t>(2 * j + 5));
  vals.push_back(2 * j + 4);
  vals.push_back(3);
  for (int t = j; t >= 1; --t) {
    vals.push_back(2 * t + 2);
    vals.push_back(2 * t + 5);
  }
  vals.push_back(1);
  vals.push_back(5);
  vals.push_back(2);
  return Permutation::from_sequence(std::move(vals));
}

Permutation antichain_variant(int j, const std::array<int, 3>& relabel) {
  std::array<bool, 3> hit{};
  for (int v : relabel) {
    if (v < 1 || v > 3)
      throw std::invalid_argument("relabel must map {1,2,3} onto itself");
    hit[static_cast<size_t>(v - 1)] = true;
  }
  if (!(hit[0] && hit[1] && hit[2]))
    throw std::invalid_argument("relabel must map {1,2,3} onto itself");
  std::vector<int> vals = antichain_element(j).values();
  for (int& v : vals)
    if (v <= 3) v = relabel[static_cast<size_t>(v - 1)];
  return Permutation::from_sequence(std::move(vals));
}

Permutation parity_chain_element(int m) {
  if (m < 1)
    throw std::invalid_argument("parity_chain_element: m must be >= 1");
  std::vector<int> vals;
  vals.reserve(static_cast<size_t>(3 * m + 2));
  vals.push_back(3 * m + 2);
  for (int t = 1; t <= m - 1; ++t) {
    vals.push_back(2 * t);
    vals.push_back(3 * m + 2 - t);
    vals.push_back(2 * t - 1);
  }
  vals.push_back(2 * m);
  vals.push_back(2 * m + 1);
  vals.push_back(2 * m - 1);
  vals.push_back(2 * m + 2);
  return Permutation::from_sequence(std::move(vals));
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

VerificationReport verify_antichain(int j_max) {
  if (j_max < 0)
    throw std::invalid_argument("verify_antichain: j_max must be >= 0");
  if (2 * j_max + 5 > 21)
    throw LimitError("verify_antichain: element lengths exceed oracle limits");

  VerificationReport report;
  report.title = "antichain of minimal non-sortable permutations, k = 2";

  std::vector<Permutation> elems;
  for (int j = 0; j <= j_max; ++j) elems.push_back(antichain_element(j));

  for (int i = 0; i <= j_max; ++i)
    for (int j = i + 1; j <= j_max; ++j) {
      CheckResult c;
      c.name = "elements " + std::to_string(i) + " and " + std::to_string(j) +
               " incomparable";
      c.pass = !comparable(elems[static_cast<size_t>(i)],
                           elems[static_cast<size_t>(j)]);
      if (!c.pass) c.detail = "one contains the other";
      report.checks.push_back(std::move(c));
    }

  Oracle oracle(2);
  StrategyRunner optimal(StrategyId::optimal2());
  for (int j = 0; j <= j_max; ++j) {
    const Permutation& p = elems[static_cast<size_t>(j)];
    CheckResult unsortable;
    unsortable.name = "element " + std::to_string(j) + " (" +
                      format_permutation(p) + ") not 2-sortable";
    unsortable.pass = !oracle.is_sortable(p);
    report.checks.push_back(std::move(unsortable));

    // Deletions are checked with the optimal strategy, which sorts exactly
    // the sortable permutations and is linear-time per run.
    CheckResult minimal;
    minimal.name = "element " + std::to_string(j) + " minimal";
    minimal.pass = true;
    for (int pos = 1; pos <= p.size(); ++pos) {
      const Permutation q = p.delete_at(pos);
      if (!optimal.sorts(q.values())) {
        minimal.pass = false;
        minimal.detail = "deleting position " + std::to_string(pos) +
                         " leaves non-sortable " + format_permutation(q);
        break;
      }
    }
    report.checks.push_back(std::move(minimal));
  }
  return report;
}

VerificationReport verify_parity_chain(int m_max) {
  if (m_max < 1)
    throw std::invalid_argument("verify_parity_chain: m_max must be >= 1");

  VerificationReport report;
  report.title = "quasi-left-greedy parity chain, k = 2";

  StrategyRunner qlg(StrategyId::quasi_left_greedy(2));
  std::string pattern_line;
  for (int m = 1; m <= m_max; ++m) {
    const Permutation p = parity_chain_element(m);
    const bool sortable = qlg.sorts(p.values());
    const bool expected = m % 2 == 0;
    CheckResult c;
    c.name = "element " + std::to_string(m) + " (length " +
             std::to_string(p.size()) + ") qlg-2-sortable iff m even";
    c.pass = sortable == expected;
    if (!c.pass)
      c.detail = std::string("got ") + (sortable ? "sortable" : "unsortable");
    report.checks.push_back(std::move(c));
    if (m > 1) pattern_line += ",";
    pattern_line += sortable ? "T" : "F";

    if (m < m_max) {
      CheckResult chain;
      chain.name = "element " + std::to_string(m) + " is a pattern of element " +
                   std::to_string(m + 1);
      chain.pass = contains(p, parity_chain_element(m + 1));
      report.checks.push_back(std::move(chain));
    }
  }
  report.notes.push_back("sortable pattern: " + pattern_line);
  return report;
}

}  // namespace dki
