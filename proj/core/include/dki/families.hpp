#pragma once

#include <array>
#include <string>
#include <vector>

#include "dki/permutation.hpp"

namespace dki {

/// Element j >= 0 of the antichain of minimal non-sortable permutations for
/// the two-stack machine. Has length 2j+5; element 0 is 43152.
Permutation antichain_element(int j);

/// antichain_element(j) with the values 1, 2, 3 relabeled through the given
/// bijection of {1,2,3} (relabel[v-1] is the image of v).
Permutation antichain_variant(int j, const std::array<int, 3>& relabel);

/// Element m >= 1 of the chain whose quasi-left-greedy sortability at k = 2
/// alternates with the parity of m. Has length 3m+2; element 1 is 52314.
Permutation parity_chain_element(int m);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample or explanation on failure
};

struct VerificationReport {
  std::string title;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;  // informational findings, not pass/fail
  bool all_pass() const;
};

/// Checks, for elements 0..j_max: pairwise incomparability, non-sortability
/// on the two-stack machine (exhaustive search), and minimality (every
/// single-entry deletion sorts under the optimal strategy).
VerificationReport verify_antichain(int j_max);

/// Checks, for elements 1..m_max: each element is a pattern of the next, and
/// quasi-left-greedy sortability at k = 2 holds exactly for even m.
VerificationReport verify_parity_chain(int m_max);

}  // namespace dki
