#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dki/oracle.hpp"
#include "dki/permutation.hpp"
#include "dki/strategy.hpp"

namespace dki {

/// Per-length counts of sortable permutations, indexed from n = 0 (the empty
/// permutation counts as sortable for every decider).
struct CountTable {
  std::string decider;  // "optimal2", "lg", "qlg", "stacksort" or "oracle"
  int k = 0;
  std::vector<std::pair<int, std::uint64_t>> rows;
};

/// A sortability decider: either a deterministic strategy or the exhaustive
/// oracle. make_decider() builds a fresh decision function with its own
/// internal state; use one per thread.
class DeciderSpec {
public:
  static DeciderSpec strategy(StrategyId id);
  static DeciderSpec oracle(int k, OracleOptions opts = {});

  bool is_oracle() const { return !strategy_.has_value(); }
  const std::optional<StrategyId>& strategy_id() const { return strategy_; }
  int k() const { return k_; }
  std::string name() const;

  std::function<bool(std::span<const int>)> make_decider() const;

private:
  std::optional<StrategyId> strategy_;
  int k_ = 0;
  OracleOptions opts_;
};

/// Scan limits: oracle deciders sweep S_n only up to n = 9; strategy
/// deciders up to n = 10 by default, n = 11 (39.9M permutations, a
/// multi-minute run) when `allow_length_11` is set. Throws LimitError past
/// those bounds.
CountTable count_sortable_by_length(const DeciderSpec& decider, int n_max,
                                    int jobs = 1, bool allow_length_11 = false);

struct EquivalenceResult {
  bool equal = false;
  /// Permutations where decider(p) differs from "p avoids every basis
  /// element", in length-then-lexicographic order.
  std::vector<Permutation> counterexamples;
};

/// Does the decider accept exactly the avoiders of `basis`, for every
/// permutation of length <= n_max? Same limits as counting.
EquivalenceResult verify_class_equivalence(const DeciderSpec& decider,
                                           const std::vector<Permutation>& basis,
                                           int n_max, int jobs = 1,
                                           bool allow_length_11 = false);

/// Number of permutations of length n avoiding every basis element.
std::uint64_t count_avoiders(const std::vector<Permutation>& basis, int n);

/// A pattern extending 52314 by marked extra entries: deleting the dotted
/// positions and standardizing yields 52314 again.
struct ExtensionPattern {
  Permutation pattern;
  std::vector<int> dotted;  // 1-based positions of the extra entries
};

/// The seven extensions every 52314 occurrence inside a qlg-2-sortable
/// permutation must admit.
const std::vector<ExtensionPattern>& extension_patterns();

/// Indices into extension_patterns() of the patterns that extend the given
/// occurrence: pattern P (with dotted set D) matches when P occurs in `host`
/// with its non-dotted positions landing exactly on `occ`.
///
/// `occ` must be a genuine occurrence of 52314 in `host` (throws
/// std::invalid_argument otherwise); hosts longer than 14 are refused with
/// LimitError (the placement search is brute force).
std::vector<int> matching_extension_patterns(const Permutation& host,
                                             const Occurrence& occ);

bool occurrence_extends(const Permutation& host, const Occurrence& occ);

struct OccurrenceVerdict {
  Occurrence positions;
  std::vector<int> matched;  // indices into extension_patterns()
  bool extends = false;
};

/// The two necessary conditions for qlg-2 sortability: avoidance of 3214,
/// and extendability of every 52314 occurrence.
struct CharactReport {
  bool avoids_3214 = false;
  std::vector<OccurrenceVerdict> occurrences_52314;
  bool overall = false;  // avoids_3214 and every occurrence extends
};

CharactReport charact_conditions(const Permutation& p);

struct NecessityReport {
  int n_max = 0;
  std::uint64_t sortable_checked = 0;
  /// qlg-2-sortable permutations violating the conditions (expected none).
  std::vector<Permutation> violations;
  /// Per length: permutations satisfying both conditions yet not sortable.
  std::vector<std::pair<int, std::uint64_t>> condition_only;
  bool pass() const { return violations.empty(); }
};

/// Sweeps every permutation of length <= n_max (n_max <= 9) and confirms the
/// conditions hold for each qlg-2-sortable one.
NecessityReport verify_charact_necessity(int n_max);

}  // namespace dki
