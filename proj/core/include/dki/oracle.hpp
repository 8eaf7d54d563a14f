#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "dki/machine.hpp"
#include "dki/permutation.hpp"

namespace dki {

struct OracleOptions {
  /// Cut a branch as soon as a value pushed into the increasing stack leaves
  /// some smaller value trapped behind a larger one upstream (in the stacks
  /// or the input), which makes a sorted output impossible. Off by default;
  /// the tests validate it against the unpruned search.
  bool prune_trapped = false;

  /// Also branch on last-resort emissions the way the machine's full
  /// legality rule allows, discarding any branch whose output stops being an
  /// identity prefix. Slower; exists so the default restricted search can be
  /// cross-checked. Disables the eager-emission shortcut.
  bool unrestricted_emissions = false;
};

/// An explicit operation sequence that sorts a permutation. Replaying the
/// ops from the initial configuration is legal at every step and ends in a
/// sorted final state.
struct Witness {
  std::vector<Operation> ops;
};

std::string format_witness(const Witness& w);  // "d0 d1 d2 d3 ..."

/// Ground-truth sortability for the machine with k decreasing stacks,
/// decided by depth-first search over the reachable state graph with a
/// memoized dead-state set. Emissions are taken only when the top of the
/// increasing stack is the next value the output needs (anything else is
/// irreversibly wrong). One instance per thread; instances are independent.
class Oracle {
public:
  /// Supports k <= 4 and permutations of length <= 21 (state packing);
  /// throws LimitError beyond that.
  explicit Oracle(int k, OracleOptions opts = {});

  int k() const { return k_; }

  /// `values` must be a permutation of 1..values.size() (not re-validated).
  bool is_sortable(std::span<const int> values);
  bool is_sortable(const Permutation& p);

  std::optional<Witness> sorting_witness(const Permutation& p);

  /// Not sortable, but sortable after deleting any single entry.
  bool is_minimal_nonsortable(const Permutation& p);

private:
  bool search();
  bool trapped_after_push(int pushed) const;
  void prepare(std::span<const int> values);

  int k_;
  OracleOptions opts_;
  std::vector<int> input_;
  int pos_ = 0;
  std::vector<std::vector<int>> stacks_;  // 0..k-1 the decreasing stacks, k = I
  int next_needed_ = 1;
  std::uint64_t key_ = 0;
  std::vector<Operation> path_;
  std::unordered_set<std::uint64_t> dead_;
};

// Single-shot conveniences.
bool is_sortable(const Permutation& p, int k, OracleOptions opts = {});
std::optional<Witness> sorting_witness(const Permutation& p, int k,
                                       OracleOptions opts = {});
bool is_minimal_nonsortable(const Permutation& p, int k,
                            OracleOptions opts = {});

/// Full-S_n scans refuse lengths beyond this.
inline constexpr int kMaxOracleScanLength = 9;

/// All minimal non-sortable permutations of length <= n_max, in
/// length-then-lexicographic order. Throws LimitError when n_max exceeds
/// kMaxOracleScanLength.
std::vector<Permutation> basis_up_to(int n_max, int k, OracleOptions opts = {});

}  // namespace dki
