#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dki/permutation.hpp"

namespace dki {

/// One machine move: d_i transfers a single element from stage i to stage
/// i+1, where stage 0 is the input, stages 1..k are the decreasing stacks,
/// stage k+1 is the increasing stack and stage k+2 is the output. d_0 reads
/// from the input; d_{k+1} emits from the increasing stack.
struct Operation {
  int index = 0;
  friend bool operator==(const Operation&, const Operation&) = default;
};

std::string operation_name(Operation op);  // "d0", "d1", ...
std::optional<Operation> parse_operation(std::string_view name, int k);

/// A snapshot of the machine with k decreasing stacks feeding one increasing
/// stack: the remaining input suffix, the stacks, and the emitted output.
///
/// Stacks are stored bottom-to-top. A decreasing stack reads strictly
/// decreasing from top to bottom (its top is its largest element), so a push
/// must exceed the current top; the increasing stack reads strictly
/// increasing from top to bottom (its top is its smallest element), so a
/// push must be below the current top.
class Configuration {
public:
  /// Machine with k stacks and no input loaded (n = 0, final).
  explicit Configuration(int k);

  Configuration(const Permutation& input, int k);

  /// Reloads the machine with a fresh input, reusing buffers. `values` must
  /// be a permutation of 1..values.size(); this is not re-validated.
  void reset(std::span<const int> values);

  int k() const { return k_; }
  int n() const { return static_cast<int>(input_.size()); }

  std::span<const int> input_tail() const;
  bool input_empty() const { return pos_ >= n(); }
  int input_front() const { return input_[static_cast<size_t>(pos_)]; }

  /// Decreasing stack i (1-based), bottom-to-top.
  std::span<const int> dstack(int i) const;
  std::span<const int> istack() const { return istack_; }
  std::span<const int> output() const { return output_; }

  std::optional<int> dstack_top(int i) const;
  std::optional<int> istack_top() const;

  /// The smallest value not yet emitted (n+1 once everything is out).
  int next_needed() const { return next_needed_; }

  /// Exact move legality:
  ///   d_0:          input nonempty and (D_1 empty or Input > Top(D_1));
  ///   d_i, i < k:   D_i nonempty and (D_{i+1} empty or Top(D_i) > Top(D_{i+1}));
  ///   d_k:          D_k nonempty and (I empty or Top(D_k) < Top(I));
  ///   d_{k+1}:      I nonempty and (Top(I) = next_needed() or none of
  ///                 d_0..d_k is legal).
  bool legal(Operation op) const;

  /// Legal operations in index order. Nonempty for every reachable
  /// non-final configuration.
  std::vector<Operation> legal_ops() const;

  bool is_final() const;
  bool is_sorted_final() const;

  /// Applies `op` in place. Throws std::logic_error unless the move is
  /// performable: the source region must be nonempty and a push must respect
  /// the target stack's ordering. An emission (d_{k+1}) is performable
  /// whenever the increasing stack is nonempty, even where legal() is false
  /// for it; deterministic strategies emit through this to run failed sorts
  /// to completion.
  void step(Operation op);

  /// One line, regions labeled OUT | I | Dk ... D1 | IN, stack contents
  /// listed top-first, e.g. "OUT[1] I[3 4] D2[] D1[2] IN[5 6]".
  std::string render() const;

private:
  bool push_into_dstack_ok(int i, int value) const;
  bool push_into_istack_ok(int value) const;
  bool any_feeder_legal() const;  // d_0..d_k

  int k_ = 0;
  std::vector<int> input_;  // the full input permutation
  int pos_ = 0;             // consumed prefix length
  std::vector<std::vector<int>> dstacks_;
  std::vector<int> istack_;
  std::vector<int> output_;
  std::vector<bool> emitted_;  // emitted_[v] for v in 1..n
  int next_needed_ = 1;
};

Configuration initial(const Permutation& input, int k);

/// Value-semantics apply: returns the configuration after `op`.
Configuration apply(Configuration c, Operation op);

inline bool legal(const Configuration& c, Operation op) { return c.legal(op); }
inline std::string render(const Configuration& c) { return c.render(); }

}  // namespace dki
