#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dki/machine.hpp"
#include "dki/permutation.hpp"

namespace dki {

enum class StrategyKind { optimal2, left_greedy, quasi_left_greedy, stacksort };

/// A deterministic sorting strategy together with its stack count.
/// `optimal2` fixes k = 2; `stacksort` is the bare increasing stack (k = 0).
struct StrategyId {
  StrategyKind kind = StrategyKind::stacksort;
  int k = 0;

  static StrategyId optimal2() { return {StrategyKind::optimal2, 2}; }
  static StrategyId left_greedy(int k) {
    return {StrategyKind::left_greedy, k};
  }
  static StrategyId quasi_left_greedy(int k) {
    return {StrategyKind::quasi_left_greedy, k};
  }
  static StrategyId stacksort() { return {StrategyKind::stacksort, 0}; }

  /// Command-line names: "optimal2", "lg", "qlg", "stacksort". Returns
  /// nullopt for an unknown name or an inconsistent k (optimal2 forces
  /// k = 2, stacksort forces k = 0; lg/qlg require an explicit k >= 0).
  static std::optional<StrategyId> parse(std::string_view name,
                                         std::optional<int> k);

  std::string name() const;

  friend bool operator==(const StrategyId&, const StrategyId&) = default;
};

struct TraceStep {
  Operation op;
  /// Which rule fired: for optimal2 the instruction number 1..6 (pour
  /// micro-steps all carry 2); for greedy strategies the priority rank of
  /// the chosen operation (1 = highest).
  int instruction = 0;
  /// Rendered configuration after the step, when recording was requested.
  std::string digest;
};

struct SortReport {
  Permutation input;
  StrategyId strategy;
  Permutation output;
  bool sorted = false;
  std::vector<TraceStep> trace;  // always n * (k + 2) steps
  /// Index into `trace` of the first wrong emission: for optimal2 the first
  /// execution of instruction 6, for greedy the first last-resort emission
  /// of a value other than next_needed(). Absent iff sorted.
  std::optional<int> first_failure;
};

// Decision conditions of the optimal two-stack strategy (configurations with
// k = 2 only; throws std::invalid_argument otherwise). A comparison against
// an empty stack counts as true.

/// Top(D_2) < Top(I).
bool condition_alpha(const Configuration& c);
/// Top(D_2) < Top(D_1) and Top(D_1) < Top(I); false when D_1 is empty
/// (the move it guards needs a source element).
bool condition_beta(const Configuration& c);
/// Top(D_1) < Input, Input < Top(I), and the remaining input is strictly
/// increasing up to and including the first element larger than Top(D_2)
/// (up to its end when no such element exists). False on empty input.
bool condition_gamma(const Configuration& c);

struct Optimal2Step {
  int instruction = 0;          // 1..6
  std::vector<Operation> ops;   // the concrete moves the instruction performs
};

/// The first applicable instruction of the optimal strategy on a non-final
/// configuration with k = 2:
///   1. Top(I) is the next value to emit            -> emit it;
///   2. the decreasing stacks hold exactly the next  -> merge them into I
///      values to emit (and are not both empty)         largest-first, then
///                                                      emit them all;
///   3. condition_beta                               -> d_1;
///   4. condition_gamma                              -> d_0;
///   5. condition_alpha and D_2 nonempty             -> d_2;
///   6. otherwise                                    -> d_3 (wrong emission,
///                                                      marks failure).
Optimal2Step next_instruction_optimal2(const Configuration& c);

enum class GreedyVariant { left, quasi };

struct GreedyChoice {
  Operation op;
  int rank = 0;  // 1-based position in the priority chain
};

/// First legal operation in the variant's priority order:
///   left:  d_{k+1}, d_k, ..., d_1, d_0
///   quasi: d_{k+1}, d_{k-1}, ..., d_1, d_0, d_k
GreedyChoice next_operation_greedy(const Configuration& c,
                                   GreedyVariant variant);

SortReport run(StrategyId strategy, const Permutation& input,
               bool record_digests = false);
bool sorts(StrategyId strategy, const Permutation& input);

/// Reusable strategy engine with preallocated buffers; create one per thread
/// when sweeping many permutations.
class StrategyRunner {
public:
  explicit StrategyRunner(StrategyId id);

  StrategyId id() const { return id_; }

  /// `values` must be a permutation of 1..values.size() (not re-validated).
  bool sorts(std::span<const int> values);

  SortReport run(const Permutation& input, bool record_digests = false);

private:
  template <typename Sink>
  bool drive(std::span<const int> values, Sink&& sink);

  StrategyId id_;
  Configuration config_;
  std::vector<int> priority_;  // greedy chains; empty for optimal2
};

}  // namespace dki
