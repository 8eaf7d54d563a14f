#include "dki/strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace dki {

namespace {

void require_k2(const Configuration& c, const char* what) {
  if (c.k() != 2)
    throw std::invalid_argument(std::string(what) +
                                " requires a machine with k = 2");
}

// Instruction 2 gate: the decreasing stacks are nonempty as a whole and hold
// exactly the smallest not-yet-emitted values. Tops are stack maxima, so it
// suffices that everything outside the stacks exceeds both tops.
bool pour_ready(const Configuration& c) {
  const auto d1 = c.dstack_top(1);
  const auto d2 = c.dstack_top(2);
  if (!d1 && !d2) return false;
  const int maxd = std::max(d1.value_or(0), d2.value_or(0));
  if (const auto it = c.istack_top(); it && *it < maxd) return false;
  for (int v : c.input_tail())
    if (v < maxd) return false;
  return true;
}

// Executes instruction 2: merge both decreasing stacks into I largest-first,
// then emit every merged value. Every micro-move is checked as it runs.
template <typename PerOp>
void run_pour(Configuration& c, PerOp&& per_op) {
  const int k = c.k();
  int merged = static_cast<int>(c.dstack(1).size() + c.dstack(2).size());
  while (true) {
    const auto d1 = c.dstack_top(1);
    const auto d2 = c.dstack_top(2);
    if (!d1 && !d2) break;
    const Operation op{d1 && (!d2 || *d1 > *d2) ? 1 : 2};
    c.step(op);  // throws if a merge move were ever out of order
    per_op(op);
  }
  for (int t = 0; t < merged; ++t) {
    if (!c.istack_top() || *c.istack_top() != c.next_needed())
      throw std::logic_error("pour drain lost the emission order");
    c.step(Operation{k + 1});
    per_op(Operation{k + 1});
  }
}

int decide_optimal2(const Configuration& c) {
  if (const auto it = c.istack_top(); it && *it == c.next_needed()) return 1;
  if (pour_ready(c)) return 2;
  if (condition_beta(c)) return 3;
  if (condition_gamma(c)) return 4;
  if (condition_alpha(c) && c.dstack_top(2)) return 5;
  if (!c.istack_top())
    throw std::logic_error(
        "optimal2: no instruction applies and the increasing stack is empty");
  return 6;
}

void check_optimal2_step_invariants(const Configuration& c) {
  const auto it = c.istack_top();
  if (!it) return;
  if (const auto d2 = c.dstack_top(2); d2 && *d2 >= *it)
    throw std::logic_error("optimal2 invariant broken: Top(D2) >= Top(I)");
  if (const auto d1 = c.dstack_top(1); d1 && *d1 >= *it)
    throw std::logic_error("optimal2 invariant broken: Top(D1) >= Top(I)");
}

std::vector<int> greedy_priority(GreedyVariant variant, int k) {
  std::vector<int> order;
  order.push_back(k + 1);
  if (variant == GreedyVariant::left) {
    for (int i = k; i >= 0; --i) order.push_back(i);
  } else {
    for (int i = k - 1; i >= 0; --i) order.push_back(i);
    if (k >= 1) order.push_back(k);
    if (k == 0) order.push_back(0);
  }
  return order;
}

}  // namespace

std::optional<StrategyId> StrategyId::parse(std::string_view name,
                                            std::optional<int> k) {
  if (name == "optimal2") {
    if (k && *k != 2) return std::nullopt;
    return optimal2();
  }
  if (name == "stacksort") {
    if (k && *k != 0) return std::nullopt;
    return stacksort();
  }
  if (name == "lg" || name == "qlg") {
    if (!k || *k < 0) return std::nullopt;
    return name == "lg" ? left_greedy(*k) : quasi_left_greedy(*k);
  }
  return std::nullopt;
}

std::string StrategyId::name() const {
  switch (kind) {
    case StrategyKind::optimal2: return "optimal2";
    case StrategyKind::left_greedy: return "lg";
    case StrategyKind::quasi_left_greedy: return "qlg";
    case StrategyKind::stacksort: return "stacksort";
  }
  return "?";
}

bool condition_alpha(const Configuration& c) {
  require_k2(c, "condition_alpha");
  const auto d2 = c.dstack_top(2);
  const auto it = c.istack_top();
  return !d2 || !it || *d2 < *it;
}

bool condition_beta(const Configuration& c) {
  require_k2(c, "condition_beta");
  const auto d1 = c.dstack_top(1);
  if (!d1) return false;
  const auto d2 = c.dstack_top(2);
  if (d2 && *d2 >= *d1) return false;
  const auto it = c.istack_top();
  return !it || *d1 < *it;
}

bool condition_gamma(const Configuration& c) {
  require_k2(c, "condition_gamma");
  if (c.input_empty()) return false;
  const int in = c.input_front();
  if (const auto d1 = c.dstack_top(1); d1 && in < *d1) return false;
  if (const auto it = c.istack_top(); it && in > *it) return false;
  const auto d2 = c.dstack_top(2);
  if (!d2) return true;
  const auto tail = c.input_tail();
  if (tail[0] > *d2) return true;
  for (size_t i = 1; i < tail.size(); ++i) {
    if (tail[i] < tail[i - 1]) return false;  // descent before reaching y
    if (tail[i] > *d2) return true;           // y reached, prefix increasing
  }
  return true;  // nothing exceeds Top(D2) and the whole tail is increasing
}

Optimal2Step next_instruction_optimal2(const Configuration& c) {
  require_k2(c, "next_instruction_optimal2");
  if (c.is_final())
    throw std::invalid_argument(
        "next_instruction_optimal2 on a final configuration");
  Optimal2Step step;
  step.instruction = decide_optimal2(c);
  switch (step.instruction) {
    case 1:
    case 6:
      step.ops = {Operation{3}};
      break;
    case 2: {
      Configuration copy = c;
      run_pour(copy, [&](Operation op) { step.ops.push_back(op); });
      break;
    }
    case 3:
      step.ops = {Operation{1}};
      break;
    case 4:
      step.ops = {Operation{0}};
      break;
    case 5:
      step.ops = {Operation{2}};
      break;
  }
  return step;
}

GreedyChoice next_operation_greedy(const Configuration& c,
                                   GreedyVariant variant) {
  const auto order = greedy_priority(variant, c.k());
  for (size_t r = 0; r < order.size(); ++r) {
    const Operation op{order[r]};
    if (c.legal(op)) return {op, static_cast<int>(r) + 1};
  }
  throw std::logic_error("no legal operation on a non-final configuration");
}

StrategyRunner::StrategyRunner(StrategyId id) : id_(id), config_(id.k) {
  if (id.kind == StrategyKind::optimal2 && id.k != 2)
    throw std::invalid_argument("optimal2 requires k = 2");
  if (id.kind == StrategyKind::stacksort && id.k != 0)
    throw std::invalid_argument("stacksort requires k = 0");
  if (id.k < 0) throw std::invalid_argument("k must be >= 0");
  switch (id_.kind) {
    case StrategyKind::optimal2:
      break;
    case StrategyKind::left_greedy:
      priority_ = greedy_priority(GreedyVariant::left, id_.k);
      break;
    case StrategyKind::quasi_left_greedy:
      priority_ = greedy_priority(GreedyVariant::quasi, id_.k);
      break;
    case StrategyKind::stacksort:
      priority_ = greedy_priority(GreedyVariant::left, 0);
      break;
  }
}

template <typename Sink>
bool StrategyRunner::drive(std::span<const int> values, Sink&& sink) {
  Configuration& c = config_;
  c.reset(values);
  const int emit_index = id_.k + 1;
  long steps = 0;
  bool failed = false;

  if (id_.kind == StrategyKind::optimal2) {
    while (!c.is_final()) {
      const int instruction = decide_optimal2(c);
      if (instruction == 6) {
        // Both decreasing stacks must already be drained here; anything else
        // would contradict the strategy's standing inequalities.
        if (c.dstack_top(1) || c.dstack_top(2))
          throw std::logic_error(
              "optimal2 fallback emission with a nonempty decreasing stack");
        failed = true;
        c.step(Operation{3});
        check_optimal2_step_invariants(c);
        sink(Operation{3}, 6, true, c);
        ++steps;
      } else if (instruction == 2) {
        run_pour(c, [&](Operation op) {
          check_optimal2_step_invariants(c);
          sink(op, 2, false, c);
          ++steps;
        });
      } else {
        const Operation op{instruction == 1 ? 3
                           : instruction == 3 ? 1
                           : instruction == 4 ? 0
                                              : 2};
        c.step(op);
        check_optimal2_step_invariants(c);
        sink(op, instruction, false, c);
        ++steps;
      }
    }
  } else {
    const GreedyVariant variant =
        id_.kind == StrategyKind::quasi_left_greedy ? GreedyVariant::quasi
                                                    : GreedyVariant::left;
    while (!c.is_final()) {
      const auto choice = next_operation_greedy(c, variant);
      const bool wrong = choice.op.index == emit_index &&
                         *c.istack_top() != c.next_needed();
      if (wrong) failed = true;
      c.step(choice.op);
      sink(choice.op, choice.rank, wrong, c);
      ++steps;
    }
  }

  if (steps != static_cast<long>(values.size()) * (id_.k + 2))
    throw std::logic_error("run did not take exactly n*(k+2) operations");
  const bool sorted = c.is_sorted_final();
  if (sorted == failed)
    throw std::logic_error("sortedness must coincide with never failing");
  return sorted;
}

bool StrategyRunner::sorts(std::span<const int> values) {
  return drive(values,
               [](Operation, int, bool, const Configuration&) {});
}

SortReport StrategyRunner::run(const Permutation& input, bool record_digests) {
  SortReport report;
  report.input = input;
  report.strategy = id_;
  report.sorted = drive(
      input.values(),
      [&](Operation op, int tag, bool wrong, const Configuration& after) {
        TraceStep step;
        step.op = op;
        step.instruction = tag;
        if (record_digests) step.digest = after.render();
        if (wrong && !report.first_failure)
          report.first_failure = static_cast<int>(report.trace.size());
        report.trace.push_back(std::move(step));
      });
  std::vector<int> out(config_.output().begin(), config_.output().end());
  report.output = Permutation::from_sequence(std::move(out));
  return report;
}

SortReport run(StrategyId strategy, const Permutation& input,
               bool record_digests) {
  StrategyRunner runner(strategy);
  return runner.run(input, record_digests);
}

bool sorts(StrategyId strategy, const Permutation& input) {
  StrategyRunner runner(strategy);
  return runner.sorts(input.values());
}

}  // namespace dki
