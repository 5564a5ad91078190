#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dagbench/complexity.hpp"
#include "dagbench/tasks_algo.hpp"
#include "dagbench/tasks_logic.hpp"
#include "dagbench/tasks_math.hpp"

namespace dagbench {

using AnySample = std::variant<ArithmeticSample, LinearEqSample, LogicSample, ReachSample,
                               MaxSumSample>;

/// One rendered evaluation sample with full provenance. Regenerating with the
/// same (task, level, order, seed, index) reproduces it byte for byte.
struct Sample {
  Task task = Task::Arithmetic;
  AnySample body;
  std::vector<Dag> distractors;
  std::string prompt;

  Level level = Level::D1;
  Order order = Order::Topological;
  std::uint64_t seed = 0;
  std::uint32_t index = 0;

  const Dag& primary_dag() const;
};

/// Tuning switches shared across tasks.
struct GenOptions {
  bool allow_na_arith = false;
  bool no_division = false;          // restrict arithmetic to the five-op set
  bool balance_reachability = false; // round-robin the target label by index
  int extra_links_override = -1;     // -1 keeps the spec value
  int distractors_override = -1;
};

/// Canonical ground-truth text: the exact string a perfect responder would
/// put between the answer delimiters.
std::string ground_truth_string(const Sample& sample);

/// Numeric tolerance for the task, 0 for exact-token answers.
double sample_sigma(Task task);

/// Generates sample `index` of the cell, including distractors and the
/// rendered prompt. Fully deterministic in (task, level, order, seed, index).
Sample generate_sample(Task task, Level level, Order order, std::uint64_t seed,
                       std::uint32_t index, const GenOptions& options = {});

/// Same, with an explicit complexity override instead of the level preset.
Sample generate_sample_with_spec(Task task, const ComplexitySpec& spec, Level level, Order order,
                                 std::uint64_t seed, std::uint32_t index,
                                 const GenOptions& options = {});

}  // namespace dagbench
