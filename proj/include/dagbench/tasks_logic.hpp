#pragma once

#include <optional>

#include "dagbench/complexity.hpp"
#include "dagbench/dag.hpp"

namespace dagbench {

enum class LogicMode : int { Boolean = 0, Deductive, Abductive };

TaskConstraint logic_constraint();

/// Two-valued node rule (AND/OR/NOT over True/False children).
std::optional<Value> bool_eval_op(Op op, const std::vector<Value>& child_values);

/// Deductive node rule: the premise is the Kleene three-valued combination of
/// the children; the node becomes True when the premise is True and N/A
/// otherwise (a False or undetermined premise leaves the conclusion
/// undetermined).
std::optional<Value> deductive_eval_op(Op op, const std::vector<Value>& child_values);

Truth3 eval_bool(const Dag& dag);
Truth3 eval_deductive(const Dag& dag);

/// Backward walk from the root (with its given value) along the unique path
/// to `target`. A False conclusion forces a False premise: OR decomposes to
/// all-False children, NOT inverts, AND cannot isolate the failing conjunct
/// (each child stays N/A). A True or N/A node gives no backward information.
/// When extra links create several root-to-target paths the first one in
/// child order is used.
Truth3 eval_abductive(const Dag& dag, Truth3 root_value, NodeId target);

/// The child-order-first root-to-target path used by abduction and traces.
std::vector<NodeId> abduction_path(const Dag& dag, NodeId target);

struct LogicSample {
  LogicMode mode = LogicMode::Boolean;
  Dag dag;
  Truth3 answer = Truth3::NA;
  // abductive only:
  Truth3 given_root = Truth3::False;
  NodeId target = kNoNode;
};

/// Builds a T-DAG over AND/OR/NOT with True/False leaves and computes the
/// answer with the matching evaluator. Abductive mode picks the root value
/// and the target leaf uniformly. `want_label` optionally rejection-samples
/// until the answer matches (bounded retries).
LogicSample gen_logic(LogicMode mode, const ComplexitySpec& spec, Rng& rng,
                      std::optional<Truth3> want_label = std::nullopt);

}  // namespace dagbench
