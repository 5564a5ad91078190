#include "dagbench/tasks_logic.hpp"

namespace dagbench {

TaskConstraint logic_constraint() {
  return {ValueDist{ValueDist::Kind::Truth, 0, 1}, {Op::And, Op::Or, Op::Not}};
}

namespace {

void check_logic_arity(Op op, std::size_t n) {
  if (!is_logic_op(op)) throw IntegrityError("non-logic op in logic tree");
  if (is_unary(op) ? n != 1 : n < 2) throw IntegrityError("logic op with wrong arity");
}

Truth3 kleene_combine(Op op, const std::vector<Value>& child_values) {
  if (op == Op::Not) return kleene_not(truth(child_values[0]));
  Truth3 acc = truth(child_values[0]);
  for (std::size_t i = 1; i < child_values.size(); ++i) {
    acc = op == Op::And ? kleene_and(acc, truth(child_values[i]))
                        : kleene_or(acc, truth(child_values[i]));
  }
  return acc;
}

}  // namespace

std::optional<Value> bool_eval_op(Op op, const std::vector<Value>& child_values) {
  check_logic_arity(op, child_values.size());
  return Value{kleene_combine(op, child_values)};
}

std::optional<Value> deductive_eval_op(Op op, const std::vector<Value>& child_values) {
  check_logic_arity(op, child_values.size());
  const Truth3 premise = kleene_combine(op, child_values);
  return Value{premise == Truth3::True ? Truth3::True : Truth3::NA};
}

Truth3 eval_bool(const Dag& dag) {
  Dag copy = dag;
  recompute_values(copy, &bool_eval_op);
  return truth(*copy.nodes[copy.root].value);
}

Truth3 eval_deductive(const Dag& dag) {
  Dag copy = dag;
  recompute_values(copy, &deductive_eval_op);
  return truth(*copy.nodes[copy.root].value);
}

std::vector<NodeId> abduction_path(const Dag& dag, NodeId target) {
  if (target >= dag.nodes.size()) throw IntegrityError("abduction target out of range");
  if (!dag.nodes[target].is_leaf()) throw IntegrityError("abduction target must be a leaf");
  std::vector<NodeId> path;
  // first path in child order, depth-first
  auto dfs = [&](auto&& self, NodeId u) -> bool {
    path.push_back(u);
    if (u == target) return true;
    for (NodeId c : dag.nodes[u].children)
      if (self(self, c)) return true;
    path.pop_back();
    return false;
  };
  if (!dfs(dfs, dag.root)) throw IntegrityError("target not on a root-to-leaf path");
  return path;
}

Truth3 eval_abductive(const Dag& dag, Truth3 root_value, NodeId target) {
  const std::vector<NodeId> path = abduction_path(dag, target);
  Truth3 value = root_value;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const DagNode& node = dag.nodes[path[i]];
    if (value == Truth3::False) {
      switch (*node.op) {
        case Op::Or: value = Truth3::False; break;   // every disjunct is False
        case Op::Not: value = Truth3::True; break;   // the negated child is True
        default: value = Truth3::NA; break;          // a failed conjunct cannot be isolated
      }
    } else {
      value = Truth3::NA;  // True or N/A gives no backward information
    }
  }
  return value;
}

LogicSample gen_logic(LogicMode mode, const ComplexitySpec& spec, Rng& rng,
                      std::optional<Truth3> want_label) {
  const TaskConstraint constraint = logic_constraint();
  const EvalFn eval = mode == LogicMode::Boolean ? &bool_eval_op : &deductive_eval_op;
  constexpr int kBalanceBudget = 4096;
  for (int attempt = 0;; ++attempt) {
    LogicSample s;
    s.mode = mode;
    s.dag = gen_tdag(spec.depth, spec.width, constraint, rng, eval);
    add_extra_links(s.dag, spec.extra_links_per_node, rng, eval);
    switch (mode) {
      case LogicMode::Boolean:
        s.answer = eval_bool(s.dag);
        break;
      case LogicMode::Deductive:
        s.answer = eval_deductive(s.dag);
        break;
      case LogicMode::Abductive: {
        s.given_root = rng.coin() ? Truth3::True : Truth3::False;
        std::vector<NodeId> leaves;
        for (const DagNode& n : s.dag.nodes)
          if (n.is_leaf()) leaves.push_back(n.id);
        s.target = leaves[rng.below(leaves.size())];
        s.answer = eval_abductive(s.dag, s.given_root, s.target);
        break;
      }
    }
    if (!want_label || s.answer == *want_label) return s;
    if (attempt >= kBalanceBudget) throw GenerationError("logic label resample budget exhausted");
  }
}

}  // namespace dagbench
