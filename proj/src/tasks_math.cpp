#include "dagbench/tasks_math.hpp"

#include <cmath>
#include <tuple>

namespace dagbench {

TaskConstraint arith_constraint() {
  return {ValueDist{ValueDist::Kind::IntRange, 1, 10},
          {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Sqrt, Op::Square}};
}

TaskConstraint arith_constraint_no_div() {
  return {ValueDist{ValueDist::Kind::IntRange, 1, 10},
          {Op::Add, Op::Sub, Op::Mul, Op::Sqrt, Op::Square}};
}

std::optional<Value> arith_eval_op(Op op, const std::vector<Value>& child_values) {
  const std::size_t n = child_values.size();
  if (is_unary(op) ? n != 1 : n < 2) throw IntegrityError("arithmetic op with wrong arity");
  switch (op) {
    case Op::Add: {
      double s = 0;
      for (const Value& v : child_values) s += num(v);
      return Value{s};
    }
    case Op::Sub: {
      double s = num(child_values[0]);
      for (std::size_t i = 1; i < n; ++i) s -= num(child_values[i]);
      return Value{s};
    }
    case Op::Mul: {
      double p = 1;
      for (const Value& v : child_values) p *= num(v);
      return Value{p};
    }
    case Op::Div: {
      double q = num(child_values[0]);
      for (std::size_t i = 1; i < n; ++i) {
        const double d = num(child_values[i]);
        if (std::abs(d) < kDivGuard) return std::nullopt;
        q /= d;
      }
      return Value{q};
    }
    case Op::Sqrt: {
      const double v = num(child_values[0]);
      if (v < 0) return std::nullopt;
      return Value{std::sqrt(v)};
    }
    case Op::Square: {
      const double v = num(child_values[0]);
      return Value{v * v};
    }
    default:
      throw IntegrityError("non-arithmetic op in arithmetic tree");
  }
}

std::optional<double> eval_arith(const Dag& dag) {
  Dag copy = dag;
  recompute_values(copy, &arith_eval_op);
  const auto& v = copy.nodes[copy.root].value;
  if (!v) return std::nullopt;
  return num(*v);
}

namespace {

// valid iff every node has a value and no intermediate exceeds the cap
bool arith_valid(const Dag& dag, bool allow_na) {
  bool all = true;
  for (const DagNode& n : dag.nodes) {
    if (!n.value) {
      all = false;
      continue;
    }
    if (std::abs(num(*n.value)) > kOverflowCap) return false;
  }
  return all || allow_na;
}

}  // namespace

ArithmeticSample gen_arith(const ComplexitySpec& spec, const TaskConstraint& constraint, Rng& rng,
                           const ArithOptions& options) {
  constexpr int kTreeBudget = 64;
  constexpr int kLeafBudget = 16;
  for (int t = 0; t < kTreeBudget; ++t) {
    Dag dag = gen_tdag(spec.depth, spec.width, constraint, rng, &arith_eval_op);
    add_extra_links(dag, spec.extra_links_per_node, rng, &arith_eval_op);
    for (int r = 0; r < kLeafBudget; ++r) {
      if (arith_valid(dag, options.allow_na)) {
        ArithmeticSample sample;
        sample.dag = std::move(dag);
        const auto& root_value = sample.dag.nodes[sample.dag.root].value;
        sample.answer = root_value ? std::optional<double>(num(*root_value)) : std::nullopt;
        return sample;
      }
      redraw_leaf_values(dag, constraint.values, rng);
      recompute_values(dag, &arith_eval_op);
    }
  }
  throw GenerationError("arithmetic regeneration limit exceeded");
}

std::pair<double, double> solve_linear(double a1, double b1, double c1, double a2, double b2,
                                       double c2) {
  const double det = a1 * b2 - a2 * b1;
  if (std::abs(det) < kDivGuard) throw GenerationError("singular linear system");
  return {(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
}

LinearEqSample gen_linear(const ComplexitySpec& spec, const TaskConstraint& constraint, Rng& rng) {
  constexpr int kBudget = 256;
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    LinearEqSample s;
    for (double& c : s.coeffs) {
      double v;
      do {
        v = static_cast<double>(rng.int_in(-10, 10));
      } while (v == 0.0);
      c = v;
    }
    s.substituted_slot = static_cast<int>(rng.below(6));

    // the substitution tree lives in its own "0" name namespace (aaa0, ...)
    Dag tree;
    bool tree_ok = false;
    for (int t = 0; t < 16 && !tree_ok; ++t) {
      tree = gen_tdag(spec.depth, spec.width, constraint, rng, &arith_eval_op, "0");
      add_extra_links(tree, spec.extra_links_per_node, rng, &arith_eval_op);
      tree_ok = dag_has_all_values(tree) &&
                std::abs(num(*tree.nodes[tree.root].value)) <= kOverflowCap;
    }
    if (!tree_ok) continue;
    s.coeffs[static_cast<std::size_t>(s.substituted_slot)] = num(*tree.nodes[tree.root].value);
    s.tree = std::move(tree);

    const double det = s.coeffs[0] * s.coeffs[4] - s.coeffs[3] * s.coeffs[1];
    if (std::abs(det) < kDivGuard) continue;
    std::tie(s.x, s.y) =
        solve_linear(s.coeffs[0], s.coeffs[1], s.coeffs[2], s.coeffs[3], s.coeffs[4], s.coeffs[5]);
    return s;
  }
  throw GenerationError("linear system regeneration limit exceeded");
}

}  // namespace dagbench
