#pragma once

#include <array>
#include <optional>

#include "dagbench/complexity.hpp"
#include "dagbench/dag.hpp"

namespace dagbench {

inline constexpr double kArithSigma = 1e-4;
inline constexpr double kLinearSigma = 1e-3;
inline constexpr double kDivGuard = 1e-9;      // |divisor| below this is a zero division
inline constexpr double kOverflowCap = 1e10;   // intermediate magnitude limit

/// Six-operation arithmetic set (the worked problems use division).
TaskConstraint arith_constraint();
/// Five-operation variant without division, for the stricter table config.
TaskConstraint arith_constraint_no_div();

/// Node rule for arithmetic trees: add sums the children, mul multiplies,
/// sub/div take the first child minus/over the rest, sqrt and square are
/// unary. Returns nullopt on division by near-zero or sqrt of a negative.
std::optional<Value> arith_eval_op(Op op, const std::vector<Value>& child_values);

/// Bottom-up evaluation of an arithmetic tree; nullopt means N/A.
/// Throws IntegrityError on malformed arity.
std::optional<double> eval_arith(const Dag& dag);

struct ArithmeticSample {
  Dag dag;
  std::optional<double> answer;  // nullopt = N/A
  double sigma = kArithSigma;
};

struct ArithOptions {
  bool allow_na = false;  // keep N/A-answer samples instead of retrying
};

/// Generates a valid arithmetic sample: leaf values are redrawn (bounded
/// retries) and then the whole tree rebuilt until no step divides by
/// near-zero, takes sqrt of a negative, or exceeds the overflow cap.
/// Throws GenerationError when the retry budget is exhausted.
ArithmeticSample gen_arith(const ComplexitySpec& spec, const TaskConstraint& constraint, Rng& rng,
                           const ArithOptions& options = {});

struct LinearEqSample {
  std::array<double, 6> coeffs{};  // a1 b1 c1 a2 b2 c2, substituted slot filled in
  int substituted_slot = 0;        // 0..5
  Dag tree;                        // substitution tree; its root value is the coefficient
  double x = 0;
  double y = 0;
  double sigma = kLinearSigma;
};

/// Exact elimination solution of a1x+b1y=c1, a2x+b2y=c2.
/// Throws GenerationError on a singular system.
std::pair<double, double> solve_linear(double a1, double b1, double c1, double a2, double b2,
                                       double c2);

/// Draws integer coefficients from [-10,10] without zero, substitutes one
/// uniformly chosen slot with a tree whose root value becomes that
/// coefficient (a single directly-given value at depth 1), and resamples
/// until the determinant is nonzero.
LinearEqSample gen_linear(const ComplexitySpec& spec, const TaskConstraint& constraint, Rng& rng);

}  // namespace dagbench
