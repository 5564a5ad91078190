#include "dagbench/sample.hpp"

#include "dagbench/describe.hpp"
#include "dagbench/numfmt.hpp"

namespace dagbench {

const Dag& Sample::primary_dag() const {
  return std::visit(
      [](const auto& s) -> const Dag& {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinearEqSample>)
          return s.tree;
        else
          return s.dag;
      },
      body);
}

std::string ground_truth_string(const Sample& sample) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ArithmeticSample>) {
          return s.answer ? fmt_number(*s.answer) : "N/A";
        } else if constexpr (std::is_same_v<T, LinearEqSample>) {
          return fmt_number(s.x) + " " + fmt_number(s.y);
        } else if constexpr (std::is_same_v<T, LogicSample>) {
          return to_string(s.answer);
        } else if constexpr (std::is_same_v<T, ReachSample>) {
          return s.answer ? "True" : "False";
        } else {
          return s.answer ? std::to_string(*s.answer) : "N/A";
        }
      },
      sample.body);
}

double sample_sigma(Task task) {
  switch (task) {
    case Task::Arithmetic:
    case Task::MaxSumPath:
      return kArithSigma;
    case Task::LinearEquation:
      return kLinearSigma;
    default:
      return 0.0;
  }
}

namespace {

// substream salts for the independent stages of one sample
constexpr std::uint64_t kStructStream = 1;
constexpr std::uint64_t kDistractorStream = 2;
constexpr std::uint64_t kDescribeStream = 3;

std::uint64_t cell_code(Task task, Level level) {
  return static_cast<std::uint64_t>(static_cast<int>(task)) * 16 +
         static_cast<std::uint64_t>(static_cast<int>(level)) + 1;
}

ComplexitySpec apply_overrides(ComplexitySpec spec, Order order, const GenOptions& options) {
  spec.order = order;
  if (options.extra_links_override >= 0) spec.extra_links_per_node = options.extra_links_override;
  if (options.distractors_override >= 0) spec.num_distractors = options.distractors_override;
  return spec;
}

struct TaskSemantics {
  TaskConstraint constraint;
  EvalFn eval;
};

TaskSemantics semantics_for(Task task, const GenOptions& options) {
  switch (task) {
    case Task::Arithmetic:
    case Task::LinearEquation:
      return {options.no_division ? arith_constraint_no_div() : arith_constraint(),
              &arith_eval_op};
    case Task::BooleanLogic:
      return {logic_constraint(), &bool_eval_op};
    case Task::DeductiveLogic:
    case Task::AbductiveLogic:
      return {logic_constraint(), &deductive_eval_op};
    default:
      return {{ValueDist{ValueDist::Kind::IntRange, 1, 10}, {}}, nullptr};
  }
}

AnySample generate_body(Task task, const ComplexitySpec& spec, const TaskSemantics& sem, Rng& rng,
                        std::uint32_t index, const GenOptions& options) {
  switch (task) {
    case Task::Arithmetic:
      return gen_arith(spec, sem.constraint, rng, ArithOptions{options.allow_na_arith});
    case Task::LinearEquation:
      return gen_linear(spec, sem.constraint, rng);
    case Task::BooleanLogic:
      return gen_logic(LogicMode::Boolean, spec, rng);
    case Task::DeductiveLogic:
      return gen_logic(LogicMode::Deductive, spec, rng);
    case Task::AbductiveLogic:
      return gen_logic(LogicMode::Abductive, spec, rng);
    case Task::Reachability: {
      // balancing alternates the target label round-robin over sample indexes
      std::optional<bool> want;
      if (options.balance_reachability) want = (index % 2) == 0;
      return gen_reach(spec, rng, want);
    }
    default:
      return gen_maxsum(spec, rng);
  }
}

}  // namespace

Sample generate_sample_with_spec(Task task, const ComplexitySpec& spec_in, Level level,
                                 Order order, std::uint64_t seed, std::uint32_t index,
                                 const GenOptions& options) {
  const ComplexitySpec spec = apply_overrides(spec_in, order, options);
  const TaskSemantics sem = semantics_for(task, options);
  const std::uint64_t cell = cell_code(task, level);

  Sample sample;
  sample.task = task;
  sample.level = level;
  sample.order = order;
  sample.seed = seed;
  sample.index = index;

  Rng struct_rng = Rng::derive(seed, {cell, kStructStream, index});
  sample.body = generate_body(task, spec, sem, struct_rng, index, options);

  if (spec.num_distractors > 0) {
    Rng distractor_rng = Rng::derive(seed, {cell, kDistractorStream, index});
    const int first_ns = task == Task::LinearEquation ? 1 : 0;
    sample.distractors = make_distractors(spec.num_distractors, task, sem.constraint,
                                          distractor_rng, sem.eval, first_ns);
  }

  Rng describe_rng =
      Rng::derive(seed, {cell, kDescribeStream, static_cast<std::uint64_t>(order) + 1, index});
  sample.prompt = render_prompt(sample, describe_rng);
  return sample;
}

Sample generate_sample(Task task, Level level, Order order, std::uint64_t seed,
                       std::uint32_t index, const GenOptions& options) {
  return generate_sample_with_spec(task, preset(task, level), level, order, seed, index, options);
}

}  // namespace dagbench
