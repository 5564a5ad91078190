#include "dagbench/uniqueness.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace dagbench {

namespace {

// w^(d-1) and (w^(d-1)-1)/(w-1) as reals; exact for the ranges we accept
double leaf_exponent(int d, int w) { return std::pow(static_cast<double>(w), d - 1); }

double op_exponent(int d, int w) {
  if (w == 1) return static_cast<double>(d - 1);
  return (leaf_exponent(d, w) - 1.0) / (w - 1);
}

}  // namespace

double tree_collision_log_prob(int k, int n, int d, int w) {
  if (k < 1 || n < 1 || d < 1 || w < 1) throw GenerationError("invalid collision parameters");
  return -(op_exponent(d, w) * std::log(static_cast<double>(k)) +
           leaf_exponent(d, w) * std::log(static_cast<double>(n)));
}

double tree_collision_prob(int k, int n, int d, int w) {
  return std::exp(tree_collision_log_prob(k, n, d, w));
}

double gdag_collision_log_bound(int n) {
  if (n < 2) throw GenerationError("general-DAG bound needs n >= 2");
  return -std::lgamma(static_cast<double>(n));  // log (n-1)!
}

double gdag_collision_bound(int n) { return std::exp(gdag_collision_log_bound(n)); }

Dag base_case_tree(const CollisionParams& params, Rng& rng) {
  static constexpr Op kBinaryOps[] = {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::And, Op::Or};
  if (params.k < 1 || params.k > 6)
    throw GenerationError("base-case generator supports 1..6 operations");
  TaskConstraint constraint;
  constraint.values = ValueDist{ValueDist::Kind::IntRange, 1, params.n};
  constraint.ops.assign(kBinaryOps, kBinaryOps + params.k);
  return gen_tdag(params.d, params.w, constraint, rng, nullptr);
}

CollisionEstimate collision_experiment(const CollisionParams& params, std::uint64_t trials,
                                       std::uint64_t seed, ExecMode mode) {
  if (params.k < 1 || params.k > 6)
    throw GenerationError("base-case generator supports 1..6 operations");
  CollisionEstimate est;
  est.trials = trials;
  est.predicted_log = tree_collision_log_prob(params.k, params.n, params.d, params.w);
  est.predicted = std::exp(est.predicted_log);
  est.feasible = est.predicted >= 1e-4;
  if (!est.feasible || trials == 0) return est;

  est.collisions = parallel_count(trials, mode, [&](std::size_t t) {
    Rng a = Rng::derive(seed, {0x7472u, 2 * static_cast<std::uint64_t>(t)});
    Rng b = Rng::derive(seed, {0x7472u, 2 * static_cast<std::uint64_t>(t) + 1});
    return fingerprint(base_case_tree(params, a)) == fingerprint(base_case_tree(params, b));
  });
  est.observed_rate = static_cast<double>(est.collisions) / static_cast<double>(trials);
  est.standard_error =
      std::sqrt(est.predicted * (1.0 - est.predicted) / static_cast<double>(trials));
  return est;
}

Dag one_link_chain_dag(int n, Rng& rng) {
  if (n < 2) throw GenerationError("chain model needs n >= 2");
  Dag dag;
  dag.kind = DagKind::General;
  dag.nodes.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    DagNode& node = dag.nodes[static_cast<std::size_t>(i)];
    node.id = static_cast<NodeId>(i);
    node.name = node_name(static_cast<std::size_t>(i));
  }
  for (int i = 0; i + 1 < n; ++i) {
    const NodeId target = static_cast<NodeId>(rng.int_in(i + 1, n - 1));
    dag.nodes[static_cast<std::size_t>(i)].children.push_back(target);
  }
  return dag;
}

ChainModelStats chain_model_experiment(int n, std::uint64_t samples, std::uint64_t seed) {
  std::map<Digest128, std::uint64_t> buckets;
  Rng rng = Rng::derive(seed, {0x6368u});
  for (std::uint64_t i = 0; i < samples; ++i) ++buckets[fingerprint(one_link_chain_dag(n, rng))];
  ChainModelStats stats;
  stats.samples = samples;
  stats.distinct = buckets.size();
  stats.min_bucket = samples;
  for (const auto& [digest, count] : buckets) {
    stats.min_bucket = std::min(stats.min_bucket, count);
    stats.max_bucket = std::max(stats.max_bucket, count);
  }
  if (buckets.empty()) stats.min_bucket = 0;
  return stats;
}

std::string collision_report_line(const CollisionParams& params, const CollisionEstimate& est) {
  char buf[256];
  if (!est.feasible) {
    std::snprintf(buf, sizeof(buf),
                  "k=%d n=%d d=%d w=%d predicted=%.6e (log=%.4f) empirical=skipped (rate below "
                  "1e-4)",
                  params.k, params.n, params.d, params.w, est.predicted, est.predicted_log);
    return buf;
  }
  std::snprintf(buf, sizeof(buf),
                "k=%d n=%d d=%d w=%d trials=%llu predicted=%.6e observed=%.6e se=%.3e z=%+.2f",
                params.k, params.n, params.d, params.w,
                static_cast<unsigned long long>(est.trials), est.predicted, est.observed_rate,
                est.standard_error,
                est.standard_error > 0
                    ? (est.observed_rate - est.predicted) / est.standard_error
                    : 0.0);
  return buf;
}

}  // namespace dagbench
