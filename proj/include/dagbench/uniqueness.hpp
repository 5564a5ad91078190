#pragma once

#include <cstdint>
#include <string>

#include "dagbench/dag.hpp"
#include "dagbench/parallel.hpp"

namespace dagbench {

/// Closed form for the probability that two independently generated complete
/// w-ary trees of depth d coincide, with k operations and n leaf values:
/// P = (k^((w^(d-1)-1)/(w-1)) * n^(w^(d-1)))^(-1), evaluated in log space.
/// w = 1 is the chain limit (the operation exponent becomes d-1).
double tree_collision_log_prob(int k, int n, int d, int w);
double tree_collision_prob(int k, int n, int d, int w);

/// 1/(n-1)! bound for general DAGs with at least one link per node.
double gdag_collision_log_bound(int n);
double gdag_collision_bound(int n);

struct CollisionParams {
  int k = 2;  // operation count (binary operations only)
  int n = 2;  // leaf value count
  int d = 2;  // depth
  int w = 2;  // width
};

/// Base-case tree generator used by the collision experiments: binary
/// operations only (no unary), so every internal node has exactly w children
/// and the outcome space is uniform over k^internal * n^leaves trees.
Dag base_case_tree(const CollisionParams& params, Rng& rng);

struct CollisionEstimate {
  std::uint64_t trials = 0;
  std::uint64_t collisions = 0;
  double observed_rate = 0;
  double predicted = 0;
  double predicted_log = 0;       // natural log, meaningful even when predicted underflows
  double standard_error = 0;      // binomial SE of the observed rate
  bool feasible = true;           // false when predicted < 1e-4 (too rare to sample)
};

/// Generates `trials` independent tree pairs and counts fingerprint
/// collisions. Infeasible parameter regimes (predicted rate below 1e-4) are
/// flagged and skip sampling. Trials are embarrassingly parallel; serial and
/// parallel modes count identically.
CollisionEstimate collision_experiment(const CollisionParams& params, std::uint64_t trials,
                                       std::uint64_t seed, ExecMode mode = ExecMode::Parallel);

/// The counting model behind the (n-1)! bound: node i links to exactly one
/// uniformly chosen node among indices i+1..n-1, the last node is the sink.
/// All (n-1)! labeled outcomes are equally likely.
Dag one_link_chain_dag(int n, Rng& rng);

struct ChainModelStats {
  std::uint64_t samples = 0;
  std::uint64_t distinct = 0;
  std::uint64_t min_bucket = 0;
  std::uint64_t max_bucket = 0;
};

ChainModelStats chain_model_experiment(int n, std::uint64_t samples, std::uint64_t seed);

std::string collision_report_line(const CollisionParams& params, const CollisionEstimate& est);

}  // namespace dagbench
