#pragma once

#include <optional>

#include "dagbench/complexity.hpp"
#include "dagbench/dag.hpp"

namespace dagbench {

/// True iff a directed path src -> ... -> dst exists.
bool reachable(const Dag& dag, NodeId src, NodeId dst);

/// Exact maximum over all directed src-to-dst paths of the node-value sum,
/// both endpoints included, by dynamic programming over topological order.
/// nullopt when dst is unreachable.
std::optional<long long> max_sum_path(const Dag& dag, NodeId src, NodeId dst);

struct ReachSample {
  Dag dag;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  bool answer = false;
  bool balanced = false;
};

struct MaxSumSample {
  Dag dag;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  std::optional<long long> answer;  // nullopt = N/A
};

/// Uniform ordered distinct query pair over a fresh G-DAG. With a target
/// label, rejection-samples until the label matches: the pair is redrawn
/// first (bounded attempts) and the graph after that.
ReachSample gen_reach(const ComplexitySpec& spec, Rng& rng,
                      std::optional<bool> want_label = std::nullopt);

MaxSumSample gen_maxsum(const ComplexitySpec& spec, Rng& rng);

}  // namespace dagbench
