#include "dagbench/tasks_algo.hpp"

#include <cmath>
#include <tuple>

namespace dagbench {

bool reachable(const Dag& dag, NodeId src, NodeId dst) {
  if (src >= dag.nodes.size() || dst >= dag.nodes.size())
    throw IntegrityError("unknown node id in reachability query");
  // iterative DFS over child links
  std::vector<bool> seen(dag.nodes.size(), false);
  std::vector<NodeId> stack{src};
  seen[src] = true;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    if (u == dst) return true;
    for (NodeId c : dag.nodes[u].children)
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
  }
  return false;
}

std::optional<long long> max_sum_path(const Dag& dag, NodeId src, NodeId dst) {
  if (src >= dag.nodes.size() || dst >= dag.nodes.size())
    throw IntegrityError("unknown node id in max-sum query");
  // best[u] = maximum sum of a u -> dst path including both ends
  std::vector<std::optional<long long>> best(dag.nodes.size());
  const auto value_of = [&](NodeId id) -> long long {
    const auto& v = dag.nodes[id].value;
    if (!v) throw IntegrityError("max-sum path over a value-free graph");
    return std::llround(num(*v));
  };
  for (NodeId id : topo_order(dag)) {  // children come before parents
    if (id == dst) {
      best[id] = value_of(id);
      continue;
    }
    std::optional<long long> best_child;
    for (NodeId c : dag.nodes[id].children)
      if (best[c] && (!best_child || *best[c] > *best_child)) best_child = best[c];
    if (best_child) best[id] = value_of(id) + *best_child;
  }
  return best[src];
}

namespace {

std::pair<NodeId, NodeId> draw_pair(std::size_t n, Rng& rng) {
  const NodeId src = static_cast<NodeId>(rng.below(n));
  NodeId dst = static_cast<NodeId>(rng.below(n - 1));
  if (dst >= src) ++dst;
  return {src, dst};
}

}  // namespace

ReachSample gen_reach(const ComplexitySpec& spec, Rng& rng, std::optional<bool> want_label) {
  constexpr int kPairAttempts = 32;
  constexpr int kGraphAttempts = 256;
  for (int g = 0; g < kGraphAttempts; ++g) {
    Dag dag = gen_gdag(spec.num_nodes, spec.max_links, spec.min_links, std::nullopt, rng);
    for (int p = 0; p < (want_label ? kPairAttempts : 1); ++p) {
      const auto [src, dst] = draw_pair(dag.nodes.size(), rng);
      const bool label = reachable(dag, src, dst);
      if (!want_label || label == *want_label) {
        ReachSample s;
        s.dag = std::move(dag);
        s.src = src;
        s.dst = dst;
        s.answer = label;
        s.balanced = want_label.has_value();
        return s;
      }
    }
  }
  throw GenerationError("reachability label resample budget exhausted");
}

MaxSumSample gen_maxsum(const ComplexitySpec& spec, Rng& rng) {
  MaxSumSample s;
  s.dag = gen_gdag(spec.num_nodes, spec.max_links, spec.min_links,
                   ValueDist{ValueDist::Kind::IntRange, 1, 10}, rng);
  std::tie(s.src, s.dst) = draw_pair(s.dag.nodes.size(), rng);
  s.answer = max_sum_path(s.dag, s.src, s.dst);
  return s;
}

}  // namespace dagbench
