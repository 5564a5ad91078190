#include "oracles.hpp"

#include <cmath>
#include <deque>

namespace dagbench::oracle {

std::optional<double> eval_arith_postorder(const Dag& dag) {
  std::vector<std::optional<double>> memo(dag.nodes.size());
  std::vector<bool> done(dag.nodes.size(), false);
  std::vector<std::pair<NodeId, bool>> stack{{dag.root, false}};
  while (!stack.empty()) {
    const auto [id, expanded] = stack.back();
    stack.pop_back();
    const DagNode& n = dag.nodes[id];
    if (done[id]) continue;
    if (n.is_leaf()) {
      memo[id] = num(*n.value);
      done[id] = true;
      continue;
    }
    if (!expanded) {
      stack.push_back({id, true});
      for (NodeId c : n.children) stack.push_back({c, false});
      continue;
    }
    done[id] = true;
    bool any_na = false;
    for (NodeId c : n.children)
      if (!memo[c]) any_na = true;
    if (any_na) {
      memo[id] = std::nullopt;
      continue;
    }
    double acc;
    switch (*n.op) {
      case Op::Add: {
        acc = 0;
        for (NodeId c : n.children) acc += *memo[c];
        break;
      }
      case Op::Sub: {
        acc = *memo[n.children[0]];
        double rest = 0;
        for (std::size_t i = 1; i < n.children.size(); ++i) rest += *memo[n.children[i]];
        acc -= rest;
        break;
      }
      case Op::Mul: {
        acc = 1;
        for (NodeId c : n.children) acc *= *memo[c];
        break;
      }
      case Op::Div: {
        acc = *memo[n.children[0]];
        double denom = 1;
        for (std::size_t i = 1; i < n.children.size(); ++i) denom *= *memo[n.children[i]];
        if (std::abs(denom) < 1e-9) {
          memo[id] = std::nullopt;
          continue;
        }
        // divide sequentially like the narration does, guarding each step
        acc = *memo[n.children[0]];
        bool bad = false;
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          if (std::abs(*memo[n.children[i]]) < 1e-9) {
            bad = true;
            break;
          }
          acc /= *memo[n.children[i]];
        }
        if (bad) {
          memo[id] = std::nullopt;
          continue;
        }
        break;
      }
      case Op::Sqrt: {
        const double v = *memo[n.children[0]];
        if (v < 0) {
          memo[id] = std::nullopt;
          continue;
        }
        acc = std::sqrt(v);
        break;
      }
      default: {  // Square
        const double v = *memo[n.children[0]];
        acc = v * v;
        break;
      }
    }
    memo[id] = acc;
  }
  return memo[dag.root];
}

Truth3 eval_bool_recursive(const Dag& dag, NodeId node,
                           const std::vector<std::optional<Truth3>>& leaf_override) {
  const DagNode& n = dag.nodes[node];
  if (n.is_leaf()) {
    if (node < leaf_override.size() && leaf_override[node]) return *leaf_override[node];
    return truth(*n.value);
  }
  if (*n.op == Op::Not) {
    const Truth3 c = eval_bool_recursive(dag, n.children[0], leaf_override);
    return c == Truth3::True ? Truth3::False : Truth3::True;
  }
  bool acc = *n.op == Op::And;
  for (NodeId c : n.children) {
    const bool v = eval_bool_recursive(dag, c, leaf_override) == Truth3::True;
    acc = *n.op == Op::And ? (acc && v) : (acc || v);
  }
  return acc ? Truth3::True : Truth3::False;
}

namespace {

Truth3 premise_of(const Dag& dag, NodeId node,
                  const std::vector<std::optional<Truth3>>& leaf_override) {
  const DagNode& n = dag.nodes[node];
  if (*n.op == Op::Not) {
    const Truth3 v = eval_deductive_recursive(dag, n.children[0], leaf_override);
    if (v == Truth3::NA) return Truth3::NA;
    return v == Truth3::True ? Truth3::False : Truth3::True;
  }
  int trues = 0, falses = 0, nas = 0;
  for (NodeId c : n.children) {
    switch (eval_deductive_recursive(dag, c, leaf_override)) {
      case Truth3::True: ++trues; break;
      case Truth3::False: ++falses; break;
      default: ++nas; break;
    }
  }
  if (*n.op == Op::And) {
    if (falses > 0) return Truth3::False;
    if (nas > 0) return Truth3::NA;
    return Truth3::True;
  }
  if (trues > 0) return Truth3::True;
  if (nas > 0) return Truth3::NA;
  return Truth3::False;
}

}  // namespace

Truth3 eval_deductive_recursive(const Dag& dag, NodeId node,
                                const std::vector<std::optional<Truth3>>& leaf_override) {
  const DagNode& n = dag.nodes[node];
  if (n.is_leaf()) {
    if (node < leaf_override.size() && leaf_override[node]) return *leaf_override[node];
    return truth(*n.value);
  }
  return premise_of(dag, node, leaf_override) == Truth3::True ? Truth3::True : Truth3::NA;
}

bool has_cycle_dfs(const Dag& dag) {
  enum Color { White, Grey, Black };
  std::vector<Color> color(dag.nodes.size(), White);
  // explicit stack with enter/exit events
  for (std::size_t start = 0; start < dag.nodes.size(); ++start) {
    if (color[start] != White) continue;
    std::vector<std::pair<NodeId, bool>> stack{{static_cast<NodeId>(start), false}};
    while (!stack.empty()) {
      const auto [id, leaving] = stack.back();
      stack.pop_back();
      if (leaving) {
        color[id] = Black;
        continue;
      }
      if (color[id] == Black) continue;
      if (color[id] == Grey) continue;
      color[id] = Grey;
      stack.push_back({id, true});
      for (NodeId c : dag.nodes[id].children) {
        if (color[c] == Grey) return true;
        if (color[c] == White) stack.push_back({c, false});
      }
    }
  }
  return false;
}

bool reachable_bfs(const Dag& dag, NodeId src, NodeId dst) {
  std::vector<bool> seen(dag.nodes.size(), false);
  std::deque<NodeId> queue{src};
  seen[src] = true;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    if (u == dst) return true;
    for (NodeId c : dag.nodes[u].children)
      if (!seen[c]) {
        seen[c] = true;
        queue.push_back(c);
      }
  }
  return false;
}

std::optional<long long> max_sum_enumerate(const Dag& dag, NodeId src, NodeId dst) {
  std::optional<long long> best;
  auto walk = [&](auto&& self, NodeId u, long long sum) -> void {
    sum += std::llround(num(*dag.nodes[u].value));
    if (u == dst) {
      if (!best || sum > *best) best = sum;
      return;
    }
    for (NodeId c : dag.nodes[u].children) self(self, c, sum);
  };
  walk(walk, src, 0);
  return best;
}

bool topo_property_holds(const Dag& dag, const std::vector<NodeId>& order) {
  if (order.size() != dag.nodes.size()) return false;
  std::vector<std::size_t> pos(dag.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const DagNode& n : dag.nodes)
    for (NodeId c : n.children)
      if (pos[c] >= pos[n.id]) return false;
  return true;
}

std::vector<NodeId> leaves_of(const Dag& dag) {
  std::vector<NodeId> out;
  for (const DagNode& n : dag.nodes)
    if (n.is_leaf()) out.push_back(n.id);
  return out;
}

}  // namespace dagbench::oracle
