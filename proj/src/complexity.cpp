#include "dagbench/complexity.hpp"

#include <sstream>

namespace dagbench {

const char* level_name(Level l) {
  switch (l) {
    case Level::D1: return "D1";
    case Level::D2: return "D2";
    case Level::D3: return "D3";
    default: return "D4";
  }
}

const char* order_name(Order o) {
  switch (o) {
    case Order::Topological: return "topological";
    case Order::Reversed: return "reversed";
    default: return "random";
  }
}

std::optional<Level> level_from_name(std::string_view name) {
  for (Level l : {Level::D1, Level::D2, Level::D3, Level::D4})
    if (name == level_name(l)) return l;
  return std::nullopt;
}

std::optional<Order> order_from_name(std::string_view name) {
  for (Order o : {Order::Topological, Order::Reversed, Order::Random})
    if (name == order_name(o)) return o;
  return std::nullopt;
}

const char* task_name(Task t) {
  switch (t) {
    case Task::Arithmetic: return "arithmetic";
    case Task::LinearEquation: return "linear_equation";
    case Task::BooleanLogic: return "boolean_logic";
    case Task::DeductiveLogic: return "deductive_logic";
    case Task::AbductiveLogic: return "abductive_logic";
    case Task::Reachability: return "reachability";
    default: return "max_sum_path";
  }
}

std::optional<Task> task_from_name(std::string_view name) {
  for (Task t : kAllTasks)
    if (name == task_name(t)) return t;
  return std::nullopt;
}

ComplexitySpec preset(Task task, Level level) {
  const int i = static_cast<int>(level);
  ComplexitySpec spec;
  if (is_general_task(task)) {
    static constexpr int nodes[4] = {7, 10, 15, 20};
    static constexpr int links[4] = {3, 4, 6, 8};
    spec.num_nodes = nodes[i];
    spec.max_links = links[i];
    spec.min_links = 1;
    return spec;
  }
  if (task == Task::LinearEquation) {
    static constexpr int d[4] = {1, 2, 3, 4};
    static constexpr int w[4] = {1, 2, 2, 2};
    spec.depth = d[i];
    spec.width = w[i];
    return spec;
  }
  static constexpr int d[4] = {2, 3, 3, 4};
  static constexpr int w[4] = {2, 2, 3, 2};
  spec.depth = d[i];
  spec.width = w[i];
  return spec;
}

std::string preset_table_json() {
  std::ostringstream out;
  out << "{\n";
  for (int ti = 0; ti < kTaskCount; ++ti) {
    const Task task = kAllTasks[ti];
    out << "  \"" << task_name(task) << "\": {";
    for (int li = 0; li < 4; ++li) {
      const Level level = static_cast<Level>(li);
      const ComplexitySpec s = preset(task, level);
      out << (li ? ", " : "") << "\"" << level_name(level) << "\": {";
      if (is_tree_task(task)) {
        out << "\"depth\": " << s.depth << ", \"width\": " << s.width;
      } else {
        out << "\"num_nodes\": " << s.num_nodes << ", \"max_links\": " << s.max_links
            << ", \"min_links\": " << s.min_links;
      }
      out << ", \"extra_links_per_node\": " << s.extra_links_per_node
          << ", \"num_distractors\": " << s.num_distractors << "}";
    }
    out << "}" << (ti + 1 < kTaskCount ? "," : "") << "\n";
  }
  out << "}\n";
  return out.str();
}

void add_extra_links(Dag& dag, int per_node, Rng& rng, EvalFn eval) {
  if (per_node <= 0) return;
  const std::size_t n = dag.nodes.size();
  bool changed = false;
  for (std::size_t i = 0; i < n; ++i) {
    DagNode& node = dag.nodes[i];
    if (node.is_leaf() || is_unary(*node.op)) continue;
    for (int k = 0; k < per_node; ++k) {
      // safe targets: anything that cannot reach this node (no cycle)
      std::vector<NodeId> safe;
      for (std::size_t t = 0; t < n; ++t) {
        if (t == i) continue;
        if (!reaches(dag, static_cast<NodeId>(t), static_cast<NodeId>(i)))
          safe.push_back(static_cast<NodeId>(t));
      }
      if (safe.empty()) continue;
      node.children.push_back(safe[rng.below(safe.size())]);
      changed = true;
    }
  }
  if (changed && eval) recompute_values(dag, eval);
}

std::vector<Dag> make_distractors(int count, Task task, const TaskConstraint& constraint,
                                  Rng& rng, EvalFn eval, int first_namespace) {
  std::vector<Dag> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const std::string suffix = std::to_string(first_namespace + i);
    if (is_tree_task(task)) {
      const int depth = static_cast<int>(rng.int_in(2, 3));
      // a handful of retries keeps arithmetic noise self-consistent
      Dag d;
      for (int attempt = 0;; ++attempt) {
        Rng sub(rng.next_u64());
        d = gen_tdag(depth, 2, constraint, sub, eval, suffix);
        const bool valid = !eval || dag_has_all_values(d);
        if (valid || attempt >= 16) break;
      }
      out.push_back(std::move(d));
    } else {
      const int nodes = static_cast<int>(rng.int_in(3, 5));
      const bool with_values = task == Task::MaxSumPath;
      out.push_back(gen_gdag(nodes, 2, 1,
                             with_values ? std::optional<ValueDist>(constraint.values)
                                         : std::nullopt,
                             rng, suffix));
    }
  }
  return out;
}

}  // namespace dagbench
