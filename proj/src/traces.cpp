#include "dagbench/traces.hpp"

#include <cmath>
#include <unordered_set>

#include "dagbench/numfmt.hpp"

namespace dagbench {

namespace {

const char* logic_op_word(Op op) { return op == Op::And ? "AND" : "OR"; }

std::string name_expr(const Dag& dag, const DagNode& n, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += sep;
    out += dag.nodes[n.children[i]].name;
  }
  return out;
}

std::string infix(const Dag& dag, const DagNode& n, const char* op_sym, bool values) {
  std::string out;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) {
      out += ' ';
      out += op_sym;
      out += ' ';
    }
    const DagNode& c = dag.nodes[n.children[i]];
    out += values ? fmt_number(num(*c.value)) : c.name;
  }
  return out;
}

std::string arith_steps(const Sample& sample) {
  const auto& s = std::get<ArithmeticSample>(sample.body);
  const Dag& dag = s.dag;
  std::string out;
  for (NodeId id : topo_order(dag)) {
    const DagNode& n = dag.nodes[id];
    if (n.is_leaf()) {
      out += n.name + " is " + fmt_number(num(*n.value)) + "\n";
      continue;
    }
    const DagNode& c0 = dag.nodes[n.children[0]];
    switch (*n.op) {
      case Op::Sqrt:
        out += n.name + " = sqrt " + c0.name + " = sqrt(" + fmt_number(num(*c0.value)) + ") = " +
               fmt_number(num(*n.value)) + "\n";
        break;
      case Op::Square:
        out += n.name + " = " + c0.name + "^2 = " + fmt_number(num(*c0.value)) + "^2 = " +
               fmt_number(num(*n.value)) + "\n";
        break;
      default: {
        const char* sym = *n.op == Op::Add ? "+" : *n.op == Op::Sub ? "-"
                          : *n.op == Op::Mul ? "*" : "/";
        out += n.name + " = " + infix(dag, n, sym, false) + " = " + infix(dag, n, sym, true) +
               " = " + fmt_number(num(*n.value)) + "\n";
        break;
      }
    }
  }
  out += "\nThus, the answer is <<<" + (s.answer ? fmt_number(*s.answer) : std::string("N/A")) +
         ">>>";
  return out;
}

std::string linear_steps(const Sample& sample) {
  const auto& s = std::get<LinearEqSample>(sample.body);
  const Dag& tree = s.tree;
  std::string out = "Let's first solve the coefficients of the linear equation.\n";
  for (NodeId id : topo_order(tree)) {
    const DagNode& n = tree.nodes[id];
    if (n.is_leaf()) {
      out += n.name + " is " + fmt_number(num(*n.value)) + "\n";
      continue;
    }
    const DagNode& c0 = tree.nodes[n.children[0]];
    switch (*n.op) {
      case Op::Sqrt:
        out += n.name + " = sqrt " + c0.name + " = sqrt(" + fmt_number(num(*c0.value)) + ") = " +
               fmt_number(num(*n.value)) + "\n";
        break;
      case Op::Square:
        out += n.name + " = " + c0.name + "^2 = " + fmt_number(num(*c0.value)) + "^2 = " +
               fmt_number(num(*n.value)) + "\n";
        break;
      default: {
        const char* sym = *n.op == Op::Add ? "+" : *n.op == Op::Sub ? "-"
                          : *n.op == Op::Mul ? "*" : "/";
        out += n.name + " = " + infix(tree, n, sym, false) + " = " + infix(tree, n, sym, true) +
               " = " + fmt_number(num(*n.value)) + "\n";
        break;
      }
    }
  }
  const std::string root = tree.root_node().name;
  const double a1 = s.coeffs[0], b1 = s.coeffs[1], c1 = s.coeffs[2];
  const double a2 = s.coeffs[3], b2 = s.coeffs[4], c2 = s.coeffs[5];
  out += "Thus, " + root + " = " + fmt_number(num(*tree.root_node().value)) + "\n";
  out += "\nNext, solve the linear equation:\n\n";
  out += fmt_number(a1) + " x + " + fmt_number(b1) + " y = " + fmt_number(c1) + "\n";
  out += fmt_number(a2) + " x + " + fmt_number(b2) + " y = " + fmt_number(c2) + "\n";

  const double cx = a1 * b2 - a2 * b1;   // combined x coefficient
  const double cc = c1 * b2 - c2 * b1;   // combined constant
  const std::string combined = fmt_number(cx) + "x = " + fmt_number(cc);
  out += "To eliminate 'y', multiply the first equation by " + fmt_coeff(b2) +
         " and the second equation by " + fmt_coeff(b1) +
         ". This makes the coefficients of 'y' equal. Subtracting the second equation from the "
         "first then gives: " + combined + ".\n";
  out += "From the equation " + combined + ", we can solve for x.\n";
  out += "Solving for x, we get x = " + fmt_number(s.x) + ".\n";
  // back-substitute into whichever equation has a usable y coefficient
  if (std::abs(b1) >= 1e-9) {
    out += "Substituting x = " + fmt_number(s.x) + " into the first original equation, we get: " +
           fmt_number(b1) + "y = " + fmt_number(c1 - a1 * s.x) + ", which gives y = " +
           fmt_number((c1 - a1 * s.x) / b1) + ".\n";
  } else {
    out += "Substituting x = " + fmt_number(s.x) + " into the second original equation, we get: " +
           fmt_number(b2) + "y = " + fmt_number(c2 - a2 * s.x) + ", which gives y = " +
           fmt_number((c2 - a2 * s.x) / b2) + ".\n";
  }
  out += "\n\nThus, the answer is <<<" + fmt_number(s.x) + " " + fmt_number(s.y) + ">>>";
  return out;
}

std::string bool_steps(const Sample& sample) {
  const auto& s = std::get<LogicSample>(sample.body);
  const Dag& dag = s.dag;
  Dag valued = dag;
  recompute_values(valued, &bool_eval_op);
  std::string out;
  for (NodeId id : topo_order(valued)) {
    const DagNode& n = valued.nodes[id];
    if (n.is_leaf()) {
      out += n.name + " is " + to_string(truth(*n.value)) + ".\n";
      continue;
    }
    std::string names, vals;
    if (*n.op == Op::Not) {
      names = "NOT " + valued.nodes[n.children[0]].name;
      vals = std::string("NOT ") + to_string(truth(*valued.nodes[n.children[0]].value));
    } else {
      const std::string sep = std::string(" ") + logic_op_word(*n.op) + " ";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) {
          names += sep;
          vals += sep;
        }
        names += valued.nodes[n.children[i]].name;
        vals += to_string(truth(*valued.nodes[n.children[i]].value));
      }
    }
    out += n.name + " = (" + names + ") = (" + vals + ") = " + to_string(truth(*n.value)) + ".\n";
  }
  out += "\nThus, the answer is <<<" + std::string(to_string(s.answer)) + ">>>";
  return out;
}

std::string deductive_steps(const Sample& sample) {
  const auto& s = std::get<LogicSample>(sample.body);
  Dag valued = s.dag;
  recompute_values(valued, &deductive_eval_op);
  std::string out;
  for (NodeId id : topo_order(valued)) {
    const DagNode& n = valued.nodes[id];
    if (n.is_leaf()) {
      out += n.name + " is " + to_string(truth(*n.value)) + ".\n";
      continue;
    }
    std::string names, vals;
    Truth3 premise;
    if (*n.op == Op::Not) {
      const DagNode& c = valued.nodes[n.children[0]];
      names = "NOT " + c.name;
      vals = std::string("NOT ") + to_string(truth(*c.value));
      premise = kleene_not(truth(*c.value));
    } else {
      const std::string sep = std::string(" ") + logic_op_word(*n.op) + " ";
      premise = truth(*valued.nodes[n.children[0]].value);
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        const Truth3 cv = truth(*valued.nodes[n.children[i]].value);
        if (i) {
          names += sep;
          vals += sep;
          premise = *n.op == Op::And ? kleene_and(premise, cv) : kleene_or(premise, cv);
        }
        names += valued.nodes[n.children[i]].name;
        vals += to_string(cv);
      }
    }
    out += "(" + names + ") = (" + vals + ") -> " + n.name + ".\n";
    if (premise == Truth3::True) {
      out += "The premise (" + vals + ") is True, thus, the value of " + n.name +
             " is deduced as True.\n";
    } else if (premise == Truth3::False) {
      out += "The premise (" + vals + ") is False, thus, the value of " + n.name +
             " cannot be deduced and is set to N/A.\n";
    } else {
      out += "The value of " + n.name + " cannot be deduced, and is set to N/A.\n";
    }
  }
  out += "\nThus, the answer is <<<" + std::string(to_string(s.answer)) + ">>>";
  return out;
}

std::string abductive_steps(const Sample& sample) {
  const auto& s = std::get<LogicSample>(sample.body);
  const Dag& dag = s.dag;
  const std::vector<NodeId> path = abduction_path(dag, s.target);
  std::string out;
  Truth3 value = s.given_root;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const DagNode& node = dag.nodes[path[i]];
    const DagNode& next = dag.nodes[path[i + 1]];
    std::string expr;
    if (*node.op == Op::Not) {
      expr = "NOT " + dag.nodes[node.children[0]].name;
    } else {
      const std::string sep = std::string(" ") + logic_op_word(*node.op) + " ";
      expr = name_expr(dag, node, sep.c_str());
    }
    out += "(" + expr + ") -> " + node.name + " = " + to_string(value) + ".\n";
    Truth3 next_value;
    if (value == Truth3::False) {
      switch (*node.op) {
        case Op::Or:
          next_value = Truth3::False;
          out += "Given " + node.name + " is False, the value of premise (" + expr +
                 ") is False, thus, the value of " + next.name + " is abduced as False.\n";
          break;
        case Op::Not:
          next_value = Truth3::True;
          out += "Given " + node.name + " is False, the value of premise (" + expr +
                 ") is False, thus, the value of " + next.name + " is abduced as True.\n";
          break;
        default:
          next_value = Truth3::NA;
          out += "Given " + node.name + " is False, the value of premise (" + expr +
                 ") is False, however, the value of " + next.name +
                 " cannot be isolated and is set to N/A.\n";
          break;
      }
    } else if (value == Truth3::True) {
      next_value = Truth3::NA;
      out += "Given " + node.name + " is True, the value of " + next.name +
             " cannot be abduced and is set to N/A.\n";
    } else {
      next_value = Truth3::NA;
      out += "Since " + node.name + " is N/A, the value of " + next.name +
             " cannot be abduced and is set to N/A.\n";
    }
    value = next_value;
  }
  out += "\nThus, the answer is <<<" + std::string(to_string(s.answer)) + ">>>";
  return out;
}

std::string reach_steps(const Sample& sample) {
  const auto& s = std::get<ReachSample>(sample.body);
  const Dag& dag = s.dag;
  std::string out = "Starting the search process from node " + dag.nodes[s.src].name +
                    " with the goal to reach node " + dag.nodes[s.dst].name + ".\n";
  std::vector<bool> visited(dag.nodes.size(), false);
  bool found = false;
  auto dfs = [&](auto&& self, NodeId u) -> void {
    visited[u] = true;
    out += "Checking node " + dag.nodes[u].name + ".\n";
    if (u == s.dst) {
      out += "Reached the goal node " + dag.nodes[u].name + ".\n";
      found = true;
      return;
    }
    for (NodeId c : dag.nodes[u].children) {
      if (found) return;
      if (!visited[c]) self(self, c);
    }
    if (!found) out += "Node " + dag.nodes[u].name + " has no unvisited children. Moving back.\n";
  };
  dfs(dfs, s.src);
  if (!found)
    out += "Exhausted all possible paths without reaching node " + dag.nodes[s.dst].name + ".\n";
  out += "\nThus, the answer is <<<" + std::string(s.answer ? "True" : "False") + ">>>";
  return out;
}

std::string maxsum_steps(const Sample& sample) {
  const auto& s = std::get<MaxSumSample>(sample.body);
  const Dag& dag = s.dag;
  std::string out = "Starting the search for the maximum sum path from node " +
                    dag.nodes[s.src].name + " to node " + dag.nodes[s.dst].name + ".\n";
  std::optional<long long> best;
  auto dfs = [&](auto&& self, NodeId u, long long sum) -> void {
    sum += std::llround(num(*dag.nodes[u].value));
    out += "Reaching node " + dag.nodes[u].name + " with current sum of " + std::to_string(sum) +
           ".\n";
    if (u == s.dst) {
      out += "Found a path to node " + dag.nodes[u].name + " with sum " + std::to_string(sum) +
             ". Moving back.\n";
      if (!best || sum > *best) best = sum;
      return;
    }
    const DagNode& n = dag.nodes[u];
    if (n.children.empty()) {
      out += "Node " + n.name + " has no children. Moving back.\n";
      return;
    }
    std::string kids;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) kids += ", ";
      kids += dag.nodes[n.children[i]].name;
    }
    out += "Now, we explore the children of node " + n.name + ": " + kids + ".\n";
    for (NodeId c : n.children) self(self, c, sum);
  };
  dfs(dfs, s.src, 0);
  if (best) {
    out += "The maximum sum path from node " + dag.nodes[s.src].name + " to node " +
           dag.nodes[s.dst].name + " has sum " + std::to_string(*best) + ".\n";
    out += "\nThus, the answer is <<<" + std::to_string(*best) + ">>>";
  } else {
    out += "There is no path from node " + dag.nodes[s.src].name + " to node " +
           dag.nodes[s.dst].name + ".\n";
    out += "\nThus, the answer is <<<N/A>>>";
  }
  return out;
}

}  // namespace

TraceRecord render_trace(const Sample& sample) {
  TraceRecord rec;
  rec.input = sample.prompt;
  switch (sample.task) {
    case Task::Arithmetic: rec.steps = arith_steps(sample); break;
    case Task::LinearEquation: rec.steps = linear_steps(sample); break;
    case Task::BooleanLogic: rec.steps = bool_steps(sample); break;
    case Task::DeductiveLogic: rec.steps = deductive_steps(sample); break;
    case Task::AbductiveLogic: rec.steps = abductive_steps(sample); break;
    case Task::Reachability: rec.steps = reach_steps(sample); break;
    default: rec.steps = maxsum_steps(sample); break;
  }
  return rec;
}

std::vector<TraceMix> default_trace_mix(Task task, int per_config) {
  std::vector<TraceMix> mix;
  if (is_tree_task(task)) {
    const int base_width = 2;
    ComplexitySpec a;
    a.depth = 3;
    a.width = base_width;
    ComplexitySpec b = a;
    b.extra_links_per_node = 1;
    ComplexitySpec c = b;
    c.num_distractors = 1;
    ComplexitySpec d = a;
    d.width = 3;
    for (const ComplexitySpec& spec : {a, b, c, d}) mix.push_back({spec, per_config});
  } else {
    ComplexitySpec a;
    a.num_nodes = 7;
    a.max_links = 3;
    ComplexitySpec b;
    b.num_nodes = 10;
    b.max_links = 4;
    for (const ComplexitySpec& spec : {a, b}) mix.push_back({spec, per_config});
  }
  return mix;
}

std::vector<TraceRecord> gen_training_set(Task task, const std::vector<TraceMix>& mix,
                                          std::uint64_t seed) {
  std::vector<TraceRecord> records;
  std::unordered_set<Digest128, Digest128Hash> seen;
  std::uint32_t index = 0;  // shared across mix parts so substreams never repeat
  for (const TraceMix& part : mix) {
    int produced = 0;
    int attempts = 0;
    const int attempt_budget = part.count * 64;
    while (produced < part.count) {
      if (++attempts > attempt_budget)
        throw GenerationError("training-set deduplication budget exhausted");
      const Sample sample = generate_sample_with_spec(task, part.spec, Level::D1,
                                                      Order::Topological, seed, index++, {});
      if (!seen.insert(fingerprint(sample.primary_dag())).second) continue;
      records.push_back(render_trace(sample));
      ++produced;
    }
  }
  return records;
}

}  // namespace dagbench
