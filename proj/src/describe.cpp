#include "dagbench/describe.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "dagbench/numfmt.hpp"
#include "dagbench/templates.hpp"

namespace dagbench {

namespace {

std::string replace_slot(std::string text, std::string_view slot, std::string_view value) {
  for (std::size_t pos = text.find(slot); pos != std::string::npos; pos = text.find(slot, pos)) {
    text.replace(pos, slot.size(), value);
    pos += value.size();
  }
  return text;
}

std::string join_names(const Dag& dag, const std::vector<NodeId>& ids, const char* sep,
                       std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < ids.size(); ++i) {
    if (i > from) out += sep;
    out += dag.nodes[ids[i]].name;
  }
  return out;
}

std::string arith_sentence(const Dag& dag, const DagNode& n) {
  if (n.is_leaf()) return "The value of " + n.name + " is " + fmt_int(num(*n.value)) + ".";
  const std::string head = n.name + " gets its value by ";
  switch (*n.op) {
    case Op::Add:
      return head + "adding together the value of " + join_names(dag, n.children, " and ") + ".";
    case Op::Mul:
      return head + "multiplying together the value of " + join_names(dag, n.children, " and ") +
             ".";
    case Op::Sub:
      if (n.children.size() == 2)
        return head + "subtracting the value of " + dag.nodes[n.children[1]].name +
               " from the value of " + dag.nodes[n.children[0]].name + ".";
      return head + "subtracting the sum of the values of " +
             join_names(dag, n.children, " and ", 1) + " from the value of " +
             dag.nodes[n.children[0]].name + ".";
    case Op::Div:
      return head + "dividing the value of " + dag.nodes[n.children[0]].name + " by those of " +
             join_names(dag, n.children, " and ", 1) + ".";
    case Op::Sqrt:
      return head + "taking the square root of the value that " + dag.nodes[n.children[0]].name +
             " has.";
    case Op::Square:
      return head + "squaring the value that " + dag.nodes[n.children[0]].name + " has.";
    default:
      throw IntegrityError("logic op in arithmetic description");
  }
}

std::string bool_sentence(const Dag& dag, const DagNode& n) {
  if (n.is_leaf()) return n.name + " is " + to_string(truth(*n.value)) + ".";
  if (*n.op == Op::Not)
    return "The value of " + n.name + " equals to (NOT " + dag.nodes[n.children[0]].name + ").";
  const char* sep = *n.op == Op::And ? " AND " : " OR ";
  return "The value of " + n.name + " equals to (" + join_names(dag, n.children, sep) + ").";
}

std::string rule_sentence(const Dag& dag, const DagNode& n) {
  if (*n.op == Op::Not)
    return "(NOT " + dag.nodes[n.children[0]].name + ") -> " + n.name + ".";
  const char* sep = *n.op == Op::And ? " and " : " or ";
  return "(" + join_names(dag, n.children, sep) + ") -> " + n.name + ".";
}

std::string points_to_sentence(const Dag& dag, const DagNode& n) {
  if (n.children.empty()) return n.name + " points to: (None).";
  return n.name + " points to: (" + join_names(dag, n.children, ", ") + ").";
}

}  // namespace

std::vector<DescUnit> describe_nodes(const Dag& dag, Task task) {
  std::vector<DescUnit> units;
  for (NodeId id : topo_order(dag)) {
    const DagNode& n = dag.nodes[id];
    switch (task) {
      case Task::Arithmetic:
      case Task::LinearEquation:
        units.push_back({id, arith_sentence(dag, n)});
        break;
      case Task::BooleanLogic:
        units.push_back({id, bool_sentence(dag, n)});
        break;
      case Task::DeductiveLogic:
        if (n.is_leaf())
          units.push_back({id, n.name + " is " + std::string(to_string(truth(*n.value))) + "."});
        else
          units.push_back({id, rule_sentence(dag, n)});
        break;
      case Task::AbductiveLogic:
        if (!n.is_leaf()) units.push_back({id, rule_sentence(dag, n)});
        break;
      case Task::Reachability:
      case Task::MaxSumPath:
        units.push_back({id, points_to_sentence(dag, n)});
        break;
    }
  }
  return units;
}

std::vector<DescUnit> describe_values(const Dag& dag) {
  std::vector<DescUnit> units;
  for (NodeId id : topo_order(dag))
    units.push_back({id, "The value of " + dag.nodes[id].name + " is " +
                             fmt_int(num(*dag.nodes[id].value))});
  return units;
}

std::vector<DescUnit> order_units(std::vector<DescUnit> units, Order order, Rng& rng) {
  switch (order) {
    case Order::Topological:
      return units;
    case Order::Reversed:
      std::reverse(units.begin(), units.end());
      return units;
    default:
      rng.shuffle(units);
      return units;
  }
}

namespace {

void splice_units(std::vector<std::string>& lines, const std::vector<DescUnit>& extra, Rng& rng) {
  for (const DescUnit& u : extra) {
    const std::size_t pos = rng.below(lines.size() + 1);
    lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(pos), u.text);
  }
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += lines[i];
  }
  return out;
}

std::vector<std::string> ordered_lines(const Dag& dag, Task task, Order order, Rng& rng) {
  std::vector<std::string> lines;
  for (DescUnit& u : order_units(describe_nodes(dag, task), order, rng))
    lines.push_back(std::move(u.text));
  return lines;
}

std::string equation_line(const LinearEqSample& s, int eq) {
  const int base = eq * 3;
  std::string parts[3];
  for (int i = 0; i < 3; ++i) {
    const int slot = base + i;
    parts[i] = slot == s.substituted_slot ? s.tree.root_node().name
                                          : fmt_int(s.coeffs[static_cast<std::size_t>(slot)]);
  }
  return parts[0] + " x + " + parts[1] + " y = " + parts[2];
}

}  // namespace

std::string render_prompt(const Sample& sample, Rng& rng) {
  const Task task = sample.task;
  const Dag& dag = sample.primary_dag();

  std::vector<std::string> lines = ordered_lines(dag, task, sample.order, rng);
  std::vector<std::string> value_lines;
  if (task == Task::MaxSumPath) {
    for (DescUnit& u : order_units(describe_values(dag), sample.order, rng))
      value_lines.push_back(std::move(u.text));
  }
  for (const Dag& d : sample.distractors) {
    splice_units(lines, describe_nodes(d, task), rng);
    if (task == Task::MaxSumPath) splice_units(value_lines, describe_values(d), rng);
  }

  switch (task) {
    case Task::Arithmetic:
      return tpl::kArithmeticHeader + join_lines(lines) +
             replace_slot(tpl::kArithmeticTail, "{root}", dag.root_node().name);
    case Task::LinearEquation: {
      const auto& s = std::get<LinearEqSample>(sample.body);
      return tpl::kLinearHeader + equation_line(s, 0) + "\n" + equation_line(s, 1) +
             replace_slot(tpl::kLinearCalc, "{root}", dag.root_node().name) + join_lines(lines) +
             tpl::kLinearTail;
    }
    case Task::BooleanLogic:
      return tpl::kBooleanHeader + join_lines(lines) +
             replace_slot(tpl::kBooleanTail, "{root}", dag.root_node().name);
    case Task::DeductiveLogic:
      return tpl::kDeductiveHeader + join_lines(lines) +
             replace_slot(tpl::kDeductiveTail, "{root}", dag.root_node().name);
    case Task::AbductiveLogic: {
      const auto& s = std::get<LogicSample>(sample.body);
      std::string question = replace_slot(tpl::kAbductiveQuestion, "{root}", dag.root_node().name);
      question = replace_slot(std::move(question), "{value}", to_string(s.given_root));
      question = replace_slot(std::move(question), "{leaf}", dag.nodes[s.target].name);
      return tpl::kAbductiveHeader + join_lines(lines) + "\n" + question + tpl::kAbductiveTail;
    }
    case Task::Reachability: {
      const auto& s = std::get<ReachSample>(sample.body);
      std::string question = replace_slot(tpl::kReachabilityQuestion, "{dst}",
                                          dag.nodes[s.dst].name);
      question = replace_slot(std::move(question), "{src}", dag.nodes[s.src].name);
      return tpl::kReachabilityHeader + join_lines(lines) + "\n" + question +
             tpl::kReachabilityTail;
    }
    default: {
      const auto& s = std::get<MaxSumSample>(sample.body);
      std::string question = replace_slot(tpl::kMaxSumQuestion, "{src}", dag.nodes[s.src].name);
      question = replace_slot(std::move(question), "{dst}", dag.nodes[s.dst].name);
      return tpl::kMaxSumHeader + join_lines(lines) + "\n" + join_lines(value_lines) + "\n" +
             question + tpl::kMaxSumTail;
    }
  }
}

// ---------------------------------------------------------------------------
// template parser (round-trip check support)

namespace {

struct DagBuilder {
  Dag dag;
  std::unordered_map<std::string, NodeId> ids;

  NodeId get(const std::string& name) {
    const auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    DagNode n;
    n.id = static_cast<NodeId>(dag.nodes.size());
    n.name = name;
    ids.emplace(name, n.id);
    dag.nodes.push_back(std::move(n));
    return static_cast<NodeId>(dag.nodes.size() - 1);
  }

  void finish_tree() {
    dag.kind = DagKind::Tree;
    std::vector<int> parents(dag.nodes.size(), 0);
    for (const DagNode& n : dag.nodes)
      for (NodeId c : n.children) ++parents[c];
    for (const DagNode& n : dag.nodes)
      if (parents[n.id] == 0) dag.root = n.id;
    // derive depth (longest chain) and width (max n-ary fan-out)
    std::vector<int> h(dag.nodes.size(), 1);
    int depth = 1, width = 1;
    for (NodeId id : topo_order(dag)) {
      const DagNode& n = dag.nodes[id];
      for (NodeId c : n.children) h[id] = std::max(h[id], h[c] + 1);
      depth = std::max(depth, h[id]);
      if (n.op && !is_unary(*n.op)) width = std::max(width, static_cast<int>(n.children.size()));
    }
    dag.depth = depth;
    dag.width = width;
  }
};

bool consume_prefix(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

bool consume_suffix(std::string_view& s, std::string_view suffix) {
  if (s.size() < suffix.size() || s.substr(s.size() - suffix.size()) != suffix) return false;
  s.remove_suffix(suffix.size());
  return true;
}

std::vector<std::string> split_on(std::string_view s, std::string_view sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + sep.size();
  }
}

Truth3 parse_truth_word(std::string_view w) {
  if (w == "True") return Truth3::True;
  if (w == "False") return Truth3::False;
  if (w == "N/A") return Truth3::NA;
  throw IntegrityError("bad truth literal in prompt");
}

void parse_arith_line(DagBuilder& b, std::string_view line) {
  std::string_view s = line;
  if (consume_prefix(s, "The value of ")) {
    const std::size_t is_pos = s.find(" is ");
    const std::string name(s.substr(0, is_pos));
    std::string_view rest = s.substr(is_pos + 4);
    consume_suffix(rest, ".");
    b.dag.nodes[b.get(name)].value = std::stod(std::string(rest));
    return;
  }
  const std::size_t by = s.find(" gets its value by ");
  if (by == std::string_view::npos) throw IntegrityError("unparsable arithmetic line");
  const std::string name(s.substr(0, by));
  std::string_view rest = s.substr(by + 19);
  consume_suffix(rest, ".");
  const NodeId id = b.get(name);
  Op op;
  std::vector<std::string> children;
  if (consume_prefix(rest, "adding together the value of ")) {
    op = Op::Add;
    children = split_on(rest, " and ");
  } else if (consume_prefix(rest, "multiplying together the value of ")) {
    op = Op::Mul;
    children = split_on(rest, " and ");
  } else if (consume_prefix(rest, "subtracting the sum of the values of ")) {
    op = Op::Sub;
    const auto parts = split_on(rest, " from the value of ");
    children.push_back(parts[1]);
    for (auto& c : split_on(parts[0], " and ")) children.push_back(std::move(c));
  } else if (consume_prefix(rest, "subtracting the value of ")) {
    op = Op::Sub;
    const auto parts = split_on(rest, " from the value of ");
    children = {parts[1], parts[0]};
  } else if (consume_prefix(rest, "dividing the value of ")) {
    op = Op::Div;
    const auto parts = split_on(rest, " by those of ");
    children.push_back(parts[0]);
    for (auto& c : split_on(parts[1], " and ")) children.push_back(std::move(c));
  } else if (consume_prefix(rest, "taking the square root of the value that ")) {
    op = Op::Sqrt;
    consume_suffix(rest, " has");
    children.emplace_back(rest);
  } else if (consume_prefix(rest, "squaring the value that ")) {
    op = Op::Square;
    consume_suffix(rest, " has");
    children.emplace_back(rest);
  } else {
    throw IntegrityError("unknown arithmetic phrase");
  }
  std::vector<NodeId> child_ids;
  for (const std::string& c : children) child_ids.push_back(b.get(c));
  b.dag.nodes[id].op = op;
  b.dag.nodes[id].children = std::move(child_ids);
}

void parse_bool_line(DagBuilder& b, std::string_view line) {
  std::string_view s = line;
  if (consume_prefix(s, "The value of ")) {
    const std::size_t eq = s.find(" equals to (");
    const std::string name(s.substr(0, eq));
    std::string_view expr = s.substr(eq + 12);
    consume_suffix(expr, ").");
    const NodeId id = b.get(name);
    std::string_view inner = expr;
    if (consume_prefix(inner, "NOT ")) {
      const NodeId child = b.get(std::string(inner));
      b.dag.nodes[id].op = Op::Not;
      b.dag.nodes[id].children.push_back(child);
      return;
    }
    const bool conj = expr.find(" AND ") != std::string_view::npos;
    std::vector<NodeId> child_ids;
    for (const std::string& c : split_on(expr, conj ? " AND " : " OR "))
      child_ids.push_back(b.get(c));
    b.dag.nodes[id].op = conj ? Op::And : Op::Or;
    b.dag.nodes[id].children = std::move(child_ids);
    return;
  }
  const std::size_t is_pos = s.find(" is ");
  const std::string name(s.substr(0, is_pos));
  std::string_view rest = s.substr(is_pos + 4);
  consume_suffix(rest, ".");
  b.dag.nodes[b.get(name)].value = parse_truth_word(rest);
}

void parse_rule_line(DagBuilder& b, std::string_view line) {
  std::string_view s = line;
  if (!consume_prefix(s, "(")) {
    // leaf sentence, deductive prompts only
    const std::size_t is_pos = s.find(" is ");
    const std::string name(s.substr(0, is_pos));
    std::string_view rest = s.substr(is_pos + 4);
    consume_suffix(rest, ".");
    b.dag.nodes[b.get(name)].value = parse_truth_word(rest);
    return;
  }
  const std::size_t close = s.find(") -> ");
  std::string_view expr = s.substr(0, close);
  std::string_view rest = s.substr(close + 5);
  consume_suffix(rest, ".");
  const NodeId id = b.get(std::string(rest));
  std::string_view inner = expr;
  if (consume_prefix(inner, "NOT ")) {
    const NodeId child = b.get(std::string(inner));
    b.dag.nodes[id].op = Op::Not;
    b.dag.nodes[id].children.push_back(child);
    return;
  }
  const bool conj = expr.find(" and ") != std::string_view::npos;
  std::vector<NodeId> child_ids;
  for (const std::string& c : split_on(expr, conj ? " and " : " or "))
    child_ids.push_back(b.get(c));
  b.dag.nodes[id].op = conj ? Op::And : Op::Or;
  b.dag.nodes[id].children = std::move(child_ids);
}

void parse_graph_line(DagBuilder& b, std::string_view line) {
  std::string_view s = line;
  if (consume_prefix(s, "The value of ")) {  // max-sum value line, no period
    const std::size_t is_pos = s.find(" is ");
    const std::string name(s.substr(0, is_pos));
    b.dag.nodes[b.get(name)].value = std::stod(std::string(s.substr(is_pos + 4)));
    return;
  }
  const std::size_t pt = s.find(" points to: (");
  const std::string name(s.substr(0, pt));
  std::string_view rest = s.substr(pt + 13);
  consume_suffix(rest, ").");
  const NodeId id = b.get(name);
  if (rest == "None") return;
  std::vector<NodeId> child_ids;
  for (const std::string& c : split_on(rest, ", ")) child_ids.push_back(b.get(c));
  b.dag.nodes[id].children = std::move(child_ids);
}

bool is_question_line(Task task, std::string_view line) {
  switch (task) {
    case Task::Arithmetic:
    case Task::BooleanLogic:
      return line.rfind("Compute the result of ", 0) == 0;
    case Task::DeductiveLogic:
    case Task::AbductiveLogic:
      return line.rfind("The symbol '->'", 0) == 0 || line.rfind("Given ", 0) == 0;
    case Task::Reachability:
      return line.rfind("Can ", 0) == 0 || line.rfind("Respond with", 0) == 0;
    case Task::MaxSumPath:
      return line.rfind("What's the maximum sum path", 0) == 0 ||
             line.rfind("For exmaple", 0) == 0;
    default:
      return false;
  }
}

}  // namespace

Dag parse_prompt(const std::string& prompt, Task task) {
  std::istringstream in(prompt);
  std::string line;
  if (!std::getline(in, line)) throw IntegrityError("empty prompt");

  DagBuilder b;
  if (task == Task::LinearEquation) {
    // skip the equation block, then parse the coefficient tree
    bool in_tree = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.rfind("Determine the values", 0) == 0) break;
      if (line.rfind("The calculation of ", 0) == 0) {
        in_tree = true;
        continue;
      }
      if (in_tree) parse_arith_line(b, line);
    }
    b.finish_tree();
    return b.dag;
  }

  while (std::getline(in, line)) {
    if (line.empty() || is_question_line(task, line)) continue;
    switch (task) {
      case Task::Arithmetic: parse_arith_line(b, line); break;
      case Task::BooleanLogic: parse_bool_line(b, line); break;
      case Task::DeductiveLogic:
      case Task::AbductiveLogic: parse_rule_line(b, line); break;
      default: parse_graph_line(b, line); break;
    }
  }
  if (is_tree_task(task)) {
    b.finish_tree();
  } else {
    b.dag.kind = DagKind::General;
  }
  return b.dag;
}

}  // namespace dagbench
