#include "dagbench/dag.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dagbench/numfmt.hpp"

namespace dagbench {

const char* to_string(Truth3 v) {
  switch (v) {
    case Truth3::False: return "False";
    case Truth3::True: return "True";
    default: return "N/A";
  }
}

Truth3 kleene_not(Truth3 v) {
  if (v == Truth3::NA) return Truth3::NA;
  return v == Truth3::True ? Truth3::False : Truth3::True;
}

Truth3 kleene_and(Truth3 a, Truth3 b) {
  if (a == Truth3::False || b == Truth3::False) return Truth3::False;
  if (a == Truth3::True && b == Truth3::True) return Truth3::True;
  return Truth3::NA;
}

Truth3 kleene_or(Truth3 a, Truth3 b) {
  if (a == Truth3::True || b == Truth3::True) return Truth3::True;
  if (a == Truth3::False && b == Truth3::False) return Truth3::False;
  return Truth3::NA;
}

const char* op_tag(Op op) {
  switch (op) {
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Sqrt: return "sqrt";
    case Op::Square: return "square";
    case Op::And: return "and";
    case Op::Or: return "or";
    default: return "not";
  }
}

std::optional<Op> op_from_tag(std::string_view tag) {
  static const std::pair<std::string_view, Op> table[] = {
      {"add", Op::Add}, {"sub", Op::Sub},       {"mul", Op::Mul},
      {"div", Op::Div}, {"sqrt", Op::Sqrt},     {"square", Op::Square},
      {"and", Op::And}, {"or", Op::Or},         {"not", Op::Not},
  };
  for (const auto& [t, op] : table)
    if (t == tag) return op;
  return std::nullopt;
}

Value ValueDist::draw(Rng& rng) const {
  if (kind == Kind::Truth) return rng.coin() ? Truth3::True : Truth3::False;
  return static_cast<double>(rng.int_in(lo, hi));
}

std::string node_name(std::size_t index, std::string_view suffix) {
  std::size_t width = 3, space = 26 * 26 * 26;
  while (index >= space) {  // "zzz" is followed by "aaaa"
    index -= space;
    ++width;
    space *= 26;
  }
  std::string s(width, 'a');
  for (std::size_t i = width; i-- > 0;) {
    s[i] = static_cast<char>('a' + index % 26);
    index /= 26;
  }
  s += suffix;
  return s;
}

namespace {

std::optional<Value> compute_node_value(const Dag& dag, const DagNode& n, EvalFn eval) {
  std::vector<Value> child_values;
  child_values.reserve(n.children.size());
  for (NodeId c : n.children) {
    if (!dag.nodes[c].value) return std::nullopt;
    child_values.push_back(*dag.nodes[c].value);
  }
  return eval(*n.op, child_values);
}

NodeId build_subtree(Dag& dag, int depth, int width, const TaskConstraint& constraint, Rng& rng,
                     EvalFn eval, std::string_view suffix) {
  DagNode n;
  if (depth == 1) {
    n.value = constraint.values.draw(rng);
  } else {
    const Op op = constraint.ops[rng.below(constraint.ops.size())];
    const int n_children = is_unary(op) ? 1 : width;
    n.op = op;
    for (int i = 0; i < n_children; ++i)
      n.children.push_back(build_subtree(dag, depth - 1, width, constraint, rng, eval, suffix));
  }
  n.id = static_cast<NodeId>(dag.nodes.size());
  n.name = node_name(n.id, suffix);
  dag.nodes.push_back(std::move(n));
  DagNode& placed = dag.nodes.back();
  if (placed.op && eval) placed.value = compute_node_value(dag, placed, eval);
  return placed.id;
}

}  // namespace

Dag gen_tdag(int depth, int width, const TaskConstraint& constraint, Rng& rng, EvalFn eval,
             std::string_view name_suffix) {
  if (depth < 1 || width < 1) throw GenerationError("tree depth and width must be >= 1");
  if (constraint.ops.empty() && depth > 1) throw GenerationError("empty operation set");
  if (constraint.values.count() <= 0) throw GenerationError("empty value set");
  Dag dag;
  dag.kind = DagKind::Tree;
  dag.depth = depth;
  dag.width = width;
  dag.root = build_subtree(dag, depth, width, constraint, rng, eval, name_suffix);
  return dag;
}

Dag gen_gdag(int num_nodes, int max_links, int min_links, const std::optional<ValueDist>& values,
             Rng& rng, std::string_view name_suffix) {
  if (num_nodes < 2) throw GenerationError("general DAG needs at least 2 nodes");
  if (min_links < 1 || min_links > max_links) throw GenerationError("bad link range");

  Dag dag;
  dag.kind = DagKind::General;
  dag.nodes.resize(static_cast<std::size_t>(num_nodes));
  for (int i = 0; i < num_nodes; ++i) {
    DagNode& n = dag.nodes[static_cast<std::size_t>(i)];
    n.id = static_cast<NodeId>(i);
    n.name = node_name(static_cast<std::size_t>(i), name_suffix);
    if (values) n.value = values->draw(rng);
  }

  // Links may only point forward in a fixed random permutation, which makes
  // cycles impossible.
  std::vector<NodeId> perm(static_cast<std::size_t>(num_nodes));
  for (int i = 0; i < num_nodes; ++i) perm[static_cast<std::size_t>(i)] = static_cast<NodeId>(i);
  rng.shuffle(perm);
  std::vector<int> pos(static_cast<std::size_t>(num_nodes));
  for (int p = 0; p < num_nodes; ++p) pos[perm[static_cast<std::size_t>(p)]] = p;

  for (int i = 0; i < num_nodes; ++i) {
    const int avail = num_nodes - 1 - pos[static_cast<std::size_t>(i)];
    const int want = static_cast<int>(rng.int_in(min_links, max_links));
    const int count = std::min(want, avail);
    if (count <= 0) continue;  // permitted sink
    std::vector<NodeId> targets;
    targets.reserve(static_cast<std::size_t>(avail));
    for (int p = pos[static_cast<std::size_t>(i)] + 1; p < num_nodes; ++p)
      targets.push_back(perm[static_cast<std::size_t>(p)]);
    // partial Fisher-Yates: the first `count` slots become the children
    for (int j = 0; j < count; ++j) {
      const std::size_t k = static_cast<std::size_t>(j) + rng.below(targets.size() - static_cast<std::size_t>(j));
      std::swap(targets[static_cast<std::size_t>(j)], targets[k]);
    }
    targets.resize(static_cast<std::size_t>(count));
    dag.nodes[static_cast<std::size_t>(i)].children = std::move(targets);
  }
  return dag;
}

void recompute_values(Dag& dag, EvalFn eval) {
  for (NodeId id : topo_order(dag)) {
    DagNode& n = dag.nodes[id];
    if (n.is_leaf()) continue;
    n.value = compute_node_value(dag, n, eval);
  }
}

void redraw_leaf_values(Dag& dag, const ValueDist& values, Rng& rng) {
  for (DagNode& n : dag.nodes)
    if (n.is_leaf()) n.value = values.draw(rng);
}

bool dag_has_all_values(const Dag& dag) {
  for (const DagNode& n : dag.nodes)
    if (!n.value) return false;
  return true;
}

std::vector<NodeId> topo_order(const Dag& dag) {
  const std::size_t n = dag.nodes.size();
  std::vector<std::size_t> pending(n);           // child slots not yet emitted
  std::vector<std::vector<NodeId>> parents(n);   // one entry per edge occurrence
  for (const DagNode& node : dag.nodes) {
    pending[node.id] = node.children.size();
    for (NodeId c : node.children) {
      if (c >= n) throw IntegrityError("child id out of range");
      parents[c].push_back(node.id);
    }
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const DagNode& node : dag.nodes)
    if (pending[node.id] == 0) ready.push(node.id);

  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (NodeId p : parents[id])
      if (--pending[p] == 0) ready.push(p);
  }
  if (order.size() != n) throw IntegrityError("cycle detected in DAG");
  return order;
}

bool has_cycle(const Dag& dag) {
  try {
    topo_order(dag);
    return false;
  } catch (const IntegrityError&) {
    return true;
  }
}

bool reaches(const Dag& dag, NodeId from, NodeId to) {
  std::vector<bool> seen(dag.nodes.size(), false);
  std::vector<NodeId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    for (NodeId c : dag.nodes[u].children)
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
  }
  return false;
}

namespace {

// MurmurHash3 x64 128 (Austin Appleby, public domain).
inline std::uint64_t rotl64(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

inline std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

Digest128 murmur3_x64_128(const void* key, std::size_t len, std::uint32_t seed) {
  const auto* data = static_cast<const std::uint8_t*>(key);
  const std::size_t nblocks = len / 16;

  std::uint64_t h1 = seed, h2 = seed;
  const std::uint64_t c1 = 0x87c37b91114253d5ULL;
  const std::uint64_t c2 = 0x4cf5ad432745937fULL;

  for (std::size_t i = 0; i < nblocks; ++i) {
    std::uint64_t k1, k2;
    std::memcpy(&k1, data + i * 16, 8);
    std::memcpy(&k2, data + i * 16 + 8, 8);
    k1 *= c1; k1 = rotl64(k1, 31); k1 *= c2; h1 ^= k1;
    h1 = rotl64(h1, 27); h1 += h2; h1 = h1 * 5 + 0x52dce729;
    k2 *= c2; k2 = rotl64(k2, 33); k2 *= c1; h2 ^= k2;
    h2 = rotl64(h2, 31); h2 += h1; h2 = h2 * 5 + 0x38495ab5;
  }

  const std::uint8_t* tail = data + nblocks * 16;
  std::uint64_t k1 = 0, k2 = 0;
  switch (len & 15) {
    case 15: k2 ^= static_cast<std::uint64_t>(tail[14]) << 48; [[fallthrough]];
    case 14: k2 ^= static_cast<std::uint64_t>(tail[13]) << 40; [[fallthrough]];
    case 13: k2 ^= static_cast<std::uint64_t>(tail[12]) << 32; [[fallthrough]];
    case 12: k2 ^= static_cast<std::uint64_t>(tail[11]) << 24; [[fallthrough]];
    case 11: k2 ^= static_cast<std::uint64_t>(tail[10]) << 16; [[fallthrough]];
    case 10: k2 ^= static_cast<std::uint64_t>(tail[9]) << 8; [[fallthrough]];
    case 9:
      k2 ^= static_cast<std::uint64_t>(tail[8]);
      k2 *= c2; k2 = rotl64(k2, 33); k2 *= c1; h2 ^= k2;
      [[fallthrough]];
    case 8: k1 ^= static_cast<std::uint64_t>(tail[7]) << 56; [[fallthrough]];
    case 7: k1 ^= static_cast<std::uint64_t>(tail[6]) << 48; [[fallthrough]];
    case 6: k1 ^= static_cast<std::uint64_t>(tail[5]) << 40; [[fallthrough]];
    case 5: k1 ^= static_cast<std::uint64_t>(tail[4]) << 32; [[fallthrough]];
    case 4: k1 ^= static_cast<std::uint64_t>(tail[3]) << 24; [[fallthrough]];
    case 3: k1 ^= static_cast<std::uint64_t>(tail[2]) << 16; [[fallthrough]];
    case 2: k1 ^= static_cast<std::uint64_t>(tail[1]) << 8; [[fallthrough]];
    case 1:
      k1 ^= static_cast<std::uint64_t>(tail[0]);
      k1 *= c1; k1 = rotl64(k1, 31); k1 *= c2; h1 ^= k1;
      break;
    default: break;
  }

  h1 ^= static_cast<std::uint64_t>(len);
  h2 ^= static_cast<std::uint64_t>(len);
  h1 += h2;
  h2 += h1;
  h1 = fmix64(h1);
  h2 = fmix64(h2);
  h1 += h2;
  h2 += h1;
  return {h1, h2};
}

void append_value(std::string& out, const Value& v) {
  if (std::holds_alternative<double>(v)) {
    double d = std::get<double>(v);
    if (d == 0.0) d = 0.0;
    out.push_back('d');
    char raw[8];
    std::memcpy(raw, &d, 8);
    out.append(raw, 8);
  } else {
    out.push_back('t');
    out.push_back(static_cast<char>(std::get<Truth3>(v)));
  }
}

}  // namespace

std::string Digest128::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return std::string(buf);
}

Digest128 fingerprint(const Dag& dag) {
  std::vector<const DagNode*> by_name;
  by_name.reserve(dag.nodes.size());
  for (const DagNode& n : dag.nodes) by_name.push_back(&n);
  std::sort(by_name.begin(), by_name.end(),
            [](const DagNode* a, const DagNode* b) { return a->name < b->name; });

  std::string bytes;
  bytes.push_back(dag.kind == DagKind::Tree ? 'T' : 'G');
  if (dag.kind == DagKind::Tree && dag.root != kNoNode) bytes += dag.nodes[dag.root].name;
  bytes.push_back('\x1f');
  for (const DagNode* n : by_name) {
    bytes += n->name;
    bytes.push_back('\x01');
    bytes.push_back(n->op ? static_cast<char>(static_cast<int>(*n->op) + 1) : '\0');
    if (n->is_leaf() && n->value) append_value(bytes, *n->value);
    bytes.push_back('\x02');
    for (NodeId c : n->children) {
      bytes += dag.nodes[c].name;
      bytes.push_back('\x01');
    }
    bytes.push_back('\x03');
  }
  return murmur3_x64_128(bytes.data(), bytes.size(), 0x9e3779b9u);
}

std::string serialize_dag(const Dag& dag) {
  std::ostringstream out;
  out << "dag kind=" << (dag.kind == DagKind::Tree ? "tree" : "general");
  if (dag.kind == DagKind::Tree) {
    out << " depth=" << dag.depth << " width=" << dag.width;
    if (dag.root != kNoNode) out << " root=" << dag.nodes[dag.root].name;
  }
  out << '\n';
  for (NodeId id : topo_order(dag)) {
    const DagNode& n = dag.nodes[id];
    out << n.name << '\t' << (n.op ? op_tag(*n.op) : "-") << '\t';
    if (!n.value) {
      out << '-';
    } else if (std::holds_alternative<double>(*n.value)) {
      out << fmt_number(std::get<double>(*n.value));
    } else {
      out << to_string(std::get<Truth3>(*n.value));
    }
    out << '\t';
    if (n.children.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out << ',';
        out << dag.nodes[n.children[i]].name;
      }
    }
    out << '\n';
  }
  return out.str();
}

Dag parse_serialized_dag(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) || header.rfind("dag kind=", 0) != 0)
    throw IntegrityError("bad dag header");

  Dag dag;
  std::string root_name;
  {
    std::istringstream hs(header.substr(4));
    std::string field;
    while (hs >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw IntegrityError("bad dag header field");
      const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
      if (key == "kind") dag.kind = val == "tree" ? DagKind::Tree : DagKind::General;
      else if (key == "depth") dag.depth = std::stoi(val);
      else if (key == "width") dag.width = std::stoi(val);
      else if (key == "root") root_name = val;
    }
  }

  std::unordered_map<std::string, NodeId> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cols.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cols.size() != 4) throw IntegrityError("bad dag node line");
    DagNode n;
    n.id = static_cast<NodeId>(dag.nodes.size());
    n.name = cols[0];
    if (cols[1] != "-") {
      const auto op = op_from_tag(cols[1]);
      if (!op) throw IntegrityError("unknown op tag: " + cols[1]);
      n.op = *op;
    }
    if (cols[2] != "-") {
      if (cols[2] == "True") n.value = Truth3::True;
      else if (cols[2] == "False") n.value = Truth3::False;
      else if (cols[2] == "N/A") n.value = Truth3::NA;
      else n.value = std::stod(cols[2]);
    }
    if (cols[3] != "-") {
      std::size_t cstart = 0;
      const std::string& cs = cols[3];
      for (std::size_t i = 0; i <= cs.size(); ++i) {
        if (i == cs.size() || cs[i] == ',') {
          const std::string cname = cs.substr(cstart, i - cstart);
          const auto it = ids.find(cname);
          if (it == ids.end()) throw IntegrityError("child referenced before definition: " + cname);
          n.children.push_back(it->second);
          cstart = i + 1;
        }
      }
    }
    ids.emplace(n.name, n.id);
    dag.nodes.push_back(std::move(n));
  }
  if (!root_name.empty()) {
    const auto it = ids.find(root_name);
    if (it == ids.end()) throw IntegrityError("root name not defined");
    dag.root = it->second;
  }
  return dag;
}

void validate_dag(const Dag& dag) {
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
    const DagNode& n = dag.nodes[i];
    if (n.id != static_cast<NodeId>(i)) throw IntegrityError("node ids not dense");
    if (!names.insert(n.name).second) throw IntegrityError("duplicate node name: " + n.name);
    if (dag.kind == DagKind::Tree) {
      if (n.is_leaf() != !n.op.has_value())
        throw IntegrityError("leaf/op inconsistency at " + n.name);
    } else if (n.op) {
      throw IntegrityError("operation on a general-DAG node at " + n.name);
    }
    if (n.op && is_unary(*n.op) && n.children.size() != 1)
      throw IntegrityError("unary op with wrong arity at " + n.name);
    for (NodeId c : n.children)
      if (c >= dag.nodes.size()) throw IntegrityError("child id out of range at " + n.name);
  }
  if (has_cycle(dag)) throw IntegrityError("cycle detected");
  if (dag.kind == DagKind::Tree) {
    if (dag.root == kNoNode || dag.root >= dag.nodes.size())
      throw IntegrityError("tree without a root");
    std::vector<int> parent_edges(dag.nodes.size(), 0);
    for (const DagNode& n : dag.nodes)
      for (NodeId c : n.children) ++parent_edges[c];
    if (parent_edges[dag.root] != 0) throw IntegrityError("tree root has a parent");
    for (std::size_t i = 0; i < dag.nodes.size(); ++i)
      if (i != dag.root && parent_edges[i] == 0)
        throw IntegrityError("tree has a second parentless node");
  }
}

}  // namespace dagbench
