#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dagbench/rng.hpp"

namespace dagbench {

struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Three-valued truth for the deductive/abductive tasks. The boolean task is
/// strictly two-valued; NA only arises from deduction/abduction.
enum class Truth3 : std::uint8_t { False = 0, True = 1, NA = 2 };

const char* to_string(Truth3 v);
Truth3 kleene_not(Truth3 v);
Truth3 kleene_and(Truth3 a, Truth3 b);
Truth3 kleene_or(Truth3 a, Truth3 b);

enum class Op : std::uint8_t { Add, Sub, Mul, Div, Sqrt, Square, And, Or, Not };

inline bool is_unary(Op op) { return op == Op::Sqrt || op == Op::Square || op == Op::Not; }
inline bool is_logic_op(Op op) { return op == Op::And || op == Op::Or || op == Op::Not; }
const char* op_tag(Op op);
std::optional<Op> op_from_tag(std::string_view tag);

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

using Value = std::variant<double, Truth3>;

inline double num(const Value& v) { return std::get<double>(v); }
inline Truth3 truth(const Value& v) { return std::get<Truth3>(v); }

struct DagNode {
  NodeId id = 0;
  std::string name;
  std::optional<Value> value;
  std::optional<Op> op;
  std::vector<NodeId> children;  // ordered; repeats only via extra-link injection

  bool is_leaf() const { return children.empty(); }
};

enum class DagKind : std::uint8_t { Tree, General };

struct Dag {
  std::vector<DagNode> nodes;
  DagKind kind = DagKind::Tree;
  NodeId root = kNoNode;  // tree kind only
  int depth = 0;          // tree kind only
  int width = 0;          // tree kind only

  std::size_t size() const { return nodes.size(); }
  const DagNode& node(NodeId id) const { return nodes[id]; }
  DagNode& node(NodeId id) { return nodes[id]; }
  const DagNode& root_node() const { return nodes[root]; }
};

/// Node computation rule: given an operation and the child values (in child
/// order), produce the node value, or nullopt when the step is undefined for
/// the task (division by near-zero, sqrt of a negative). Each task supplies
/// its own rule; generators thread it through bottom-up value computation.
using EvalFn = std::optional<Value> (*)(Op, const std::vector<Value>&);

/// Uniform draw over an enumerated value set.
struct ValueDist {
  enum class Kind : std::uint8_t { IntRange, Truth } kind = Kind::IntRange;
  int lo = 1;
  int hi = 10;

  Value draw(Rng& rng) const;
  int count() const { return kind == Kind::Truth ? 2 : hi - lo + 1; }
};

/// Task constraint: permissible leaf values and operation set.
struct TaskConstraint {
  ValueDist values;
  std::vector<Op> ops;
};

/// "aaa", "aab", ... in base-26, optionally suffixed with a namespace tag
/// ("aaa0" for the first auxiliary namespace).
std::string node_name(std::size_t index, std::string_view suffix = {});

/// Top-down tree construction with the requested depth and width. Internal
/// nodes draw an operation uniformly from the constraint set; unary
/// operations take exactly one child, all others exactly `width`. Leaves draw
/// values from the constraint distribution. Node ids and names are assigned
/// in postorder, so ids are already a children-before-parents order. Values
/// are computed bottom-up with `eval` (pass nullptr to skip computation);
/// nodes whose computation is undefined keep an empty value.
Dag gen_tdag(int depth, int width, const TaskConstraint& constraint, Rng& rng, EvalFn eval,
             std::string_view name_suffix = {});

/// General DAG over `num_nodes` isolated nodes: a random permutation fixes an
/// ordering and every node links only to nodes later in it, which guarantees
/// acyclicity. Each node draws its out-degree uniformly from
/// [min_links, max_links], capped by the targets still ahead of it; nodes at
/// the tail of the permutation that cannot satisfy min_links are permitted
/// sinks. Child sets contain no repeats. If `values` is given every node
/// draws a value.
Dag gen_gdag(int num_nodes, int max_links, int min_links, const std::optional<ValueDist>& values,
             Rng& rng, std::string_view name_suffix = {});

/// Recomputes non-leaf values bottom-up; leaves keep their stored values.
void recompute_values(Dag& dag, EvalFn eval);

/// Redraws every leaf value from the distribution (used by validity retry
/// loops), leaving structure and operations untouched.
void redraw_leaf_values(Dag& dag, const ValueDist& values, Rng& rng);

/// True when every node carries a value (no step was undefined).
bool dag_has_all_values(const Dag& dag);

/// Children-before-parents order: for every edge u -> v, v precedes u.
/// Deterministic (smallest ready id first). Throws IntegrityError on a cycle.
std::vector<NodeId> topo_order(const Dag& dag);

bool has_cycle(const Dag& dag);

/// True when `to` is reachable from `from` by following child links.
bool reaches(const Dag& dag, NodeId from, NodeId to);

struct Digest128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend bool operator==(const Digest128&, const Digest128&) = default;
  friend auto operator<=>(const Digest128&, const Digest128&) = default;

  std::string hex() const;
};

struct Digest128Hash {
  std::size_t operator()(const Digest128& d) const noexcept {
    return static_cast<std::size_t>(d.hi ^ (d.lo * 0x9e3779b97f4a7c15ULL));
  }
};

/// Structural digest: invariant to NodeId relabeling (nodes are keyed by
/// name), sensitive to kind, root, operations, leaf values and child order.
/// Child order matters by design: a tree computing 3*5 is distinct from one
/// computing 5*3.
Digest128 fingerprint(const Dag& dag);

/// Canonical text form: a header line followed by one line per node in
/// topological order with name, operation tag, value and child names.
std::string serialize_dag(const Dag& dag);
Dag parse_serialized_dag(const std::string& text);

/// Checks arena invariants (dense ids, unique names, leaf/op consistency,
/// child ids in range, acyclicity, tree shape for tree kind).
void validate_dag(const Dag& dag);

}  // namespace dagbench
