#pragma once

#include <string>
#include <vector>

#include "dagbench/dag.hpp"
#include "dagbench/task.hpp"

namespace dagbench {

enum class Level : int { D1 = 0, D2, D3, D4 };
enum class Order : int { Topological = 0, Reversed, Random };

const char* level_name(Level l);
const char* order_name(Order o);
std::optional<Level> level_from_name(std::string_view name);
std::optional<Order> order_from_name(std::string_view name);

/// Generation knobs for one cell. Exactly one of the tree / general parameter
/// groups is populated depending on the task kind.
struct ComplexitySpec {
  // tree tasks
  int depth = 0;
  int width = 0;
  // general tasks
  int num_nodes = 0;
  int max_links = 0;
  int min_links = 1;
  // shared
  int extra_links_per_node = 0;
  int num_distractors = 0;
  Order order = Order::Topological;
};

/// The four difficulty presets. Tree tasks use depth/width
/// (2,2),(3,2),(3,3),(4,2); the linear-equation substitution tree uses
/// (1,1),(2,2),(3,2),(4,2); general tasks use 7/10/15/20 nodes with
/// 3/4/6/8 maximum links and 1 minimum link.
ComplexitySpec preset(Task task, Level level);

/// Machine-readable dump of the whole preset table (JSON).
std::string preset_table_json();

/// For each non-leaf node with an n-ary operation, appends up to `per_node`
/// extra children chosen uniformly among targets that keep the graph acyclic;
/// repeats of an existing child are allowed, unary nodes are skipped, and a
/// node with no safe target is skipped silently. Values are recomputed with
/// `eval` afterwards (pass nullptr for value-free graphs).
void add_extra_links(Dag& dag, int per_node, Rng& rng, EvalFn eval);

/// Small independent DAGs whose descriptions get interleaved into the primary
/// prompt as noise. Tree-task distractors are depth 2-3, width 2 trees over
/// the same constraint; general-task distractors are 3-5 node graphs. Name
/// namespaces start at `first_namespace` so distractors never share names
/// with the primary DAG.
std::vector<Dag> make_distractors(int count, Task task, const TaskConstraint& constraint,
                                  Rng& rng, EvalFn eval, int first_namespace);

}  // namespace dagbench
