#pragma once

#include <string>
#include <vector>

#include "dagbench/sample.hpp"

namespace dagbench {

/// Allocates node names: primary namespace is plain base-26 ("aaa"), each
/// auxiliary namespace k appends its digit ("aaa0"). Primary and auxiliary
/// namespaces never collide.
struct NameSeq {
  int name_namespace = -1;  // -1 = primary
  std::string at(std::size_t index) const {
    return node_name(index, name_namespace < 0 ? "" : std::to_string(name_namespace));
  }
};

struct DescUnit {
  NodeId node = kNoNode;
  std::string text;  // one sentence
};

/// One sentence per described node, in topological order. Abductive prompts
/// omit leaf-value sentences (leaf values are what gets abduced); general
/// graphs describe links here and values via describe_values.
std::vector<DescUnit> describe_nodes(const Dag& dag, Task task);

/// Value sentences for the max-sum task ("The value of aaj is 9", no period).
std::vector<DescUnit> describe_values(const Dag& dag);

/// Topological keeps the children-before-parents input order, reversed is its
/// exact reverse, random is a uniform shuffle.
std::vector<DescUnit> order_units(std::vector<DescUnit> units, Order order, Rng& rng);

/// Full prompt assembly from the task template: header, ordered node
/// sentences with distractor sentences spliced in at uniform positions,
/// question, and the closing instructions.
std::string render_prompt(const Sample& sample, Rng& describe_rng);

/// Inverse of the node templates for topological-order prompts without
/// distractors: recovers names, operations, child order and stated values.
/// Abductive and reachability prompts carry no leaf/node values, so parsed
/// nodes hold none there.
Dag parse_prompt(const std::string& prompt, Task task);

}  // namespace dagbench
