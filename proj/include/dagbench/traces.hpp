#pragma once

#include <string>
#include <vector>

#include "dagbench/sample.hpp"

namespace dagbench {

/// Fine-tuning record: the rendered problem plus step-by-step inference text
/// whose final delimited answer always equals the sample's ground truth.
struct TraceRecord {
  std::string input;
  std::string steps;
};

/// Narrates the solution of one sample: tree tasks walk the computation in
/// topological order, abduction walks the root-to-target path, reachability
/// narrates a depth-first search, max-sum narrates exhaustive path
/// exploration with running sums.
TraceRecord render_trace(const Sample& sample);

struct TraceMix {
  ComplexitySpec spec;
  int count = 0;
};

/// The stock training mixes: tree tasks get four depth-3 configurations
/// (width 2; width 2 plus one extra link; width 2, one extra link and one
/// embedded description; width 3), general tasks get 7-node/3-link and
/// 10-node/4-link configurations.
std::vector<TraceMix> default_trace_mix(Task task, int per_config = 500);

/// Generates the mix with fingerprint deduplication (no two records share a
/// primary-DAG fingerprint).
std::vector<TraceRecord> gen_training_set(Task task, const std::vector<TraceMix>& mix,
                                          std::uint64_t seed);

}  // namespace dagbench
