#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dagbench/parallel.hpp"
#include "dagbench/sample.hpp"
#include "dagbench/scoring.hpp"
#include "dagbench/traces.hpp"
#include "dagbench/uniqueness.hpp"

namespace dagbench {

inline constexpr const char* kGeneratorVersion = "dagbench-1.0.0";
inline constexpr const char* kApiKeyEnv = "DAGBENCH_API_KEY";

struct RunConfig {
  std::vector<Task> tasks{kAllTasks, kAllTasks + kTaskCount};
  std::vector<Level> levels{Level::D1, Level::D2, Level::D3, Level::D4};
  std::vector<Order> orders{Order::Topological, Order::Reversed, Order::Random};
  std::vector<std::uint64_t> seeds{1, 2, 3};
  int samples_per_cell = 500;
  GenOptions gen;
  bool dedup = false;        // drop fingerprint duplicates within a file
  std::string preset_file;   // JSON in the `presets` dump shape; overrides levels
  ExecMode exec = ExecMode::Parallel;
  std::string out_dir = ".";

  // eval settings
  std::string endpoint;                    // full URL of a chat-completions endpoint
  std::string model;
  double temperature = 0.0;                // deterministic decoding by default
  double max_output_multiplier = 2.0;      // output cap = prompt chars * multiplier
  int parallel_requests = 4;               // bounded in-flight requests
  int timeout_ms = 30000;
  int max_retries = 3;
  int retry_backoff_ms = 250;
  double rate_limit_qps = 0.0;             // 0 = unlimited
  std::string system_prompt;               // empty = single user message only
  std::string api_key_env = kApiKeyEnv;
  bool resume = false;                     // skip ids already in the responses file
};

/// Self-describing dataset line: scoring needs no generator state.
struct DatasetRecord {
  std::string id;
  Task task = Task::Arithmetic;
  Level level = Level::D1;
  Order order = Order::Topological;
  std::uint64_t seed = 0;
  std::uint32_t index = 0;
  std::string prompt;
  std::string ground_truth;
  double sigma = 0.0;  // 0 = exact-token answer
  std::string dag;     // canonical serialization
  std::string generator_version;

  std::string to_json_line() const;
  static DatasetRecord from_json_line(const std::string& line);
};

DatasetRecord make_record(Task task, Level level, Order order, std::uint64_t seed,
                          std::uint32_t index, const GenOptions& options,
                          const ComplexitySpec* spec_override = nullptr);

/// Parses a preset-override file (the JSON shape that `preset_table_json`
/// emits, possibly partial). Keys: task name -> level name -> fields.
std::map<std::pair<Task, Level>, ComplexitySpec> load_preset_overrides(const std::string& path);

struct ResponseRecord {
  std::string id;
  std::string response;
  std::string status = "ok";  // "ok" | "transport_error"
  int attempts = 0;
  int http_status = 0;

  std::string to_json_line() const;
  static ResponseRecord from_json_line(const std::string& line);
};

std::vector<DatasetRecord> read_dataset(const std::string& path);
std::vector<ResponseRecord> read_responses(const std::string& path);

/// One line-delimited file per (task, level); order, seed and index live in
/// the records. Returns the written paths. Deterministic: identical config
/// produces byte-identical files.
std::vector<std::string> cmd_generate(const RunConfig& config);

struct EvalResult {
  std::string responses_path;
  std::string report_path;
  std::string table_path;
  std::string verdicts_path;
  std::uint64_t total = 0;
  std::uint64_t transport_failures = 0;
};

/// Sends every prompt to the endpoint as a single-turn chat request with the
/// configured temperature and output cap, persists raw responses keyed by
/// record id before any scoring, then scores the persisted file offline.
EvalResult cmd_eval(const RunConfig& config, const std::vector<std::string>& dataset_paths);

struct ScoreFiles {
  std::string report_path;
  std::string table_path;
  std::string verdicts_path;
};

/// Deterministic offline re-scoring of persisted responses.
ScoreFiles cmd_score(const RunConfig& config, const std::vector<std::string>& dataset_paths,
                     const std::string& responses_path);

/// Scores in memory; cmd_eval and cmd_score share this path, so their report
/// bytes agree.
std::string score_to_report(const std::vector<DatasetRecord>& dataset,
                            const std::vector<ResponseRecord>& responses, std::string* table_out,
                            std::string* verdicts_out, std::uint64_t* transport_failures);

struct StatsConfig {
  CollisionParams params;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  bool factorial_table = false;
  ExecMode exec = ExecMode::Parallel;
};

/// Prints predicted vs observed collision statistics; refuses the empirical
/// mode when the predicted rate is below 1e-4 and prints the closed form
/// only.
std::string cmd_stats(const StatsConfig& config);

/// Writes a training-trace file (line-delimited input/steps records).
std::string cmd_traces(Task task, const std::vector<TraceMix>& mix, std::uint64_t seed,
                       const std::string& out_path);

}  // namespace dagbench
