#include "dagbench/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "dagbench/http_support.hpp"

namespace dagbench {

namespace {

using nlohmann::json;

std::string record_id(Task task, Level level, Order order, std::uint64_t seed,
                      std::uint32_t index) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s-%s-%s-s%llu-i%05u", task_name(task), level_name(level),
                order_name(order), static_cast<unsigned long long>(seed), index);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GenerationError("cannot write " + path);
  out << content;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GenerationError("cannot read " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

std::string DatasetRecord::to_json_line() const {
  json j;
  j["id"] = id;
  j["task"] = task_name(task);
  j["level"] = level_name(level);
  j["order"] = order_name(order);
  j["seed"] = seed;
  j["index"] = index;
  j["prompt"] = prompt;
  j["ground_truth"] = ground_truth;
  if (sigma > 0) j["sigma"] = sigma;
  j["dag"] = dag;
  j["generator_version"] = generator_version;
  return j.dump();
}

DatasetRecord DatasetRecord::from_json_line(const std::string& line) {
  const json j = json::parse(line);
  DatasetRecord r;
  r.id = j.at("id").get<std::string>();
  r.task = *task_from_name(j.at("task").get<std::string>());
  r.level = *level_from_name(j.at("level").get<std::string>());
  r.order = *order_from_name(j.at("order").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.index = j.at("index").get<std::uint32_t>();
  r.prompt = j.at("prompt").get<std::string>();
  r.ground_truth = j.at("ground_truth").get<std::string>();
  r.sigma = j.value("sigma", 0.0);
  r.dag = j.at("dag").get<std::string>();
  r.generator_version = j.value("generator_version", "");
  return r;
}

std::string ResponseRecord::to_json_line() const {
  json j;
  j["id"] = id;
  j["response"] = response;
  j["status"] = status;
  j["attempts"] = attempts;
  j["http_status"] = http_status;
  return j.dump();
}

ResponseRecord ResponseRecord::from_json_line(const std::string& line) {
  const json j = json::parse(line);
  ResponseRecord r;
  r.id = j.at("id").get<std::string>();
  r.response = j.at("response").get<std::string>();
  r.status = j.value("status", "ok");
  r.attempts = j.value("attempts", 0);
  r.http_status = j.value("http_status", 0);
  return r;
}

std::vector<DatasetRecord> read_dataset(const std::string& path) {
  std::vector<DatasetRecord> records;
  for (const std::string& line : read_lines(path))
    records.push_back(DatasetRecord::from_json_line(line));
  return records;
}

std::vector<ResponseRecord> read_responses(const std::string& path) {
  std::vector<ResponseRecord> records;
  for (const std::string& line : read_lines(path))
    records.push_back(ResponseRecord::from_json_line(line));
  return records;
}

std::map<std::pair<Task, Level>, ComplexitySpec> load_preset_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GenerationError("cannot read preset file " + path);
  const json doc = json::parse(in);
  std::map<std::pair<Task, Level>, ComplexitySpec> overrides;
  for (const auto& [tname, levels] : doc.items()) {
    const auto task = task_from_name(tname);
    if (!task) throw GenerationError("preset file: unknown task " + tname);
    for (const auto& [lname, fields] : levels.items()) {
      const auto level = level_from_name(lname);
      if (!level) throw GenerationError("preset file: unknown level " + lname);
      ComplexitySpec spec = preset(*task, *level);
      spec.depth = fields.value("depth", spec.depth);
      spec.width = fields.value("width", spec.width);
      spec.num_nodes = fields.value("num_nodes", spec.num_nodes);
      spec.max_links = fields.value("max_links", spec.max_links);
      spec.min_links = fields.value("min_links", spec.min_links);
      spec.extra_links_per_node = fields.value("extra_links_per_node", spec.extra_links_per_node);
      spec.num_distractors = fields.value("num_distractors", spec.num_distractors);
      overrides.emplace(std::make_pair(*task, *level), spec);
    }
  }
  return overrides;
}

DatasetRecord make_record(Task task, Level level, Order order, std::uint64_t seed,
                          std::uint32_t index, const GenOptions& options,
                          const ComplexitySpec* spec_override) {
  const Sample sample =
      spec_override
          ? generate_sample_with_spec(task, *spec_override, level, order, seed, index, options)
          : generate_sample(task, level, order, seed, index, options);
  DatasetRecord r;
  r.id = record_id(task, level, order, seed, index);
  r.task = task;
  r.level = level;
  r.order = order;
  r.seed = seed;
  r.index = index;
  r.prompt = sample.prompt;
  r.ground_truth = ground_truth_string(sample);
  r.sigma = sample_sigma(task);
  r.dag = serialize_dag(sample.primary_dag());
  r.generator_version = kGeneratorVersion;
  return r;
}

std::vector<std::string> cmd_generate(const RunConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  std::map<std::pair<Task, Level>, ComplexitySpec> overrides;
  if (!config.preset_file.empty()) overrides = load_preset_overrides(config.preset_file);
  std::vector<std::string> paths;
  for (Task task : config.tasks) {
    for (Level level : config.levels) {
      const auto override_it = overrides.find({task, level});
      const ComplexitySpec* spec_override =
          override_it != overrides.end() ? &override_it->second : nullptr;
      struct Slot {
        Order order;
        std::uint64_t seed;
        std::uint32_t index;
      };
      std::vector<Slot> slots;
      for (Order order : config.orders)
        for (std::uint64_t seed : config.seeds)
          for (int i = 0; i < config.samples_per_cell; ++i)
            slots.push_back({order, seed, static_cast<std::uint32_t>(i)});

      std::vector<std::string> lines(slots.size());
      std::vector<Digest128> digests(slots.size());
      std::vector<std::string> errors(slots.size());
      GenOptions options = config.gen;
      if (task != Task::Reachability) options.balance_reachability = false;
      // exceptions cannot cross the parallel region; capture per slot and
      // surface them with their cell coordinates afterwards
      parallel_for(slots.size(), config.exec, [&](std::size_t i) {
        const Slot& s = slots[i];
        try {
          const Sample sample =
              spec_override ? generate_sample_with_spec(task, *spec_override, level, s.order,
                                                        s.seed, s.index, options)
                            : generate_sample(task, level, s.order, s.seed, s.index, options);
          digests[i] = fingerprint(sample.primary_dag());
          DatasetRecord r;
          r.id = record_id(task, level, s.order, s.seed, s.index);
          r.task = task;
          r.level = level;
          r.order = s.order;
          r.seed = s.seed;
          r.index = s.index;
          r.prompt = sample.prompt;
          r.ground_truth = ground_truth_string(sample);
          r.sigma = sample_sigma(task);
          r.dag = serialize_dag(sample.primary_dag());
          r.generator_version = kGeneratorVersion;
          lines[i] = r.to_json_line();
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      });
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!errors[i].empty())
          throw GenerationError("generation failed at " +
                                record_id(task, level, slots[i].order, slots[i].seed,
                                          slots[i].index) +
                                ": " + errors[i]);
      }

      std::ostringstream body;
      std::unordered_set<Digest128, Digest128Hash> seen;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (config.dedup && !seen.insert(digests[i]).second) continue;
        body << lines[i] << '\n';
      }

      const std::string path =
          (fs::path(config.out_dir) /
           (std::string(task_name(task)) + "_" + level_name(level) + ".jsonl"))
              .string();
      write_text_file(path, body.str());
      paths.push_back(path);
    }
  }
  return paths;
}

namespace {

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;  // /v1/chat/completions
};

Endpoint split_endpoint(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw GenerationError("endpoint URL needs a scheme: " + url);
  const std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/v1/chat/completions"};
  return {url.substr(0, slash), url.substr(slash)};
}

json build_request_body(const RunConfig& config, const std::string& prompt) {
  json body;
  body["model"] = config.model;
  json messages = json::array();
  if (!config.system_prompt.empty())
    messages.push_back({{"role", "system"}, {"content", config.system_prompt}});
  messages.push_back({{"role", "user"}, {"content", prompt}});
  body["messages"] = messages;
  body["temperature"] = config.temperature;
  body["max_tokens"] =
      std::max<long long>(1, static_cast<long long>(static_cast<double>(prompt.size()) *
                                                    config.max_output_multiplier));
  return body;
}

std::optional<std::string> parse_completion(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
    return std::nullopt;
  const json& choice = j["choices"][0];
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string())
    return choice["message"]["content"].get<std::string>();
  if (choice.contains("text") && choice["text"].is_string())
    return choice["text"].get<std::string>();
  return std::nullopt;
}

}  // namespace

std::string score_to_report(const std::vector<DatasetRecord>& dataset,
                            const std::vector<ResponseRecord>& responses, std::string* table_out,
                            std::string* verdicts_out, std::uint64_t* transport_failures) {
  std::unordered_map<std::string, const ResponseRecord*> by_id;
  for (const ResponseRecord& r : responses) by_id[r.id] = &r;

  std::vector<CellKey> grid;
  {
    std::set<CellKey> keys;
    for (const DatasetRecord& r : dataset) keys.insert({r.task, r.level, r.order, r.seed});
    grid.assign(keys.begin(), keys.end());
  }

  std::vector<ScoredItem> items(dataset.size());
  std::uint64_t failures = 0;
  std::ostringstream verdict_lines;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const DatasetRecord& rec = dataset[i];
    const auto it = by_id.find(rec.id);
    Verdict v;
    if (it == by_id.end() || it->second->status != "ok") {
      v.correct = false;
      v.reason = "unanswered";
      ++failures;
    } else {
      v = score_response(rec.task, rec.ground_truth, rec.sigma, it->second->response);
    }
    items[i] = {{rec.task, rec.level, rec.order, rec.seed}, v};
    json jv;
    jv["id"] = rec.id;
    jv["correct"] = v.correct;
    jv["extracted"] = v.extracted;
    jv["reason"] = v.reason;
    verdict_lines << jv.dump() << '\n';
  }

  const ScoreReport report = aggregate(items, grid);
  if (table_out) *table_out = report.render_table();
  if (verdicts_out) *verdicts_out = verdict_lines.str();
  if (transport_failures) *transport_failures = failures;

  std::ostringstream out;
  out << report.render_text();
  const double share =
      dataset.empty() ? 0.0 : 100.0 * static_cast<double>(failures) / dataset.size();
  char line[96];
  std::snprintf(line, sizeof(line), "unanswered (transport failures): %llu of %zu (%.2f%%)\n",
                static_cast<unsigned long long>(failures), dataset.size(), share);
  out << line;
  return out.str();
}

EvalResult cmd_eval(const RunConfig& config, const std::vector<std::string>& dataset_paths) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);

  std::vector<DatasetRecord> dataset;
  for (const std::string& p : dataset_paths)
    for (DatasetRecord& r : read_dataset(p)) dataset.push_back(std::move(r));

  EvalResult result;
  result.responses_path = (fs::path(config.out_dir) / "responses.jsonl").string();
  result.report_path = (fs::path(config.out_dir) / "report.txt").string();
  result.table_path = (fs::path(config.out_dir) / "report_table.tsv").string();
  result.verdicts_path = (fs::path(config.out_dir) / "verdicts.jsonl").string();
  result.total = dataset.size();

  std::unordered_map<std::string, ResponseRecord> existing;
  if (config.resume && fs::exists(result.responses_path))
    for (ResponseRecord& r : read_responses(result.responses_path)) existing[r.id] = std::move(r);

  const Endpoint endpoint = split_endpoint(config.endpoint);
  const char* key = std::getenv(config.api_key_env.c_str());

  std::vector<ResponseRecord> responses(dataset.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, config.parallel_requests);
  const auto min_gap =
      config.rate_limit_qps > 0
          ? std::chrono::microseconds(static_cast<long long>(1e6 / config.rate_limit_qps))
          : std::chrono::microseconds(0);
  std::mutex pace_mutex;
  auto last_request = std::chrono::steady_clock::now() - std::chrono::hours(1);

  auto worker = [&]() {
    httplib::Client client(endpoint.base);
    client.set_connection_timeout(0, config.timeout_ms * 1000LL);
    client.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
    httplib::Headers headers;
    if (key && *key) headers.emplace("Authorization", std::string("Bearer ") + key);

    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= dataset.size()) return;
      const DatasetRecord& rec = dataset[i];

      if (const auto it = existing.find(rec.id); it != existing.end()) {
        responses[i] = it->second;
        continue;
      }

      ResponseRecord out;
      out.id = rec.id;
      try {
        const std::string body = build_request_body(config, rec.prompt).dump();
        for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
          out.attempts = attempt + 1;
          if (min_gap.count() > 0) {
            std::unique_lock lock(pace_mutex);
            const auto now = std::chrono::steady_clock::now();
            const auto wait = last_request + min_gap - now;
            if (wait.count() > 0) std::this_thread::sleep_for(wait);
            last_request = std::chrono::steady_clock::now();
          }
          auto res = client.Post(endpoint.path, headers, body, "application/json");
          if (res) {
            out.http_status = res->status;
            if (res->status == 200) {
              if (const auto content = parse_completion(res->body)) {
                out.response = *content;
                out.status = "ok";
                break;
              }
              out.status = "transport_error";
              break;  // well-formed HTTP but unusable payload: do not retry
            }
            const bool retryable = res->status == 429 || res->status >= 500;
            out.status = "transport_error";
            if (!retryable) break;
          } else {
            out.http_status = 0;
            out.status = "transport_error";
          }
          if (attempt < config.max_retries)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(config.retry_backoff_ms << attempt));
        }
      } catch (const std::exception&) {
        out.status = "transport_error";
      }
      responses[i] = std::move(out);
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  // persist every raw response before scoring anything
  {
    std::ostringstream body;
    for (const ResponseRecord& r : responses) body << r.to_json_line() << '\n';
    write_text_file(result.responses_path, body.str());
  }

  const std::vector<ResponseRecord> persisted = read_responses(result.responses_path);
  std::string table, verdicts;
  const std::string report =
      score_to_report(dataset, persisted, &table, &verdicts, &result.transport_failures);
  write_text_file(result.report_path, report);
  write_text_file(result.table_path, table);
  write_text_file(result.verdicts_path, verdicts);
  return result;
}

ScoreFiles cmd_score(const RunConfig& config, const std::vector<std::string>& dataset_paths,
                     const std::string& responses_path) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  std::vector<DatasetRecord> dataset;
  for (const std::string& p : dataset_paths)
    for (DatasetRecord& r : read_dataset(p)) dataset.push_back(std::move(r));
  const std::vector<ResponseRecord> responses = read_responses(responses_path);

  // ids in the responses file that match nothing in the dataset are reported
  std::unordered_set<std::string> known;
  for (const DatasetRecord& r : dataset) known.insert(r.id);
  std::string orphan_note;
  for (const ResponseRecord& r : responses)
    if (!known.count(r.id)) orphan_note += "unmatched response id: " + r.id + "\n";

  ScoreFiles files;
  files.report_path = (fs::path(config.out_dir) / "report.txt").string();
  files.table_path = (fs::path(config.out_dir) / "report_table.tsv").string();
  files.verdicts_path = (fs::path(config.out_dir) / "verdicts.jsonl").string();

  std::string table, verdicts;
  const std::string report = score_to_report(dataset, responses, &table, &verdicts, nullptr);
  write_text_file(files.report_path, report + orphan_note);
  write_text_file(files.table_path, table);
  write_text_file(files.verdicts_path, verdicts);
  return files;
}

std::string cmd_stats(const StatsConfig& config) {
  std::ostringstream out;
  const CollisionEstimate est =
      collision_experiment(config.params, config.trials, config.seed, config.exec);
  out << collision_report_line(config.params, est) << '\n';
  if (config.factorial_table) {
    out << "general-DAG collision bounds 1/(n-1)!:\n";
    for (int n = 7; n <= 20; ++n) {
      char line[96];
      std::snprintf(line, sizeof(line), "  n=%-3d bound=%.6e log=%.4f\n", n,
                    gdag_collision_bound(n), gdag_collision_log_bound(n));
      out << line;
    }
  }
  return out.str();
}

std::string cmd_traces(Task task, const std::vector<TraceMix>& mix, std::uint64_t seed,
                       const std::string& out_path) {
  const std::vector<TraceRecord> records = gen_training_set(task, mix, seed);
  std::ostringstream body;
  for (const TraceRecord& r : records) {
    json j;
    j["input"] = r.input;
    j["steps"] = r.steps;
    body << j.dump() << '\n';
  }
  write_text_file(out_path, body.str());
  return out_path;
}

}  // namespace dagbench
