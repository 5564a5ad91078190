#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dagbench/harness.hpp"

namespace {

using namespace dagbench;

std::vector<Task> parse_tasks(const std::vector<std::string>& names) {
  std::vector<Task> out;
  for (const std::string& n : names) {
    if (n == "all") return {kAllTasks, kAllTasks + kTaskCount};
    const auto t = task_from_name(n);
    if (!t) throw CLI::ValidationError("unknown task: " + n);
    out.push_back(*t);
  }
  return out;
}

std::vector<Level> parse_levels(const std::vector<std::string>& names) {
  std::vector<Level> out;
  for (const std::string& n : names) {
    if (n == "all") return {Level::D1, Level::D2, Level::D3, Level::D4};
    const auto l = level_from_name(n);
    if (!l) throw CLI::ValidationError("unknown level: " + n);
    out.push_back(*l);
  }
  return out;
}

std::vector<Order> parse_orders(const std::vector<std::string>& names) {
  std::vector<Order> out;
  for (const std::string& n : names) {
    if (n == "all") return {Order::Topological, Order::Reversed, Order::Random};
    const auto o = order_from_name(n);
    if (!o) throw CLI::ValidationError("unknown order: " + n);
    out.push_back(*o);
  }
  return out;
}

// "depth=3,width=2,extra=1,distractors=0:500" or "nodes=7,links=3:500",
// semicolon-separated parts
std::vector<TraceMix> parse_mix(const std::string& text) {
  std::vector<TraceMix> mix;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(start, end - start);
    start = end + 1;
    const std::size_t colon = part.rfind(':');
    if (colon == std::string::npos) throw CLI::ValidationError("mix part needs ':count'");
    TraceMix m;
    m.count = std::stoi(part.substr(colon + 1));
    std::size_t p = 0;
    const std::string params = part.substr(0, colon);
    while (p < params.size()) {
      std::size_t q = params.find(',', p);
      if (q == std::string::npos) q = params.size();
      const std::string kv = params.substr(p, q - p);
      p = q + 1;
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("mix parameter needs key=value");
      const std::string key = kv.substr(0, eq);
      const int value = std::stoi(kv.substr(eq + 1));
      if (key == "depth") m.spec.depth = value;
      else if (key == "width") m.spec.width = value;
      else if (key == "nodes") m.spec.num_nodes = value;
      else if (key == "links") m.spec.max_links = value;
      else if (key == "extra") m.spec.extra_links_per_node = value;
      else if (key == "distractors") m.spec.num_distractors = value;
      else throw CLI::ValidationError("unknown mix parameter: " + key);
    }
    mix.push_back(m);
  }
  return mix;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural DAG reasoning benchmark generator and evaluation harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  RunConfig config;
  std::vector<std::string> task_names{"all"}, level_names{"all"}, order_names{"all"};
  bool serial = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tasks", task_names, "Task names or 'all'")->delimiter(',');
    cmd->add_option("--levels", level_names, "D1..D4 or 'all'")->delimiter(',');
    cmd->add_option("--orders", order_names, "topological,reversed,random or 'all'")
        ->delimiter(',');
    cmd->add_option("--seeds", config.seeds, "Generation seeds")->delimiter(',');
    cmd->add_option("--samples", config.samples_per_cell, "Samples per (level, order, seed) cell");
    cmd->add_option("--out", config.out_dir, "Output directory");
    cmd->add_flag("--serial", serial, "Disable the parallel batch kernels");
    cmd->add_flag("--balanced-reachability", config.gen.balance_reachability,
                  "Round-robin reachability labels to a 50/50 split");
    cmd->add_flag("--allow-na", config.gen.allow_na_arith,
                  "Keep N/A-answer arithmetic samples instead of retrying");
    cmd->add_flag("--no-division", config.gen.no_division,
                  "Restrict arithmetic to the five-operation set");
    cmd->add_option("--extra-links", config.gen.extra_links_override,
                    "Extra random links per node (overrides the preset)");
    cmd->add_option("--distractors", config.gen.distractors_override,
                    "Embedded random descriptions (overrides the preset)");
    cmd->add_flag("--dedup", config.dedup, "Drop fingerprint duplicates within a file");
    cmd->add_option("--preset-file", config.preset_file,
                    "JSON preset overrides (shape of the 'presets' dump, may be partial)");
  };

  CLI::App* generate = app.add_subcommand("generate", "Write evaluation dataset files");
  add_common(generate);

  CLI::App* eval = app.add_subcommand("eval", "Query a chat-completions endpoint and score");
  std::vector<std::string> dataset_paths;
  eval->add_option("--dataset", dataset_paths, "Dataset .jsonl files")->required()->delimiter(',');
  eval->add_option("--endpoint", config.endpoint, "Endpoint URL")->required();
  eval->add_option("--model", config.model, "Model name")->required();
  eval->add_option("--temperature", config.temperature, "Sampling temperature");
  eval->add_option("--max-mult", config.max_output_multiplier,
                   "Output cap: prompt characters times this multiplier");
  eval->add_option("--parallel", config.parallel_requests, "Bounded in-flight requests");
  eval->add_option("--timeout-ms", config.timeout_ms, "Per-request timeout");
  eval->add_option("--retries", config.max_retries, "Retries on transient failures");
  eval->add_option("--backoff-ms", config.retry_backoff_ms, "Base exponential backoff");
  eval->add_option("--qps", config.rate_limit_qps, "Rate limit, requests per second (0 = off)");
  eval->add_option("--system-prompt", config.system_prompt,
                   "Optional system message (default: user role only)");
  eval->add_option("--api-key-env", config.api_key_env,
                   "Environment variable holding the bearer token");
  eval->add_flag("--resume", config.resume, "Skip ids already present in responses.jsonl");
  eval->add_option("--out", config.out_dir, "Output directory");

  CLI::App* score = app.add_subcommand("score", "Re-score persisted responses offline");
  std::string responses_path;
  score->add_option("--dataset", dataset_paths, "Dataset .jsonl files")->required()->delimiter(',');
  score->add_option("--responses", responses_path, "responses.jsonl")->required();
  score->add_option("--out", config.out_dir, "Output directory");

  CLI::App* stats = app.add_subcommand("stats", "Collision statistics for the generators");
  StatsConfig stats_config;
  stats->add_option("--k", stats_config.params.k, "Operation count");
  stats->add_option("--n", stats_config.params.n, "Leaf value count");
  stats->add_option("--d", stats_config.params.d, "Tree depth");
  stats->add_option("--w", stats_config.params.w, "Tree width");
  stats->add_option("--trials", stats_config.trials, "Sampled pairs");
  stats->add_option("--seed", stats_config.seed, "Experiment seed");
  stats->add_flag("--factorials", stats_config.factorial_table,
                  "Also print the 1/(n-1)! bound for n=7..20");
  stats->add_flag("--serial", serial, "Disable the parallel trial kernel");

  CLI::App* traces = app.add_subcommand("traces", "Write fine-tuning trace records");
  std::string trace_task = "arithmetic", mix_text, trace_out = "traces.jsonl";
  std::uint64_t trace_seed = 1;
  int per_config = 500;
  traces->add_option("--task", trace_task, "Task name")->required();
  traces->add_option("--mix", mix_text,
                     "Custom mix, e.g. 'depth=3,width=2,extra=1:500;depth=3,width=3:500'");
  traces->add_option("--per-config", per_config, "Records per stock configuration");
  traces->add_option("--seed", trace_seed, "Generation seed");
  traces->add_option("--out", trace_out, "Output file");

  CLI::App* presets = app.add_subcommand("presets", "Dump the complexity preset table as JSON");

  CLI11_PARSE(app, argc, argv);

  config.tasks = parse_tasks(task_names);
  config.levels = parse_levels(level_names);
  config.orders = parse_orders(order_names);
  if (serial) config.exec = ExecMode::Serial;
  stats_config.exec = config.exec;

  try {
    if (*generate) {
      for (const std::string& path : cmd_generate(config)) std::cout << path << '\n';
    } else if (*eval) {
      const EvalResult r = cmd_eval(config, dataset_paths);
      std::cout << "responses: " << r.responses_path << '\n'
                << "report:    " << r.report_path << '\n'
                << "table:     " << r.table_path << '\n'
                << "verdicts:  " << r.verdicts_path << '\n'
                << "transport failures: " << r.transport_failures << " of " << r.total << '\n';
    } else if (*score) {
      const ScoreFiles f = cmd_score(config, dataset_paths, responses_path);
      std::cout << "report:   " << f.report_path << '\n'
                << "table:    " << f.table_path << '\n'
                << "verdicts: " << f.verdicts_path << '\n';
    } else if (*stats) {
      std::cout << cmd_stats(stats_config);
    } else if (*traces) {
      const auto task = task_from_name(trace_task);
      if (!task) throw CLI::ValidationError("unknown task: " + trace_task);
      const std::vector<TraceMix> mix =
          mix_text.empty() ? default_trace_mix(*task, per_config) : parse_mix(mix_text);
      std::cout << cmd_traces(*task, mix, trace_seed, trace_out) << '\n';
    } else if (*presets) {
      std::cout << preset_table_json();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
