// Acceptance suite: every criterion prints one PASS/FAIL line with its
// runtime; the process exits with the number of failed criteria.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "dagbench/describe.hpp"
#include "dagbench/harness.hpp"
#include "dagbench/numfmt.hpp"
#include "dagbench/templates.hpp"
#include "mock_endpoint.hpp"
#include "oracles.hpp"
#include "paper_cases.hpp"

using namespace dagbench;
namespace fs = std::filesystem;

namespace {

int failures = 0;
std::vector<std::string> failure_notes;

void expect(bool ok, const std::string& note) {
  if (!ok) failure_notes.push_back(note);
}

void run_criterion(int number, const char* name, const std::function<void()>& body) {
  failure_notes.clear();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    failure_notes.push_back(std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = failure_notes.empty();
  std::printf("%s  criterion %d: %s (%.2fs)\n", pass ? "PASS" : "FAIL", number, name, seconds);
  if (!pass) {
    ++failures;
    for (const std::string& note : failure_notes) std::printf("      - %s\n", note.c_str());
  }
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) / (std::abs(b) + 1e-12) <= tol;
}

// ---------------------------------------------------------------------- 1
void worked_example_replay() {
  // arithmetic: sqrt(4/2) and 9+3-sqrt(4)
  {
    const auto v = eval_arith(cases::arith_sqrt_case());
    expect(v.has_value(), "sqrt case has no value");
    expect(v && fmt_number(*v) == "1.41421356", "sqrt case formats wrong");
    expect(v && rel_close(*v, 1.41421356, 1e-7), "sqrt case off at 8 digits");
  }
  {
    const auto v = eval_arith(cases::arith_subtract_case());
    expect(v && rel_close(*v, 10.0, 1e-9), "subtract case != 10");
  }
  // linear elimination
  {
    const auto [x, y] = solve_linear(96, -6, -6, -2, 6, 0);
    expect(fmt_number(x) == "-0.06382979", "linear x formats wrong: " + fmt_number(x));
    expect(fmt_number(y) == "-0.0212766", "linear y formats wrong: " + fmt_number(y));
    expect(rel_close(x, -0.06382979, 1e-6), "linear x off at 8 digits");
    expect(rel_close(y, -0.0212766, 1e-6), "linear y off");
  }
  // boolean False and True cases
  expect(eval_bool(cases::bool_false_case()) == Truth3::False, "boolean False case");
  expect(eval_bool(cases::bool_double_not_case()) == Truth3::True, "boolean True case");
  // deductive N/A (and the printed True case)
  expect(eval_deductive(cases::deductive_na_case()) == Truth3::NA, "deductive N/A case");
  expect(eval_deductive(cases::deductive_true_case()) == Truth3::True, "deductive True case");
  // abductive False and N/A
  expect(eval_abductive(cases::abductive_false_case(), Truth3::False, 1) == Truth3::False,
         "abductive False case");
  expect(eval_abductive(cases::abductive_na_case(), Truth3::False, 1) == Truth3::NA,
         "abductive N/A case");
  // reachability False
  expect(!reachable(cases::reach_graph_case(), 5, 6), "reachability False case");
  // max-sum N/A
  expect(!max_sum_path(cases::maxsum_small_graph_case(), 1, 4).has_value(), "max-sum N/A case");
}

// ---------------------------------------------------------------------- 2
void oracle_equivalence() {
  constexpr int kPerTask = 10000;
  std::atomic<long long> disagreements{0};

  // arithmetic vs independent postorder evaluation
  parallel_for(kPerTask, ExecMode::Parallel, [&](std::size_t i) {
    const auto s = std::get<ArithmeticSample>(
        generate_sample(Task::Arithmetic, Level::D2, Order::Topological, 101,
                        static_cast<std::uint32_t>(i), {})
            .body);
    const auto check = oracle::eval_arith_postorder(s.dag);
    if (!s.answer || !check || !rel_close(*s.answer, *check, 1e-12))
      ++disagreements;
  });
  expect(disagreements == 0, "arithmetic oracle disagreements");

  // linear: substituted coefficient, determinant, residuals
  disagreements = 0;
  parallel_for(kPerTask, ExecMode::Parallel, [&](std::size_t i) {
    const auto s = std::get<LinearEqSample>(
        generate_sample(Task::LinearEquation, Level::D3, Order::Topological, 102,
                        static_cast<std::uint32_t>(i), {})
            .body);
    const auto tree_value = oracle::eval_arith_postorder(s.tree);
    const double det = s.coeffs[0] * s.coeffs[4] - s.coeffs[3] * s.coeffs[1];
    const bool ok =
        tree_value &&
        *tree_value == s.coeffs[static_cast<std::size_t>(s.substituted_slot)] &&
        std::abs(det) > 1e-9 &&
        std::abs(s.coeffs[0] * s.x + s.coeffs[1] * s.y - s.coeffs[2]) < 1e-6 &&
        std::abs(s.coeffs[3] * s.x + s.coeffs[4] * s.y - s.coeffs[5]) < 1e-6;
    if (!ok)
      ++disagreements;
  });
  expect(disagreements == 0, "linear oracle disagreements");

  // boolean: exhaustive truth tables at depth <= 3
  disagreements = 0;
  parallel_for(kPerTask, ExecMode::Parallel, [&](std::size_t i) {
    const auto s = std::get<LogicSample>(
        generate_sample(Task::BooleanLogic, Level::D2, Order::Topological, 103,
                        static_cast<std::uint32_t>(i), {})
            .body);
    const auto leaves = oracle::leaves_of(s.dag);
    bool ok = true;
    const std::size_t combos = std::size_t{1} << leaves.size();
    for (std::size_t mask = 0; mask < combos && ok; ++mask) {
      Dag assigned = s.dag;
      std::vector<std::optional<Truth3>> override(s.dag.nodes.size());
      for (std::size_t b = 0; b < leaves.size(); ++b) {
        const Truth3 v = (mask >> b) & 1 ? Truth3::True : Truth3::False;
        assigned.nodes[leaves[b]].value = v;
        override[leaves[b]] = v;
      }
      recompute_values(assigned, &bool_eval_op);
      ok = eval_bool(assigned) == oracle::eval_bool_recursive(s.dag, s.dag.root, override);
    }
    if (!ok)
      ++disagreements;
  });
  expect(disagreements == 0, "boolean truth-table disagreements");

  // deductive vs recursive oracle
  disagreements = 0;
  parallel_for(kPerTask, ExecMode::Parallel, [&](std::size_t i) {
    const auto s = std::get<LogicSample>(
        generate_sample(Task::DeductiveLogic, Level::D2, Order::Topological, 104,
                        static_cast<std::uint32_t>(i), {})
            .body);
    const std::vector<std::optional<Truth3>> no_override(s.dag.nodes.size());
    if (s.answer != oracle::eval_deductive_recursive(s.dag, s.dag.root, no_override))
      ++disagreements;
  });
  expect(disagreements == 0, "deductive oracle disagreements");

  // abductive soundness by brute force: the flipped leaf always contradicts
  // the given False root, the abduced value admits a consistent world
  disagreements = 0;
  parallel_for(kPerTask, ExecMode::Parallel, [&](std::size_t i) {
    const auto s = std::get<LogicSample>(
        generate_sample(Task::AbductiveLogic, Level::D2, Order::Topological, 105,
                        static_cast<std::uint32_t>(i), {})
            .body);
    bool ok = s.answer == eval_abductive(s.dag, s.given_root, s.target);
    if (ok && s.given_root == Truth3::False && s.answer != Truth3::NA) {
      const auto leaves = oracle::leaves_of(s.dag);
      std::vector<NodeId> rest;
      for (NodeId l : leaves)
        if (l != s.target) rest.push_back(l);
      const std::size_t combos = std::size_t{1} << rest.size();
      bool flipped_always_contradicts = true;
      bool abduced_has_consistent_world = false;
      for (std::size_t mask = 0; mask < combos; ++mask) {
        std::vector<std::optional<Truth3>> override(s.dag.nodes.size());
        for (std::size_t b = 0; b < rest.size(); ++b)
          override[rest[b]] = (mask >> b) & 1 ? Truth3::True : Truth3::False;
        override[s.target] = kleene_not(s.answer);
        if (oracle::eval_deductive_recursive(s.dag, s.dag.root, override) != Truth3::True)
          flipped_always_contradicts = false;
        override[s.target] = s.answer;
        if (oracle::eval_deductive_recursive(s.dag, s.dag.root, override) != Truth3::True)
          abduced_has_consistent_world = true;
      }
      ok = flipped_always_contradicts && abduced_has_consistent_world;
    }
    if (!ok)
      ++disagreements;
  });
  expect(disagreements == 0, "abductive soundness disagreements");

  // reachability vs BFS
  disagreements = 0;
  parallel_for(kPerTask, ExecMode::Parallel, [&](std::size_t i) {
    const auto s = std::get<ReachSample>(
        generate_sample(Task::Reachability, Level::D2, Order::Topological, 106,
                        static_cast<std::uint32_t>(i), {})
            .body);
    if (s.answer != oracle::reachable_bfs(s.dag, s.src, s.dst))
      ++disagreements;
  });
  expect(disagreements == 0, "reachability oracle disagreements");

  // max-sum vs exhaustive enumeration (10-node graphs)
  disagreements = 0;
  parallel_for(kPerTask, ExecMode::Parallel, [&](std::size_t i) {
    const auto s = std::get<MaxSumSample>(
        generate_sample(Task::MaxSumPath, Level::D2, Order::Topological, 107,
                        static_cast<std::uint32_t>(i), {})
            .body);
    if (s.answer != oracle::max_sum_enumerate(s.dag, s.src, s.dst))
      ++disagreements;
  });
  expect(disagreements == 0, "max-sum oracle disagreements");

  // every generated graph, including extra-link injection, stays acyclic
  disagreements = 0;
  parallel_for(kPerTask, ExecMode::Parallel, [&](std::size_t i) {
    Rng rng = Rng::derive(108, {i});
    Dag tree = gen_tdag(4, 2, arith_constraint(), rng, &arith_eval_op);
    add_extra_links(tree, 2, rng, &arith_eval_op);
    const Dag graph = gen_gdag(static_cast<int>(7 + i % 14), 8, 1, std::nullopt, rng);
    if (oracle::has_cycle_dfs(tree) || oracle::has_cycle_dfs(graph))
      ++disagreements;
  });
  expect(disagreements == 0, "cycle detected in a generated graph");
}

// ---------------------------------------------------------------------- 3
void theorem1_statistics() {
  {
    const CollisionEstimate est = collision_experiment({2, 2, 2, 2}, 100000, 20240801);
    expect(est.feasible, "base regime flagged infeasible");
    expect(std::abs(est.observed_rate - 0.125) <= 3 * est.standard_error,
           "d=2 rate outside 3 SE: " + std::to_string(est.observed_rate));
  }
  {
    const CollisionEstimate est = collision_experiment({2, 2, 3, 2}, 1000000, 20240802);
    expect(std::abs(est.observed_rate - 1.0 / 128.0) <= 3 * est.standard_error,
           "d=3 rate outside 3 SE: " + std::to_string(est.observed_rate));
  }
}

// ---------------------------------------------------------------------- 4
void generation_determinism() {
  RunConfig config;
  config.seeds = {1};
  config.samples_per_cell = 500;
  config.out_dir = "acceptance_gen_a";
  const auto first = cmd_generate(config);
  config.out_dir = "acceptance_gen_b";
  const auto second = cmd_generate(config);
  expect(first.size() == static_cast<std::size_t>(kTaskCount * 4), "file count");
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (slurp(first[i]) != slurp(second[i]))
      expect(false, "file differs between runs: " + first[i]);
  }
}

// ---------------------------------------------------------------------- 5
void balanced_reachability() {
  RunConfig config;
  config.tasks = {Task::Reachability};
  config.levels = {Level::D1};
  config.orders = {Order::Topological};
  config.seeds = {1};
  config.samples_per_cell = 500;
  config.gen.balance_reachability = true;
  config.out_dir = "acceptance_balanced";
  const auto paths = cmd_generate(config);
  const auto records = read_dataset(paths[0]);
  int trues = 0, falses = 0;
  for (const DatasetRecord& r : records) (r.ground_truth == "True" ? trues : falses)++;
  expect(trues == 250 && falses == 250,
         "labels not 250/250: " + std::to_string(trues) + "/" + std::to_string(falses));

  testing::MockEndpoint mock([](const std::string&) { return std::string("<<<True>>>"); });
  config.endpoint = mock.url();
  config.model = "always-true";
  const EvalResult result = cmd_eval(config, paths);
  const std::string table = slurp(result.table_path);
  expect(table.find("\t500\t250\t0\t0.5000") != std::string::npos,
         "constant-True accuracy is not exactly 0.5000");
}

// ---------------------------------------------------------------------- 6
void scoring_fidelity() {
  constexpr int kTotal = 10000;
  const int per_task = kTotal / kTaskCount + 1;
  std::atomic<long long> wrong{0};
  for (Task task : kAllTasks) {
    parallel_for(per_task, ExecMode::Parallel, [&](std::size_t i) {
      GenOptions options;
      if (task == Task::Reachability) options.balance_reachability = true;  // cover both labels
      const Sample s = generate_sample(task, static_cast<Level>(i % 4), Order::Topological, 55,
                                       static_cast<std::uint32_t>(i), options);
      const std::string gt = ground_truth_string(s);
      if (!score_response(task, gt, sample_sigma(task), "<<<" + gt + ">>>").correct)
        ++wrong;
    });
  }
  expect(wrong == 0, "self-consistency loop found incorrect verdicts");

  // the printed partial-calculation failure is scored incorrect at 1e-4
  expect(!score_response(Task::Arithmetic, "20.8333", 1e-4, "<<<20.8167>>>").correct,
         "20.8167 vs 20.8333 not rejected");
}

// ---------------------------------------------------------------------- 7
void trace_consistency() {
  constexpr int kTotal = 10000;
  const int per_task = kTotal / kTaskCount + 1;
  std::atomic<long long> mismatches{0};
  for (Task task : kAllTasks) {
    parallel_for(per_task, ExecMode::Parallel, [&](std::size_t i) {
      const Sample s = generate_sample(task, static_cast<Level>(i % 2), Order::Topological, 77,
                                       static_cast<std::uint32_t>(i), {});
      const TraceRecord t = render_trace(s);
      const auto raw = extract_raw(t.steps);
      if (!raw || *raw != ground_truth_string(s))
        ++mismatches;
    });
  }
  expect(mismatches == 0, "trace answers diverge from ground truth");

  // the stock training mixes generate duplicate-free (arithmetic trees have
  // a large enough outcome space for 4x500 distinct records)
  const auto tree_records =
      gen_training_set(Task::Arithmetic, default_trace_mix(Task::Arithmetic), 5);
  expect(tree_records.size() == 2000, "tree mix size");
  const auto graph_records =
      gen_training_set(Task::Reachability, default_trace_mix(Task::Reachability), 5);
  expect(graph_records.size() == 1000, "graph mix size");
  std::set<std::string> prompts;
  for (const TraceRecord& r : tree_records) prompts.insert(r.input);
  expect(prompts.size() == tree_records.size(), "duplicate tree training prompts");
}

// ---------------------------------------------------------------------- 8
void template_byte_fidelity() {
  for (Task task : kAllTasks) {
    const Sample s = generate_sample(task, Level::D2, Order::Topological, 88, 0, {});
    const std::string& prompt = s.prompt;
    const Dag& dag = s.primary_dag();
    const auto expect_prefix = [&](const char* header) {
      if (prompt.rfind(header, 0) != 0)
        expect(false, std::string(task_name(task)) + ": header bytes differ");
    };
    const auto expect_suffix = [&](std::string tail) {
      const std::size_t root_slot = tail.find("{root}");
      if (root_slot != std::string::npos)
        tail.replace(root_slot, 6, dag.root_node().name);
      if (prompt.size() < tail.size() ||
          prompt.compare(prompt.size() - tail.size(), tail.size(), tail) != 0)
        expect(false, std::string(task_name(task)) + ": closing template bytes differ");
    };
    switch (task) {
      case Task::Arithmetic:
        expect_prefix(tpl::kArithmeticHeader);
        expect_suffix(tpl::kArithmeticTail);
        break;
      case Task::LinearEquation:
        expect_prefix(tpl::kLinearHeader);
        expect_suffix(tpl::kLinearTail);
        break;
      case Task::BooleanLogic:
        expect_prefix(tpl::kBooleanHeader);
        expect_suffix(tpl::kBooleanTail);
        break;
      case Task::DeductiveLogic:
        expect_prefix(tpl::kDeductiveHeader);
        expect_suffix(tpl::kDeductiveTail);
        break;
      case Task::AbductiveLogic:
        expect_prefix(tpl::kAbductiveHeader);
        expect_suffix(tpl::kAbductiveTail);
        break;
      case Task::Reachability:
        expect_prefix(tpl::kReachabilityHeader);
        expect_suffix(tpl::kReachabilityTail);
        break;
      default:
        expect_prefix(tpl::kMaxSumHeader);
        expect_suffix(tpl::kMaxSumTail);
        break;
    }
    // every body line conforms to the node templates: the parser accepts the
    // prompt and reconstructs the very same DAG
    try {
      const Dag parsed = parse_prompt(prompt, task);
      Dag reference = dag;
      if (task == Task::AbductiveLogic || task == Task::Reachability)
        for (DagNode& n : reference.nodes) n.value.reset();
      if (fingerprint(parsed) != fingerprint(reference))
        expect(false, std::string(task_name(task)) + ": masked body mismatch");
    } catch (const std::exception& e) {
      expect(false, std::string(task_name(task)) + ": body line failed template grammar: " +
                        e.what());
    }
  }
}

// ---------------------------------------------------------------------- 9
void mock_endpoint_loop() {
  RunConfig config;
  config.tasks = {Task::Arithmetic, Task::BooleanLogic};
  config.levels = {Level::D1};
  config.orders = {Order::Topological};
  config.seeds = {1};
  config.samples_per_cell = 50;  // 2 tasks x 50 = 100 requests
  config.parallel_requests = 4;
  config.out_dir = "acceptance_eval";
  const auto dataset_paths = cmd_generate(config);

  std::unordered_map<std::string, std::string> truth_by_prompt;
  std::size_t total_records = 0;
  for (const std::string& p : dataset_paths)
    for (const DatasetRecord& r : read_dataset(p)) {
      truth_by_prompt[r.prompt] = r.ground_truth;
      ++total_records;
    }
  expect(total_records == 100, "expected a 100-sample run");

  testing::MockEndpoint mock([&](const std::string& prompt) {
    return "deliberating... <<<" + truth_by_prompt.at(prompt) + ">>>";
  });
  config.endpoint = mock.url();
  config.model = "mock";
  const EvalResult result = cmd_eval(config, dataset_paths);
  expect(result.transport_failures == 0, "transport failures in mock loop");
  expect(read_responses(result.responses_path).size() == total_records,
         "raw responses not fully persisted");

  RunConfig offline = config;
  offline.out_dir = "acceptance_eval_offline";
  const ScoreFiles files = cmd_score(offline, dataset_paths, result.responses_path);
  expect(slurp(files.report_path) == slurp(result.report_path),
         "offline report bytes differ from the eval report");
  expect(slurp(files.table_path) == slurp(result.table_path), "table bytes differ");
  expect(slurp(files.verdicts_path) == slurp(result.verdicts_path), "verdict bytes differ");
}

}  // namespace

int main() {
  std::printf("acceptance suite (%d threads)\n", max_threads());
  run_criterion(1, "worked-example replay", worked_example_replay);
  run_criterion(2, "oracle equivalence, 10^4 samples per task", oracle_equivalence);
  run_criterion(3, "collision statistics vs closed form", theorem1_statistics);
  run_criterion(4, "byte-identical regeneration across runs", generation_determinism);
  run_criterion(5, "balanced reachability and constant-True mock", balanced_reachability);
  run_criterion(6, "scoring self-consistency and failure-case rejection", scoring_fidelity);
  run_criterion(7, "trace-answer consistency and training mixes", trace_consistency);
  run_criterion(8, "template byte fidelity", template_byte_fidelity);
  run_criterion(9, "mock-endpoint eval loop with offline re-score", mock_endpoint_loop);
  if (failures == 0) std::printf("all acceptance criteria passed\n");
  return failures;
}
