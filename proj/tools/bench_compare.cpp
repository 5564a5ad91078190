// Compares the serial reference kernels against the OpenMP-parallel ones and
// verifies that both produce identical results while timing them.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "dagbench/harness.hpp"

using namespace dagbench;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds_since(t0);
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   identical=%s\n", name,
              serial_s, parallel_s, parallel_s > 0 ? serial_s / parallel_s : 0.0,
              identical ? "yes" : "NO");
}

std::vector<std::string> generate_cell(Task task, Level level, int count, ExecMode mode) {
  std::vector<std::string> lines(static_cast<std::size_t>(count));
  parallel_for(lines.size(), mode, [&](std::size_t i) {
    lines[i] = make_record(task, level, Order::Topological, 1, static_cast<std::uint32_t>(i), {})
                   .to_json_line();
  });
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  int gen_count = 20000;
  std::uint64_t trials = 200000;
  if (argc > 1) gen_count = std::atoi(argv[1]);
  if (argc > 2) trials = static_cast<std::uint64_t>(std::atoll(argv[2]));

  std::printf("threads available: %d\n", max_threads());

  {
    std::vector<std::string> serial_out, parallel_out;
    const double ts = timed([&] {
      serial_out = generate_cell(Task::Arithmetic, Level::D4, gen_count, ExecMode::Serial);
    });
    const double tp = timed([&] {
      parallel_out = generate_cell(Task::Arithmetic, Level::D4, gen_count, ExecMode::Parallel);
    });
    report("arithmetic D4 generation", ts, tp, serial_out == parallel_out);
  }

  {
    std::vector<std::string> serial_out, parallel_out;
    const double ts = timed([&] {
      serial_out = generate_cell(Task::MaxSumPath, Level::D3, gen_count / 4, ExecMode::Serial);
    });
    const double tp = timed([&] {
      parallel_out = generate_cell(Task::MaxSumPath, Level::D3, gen_count / 4, ExecMode::Parallel);
    });
    report("max-sum D3 generation", ts, tp, serial_out == parallel_out);
  }

  {
    const CollisionParams params{2, 2, 3, 2};
    CollisionEstimate serial_est, parallel_est;
    const double ts =
        timed([&] { serial_est = collision_experiment(params, trials, 7, ExecMode::Serial); });
    const double tp =
        timed([&] { parallel_est = collision_experiment(params, trials, 7, ExecMode::Parallel); });
    report("collision trials", ts, tp, serial_est.collisions == parallel_est.collisions);
  }

  {
    // scoring throughput over synthetic correct responses
    const std::vector<std::string> lines =
        generate_cell(Task::Arithmetic, Level::D2, gen_count, ExecMode::Parallel);
    std::vector<DatasetRecord> records;
    records.reserve(lines.size());
    for (const std::string& line : lines) records.push_back(DatasetRecord::from_json_line(line));
    std::vector<int> serial_ok(records.size()), parallel_ok(records.size());
    const double ts = timed([&] {
      parallel_for(records.size(), ExecMode::Serial, [&](std::size_t i) {
        const std::string resp = "<<<" + records[i].ground_truth + ">>>";
        serial_ok[i] =
            score_response(records[i].task, records[i].ground_truth, records[i].sigma, resp)
                .correct;
      });
    });
    const double tp = timed([&] {
      parallel_for(records.size(), ExecMode::Parallel, [&](std::size_t i) {
        const std::string resp = "<<<" + records[i].ground_truth + ">>>";
        parallel_ok[i] =
            score_response(records[i].task, records[i].ground_truth, records[i].sigma, resp)
                .correct;
      });
    });
    report("batch scoring", ts, tp, serial_ok == parallel_ok);
  }

  return 0;
}
