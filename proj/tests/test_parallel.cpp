#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <numeric>

#include "dagbench/harness.hpp"

using namespace dagbench;

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(10000, 0);
  parallel_for(hits.size(), ExecMode::Parallel, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 10000);
  CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
  CHECK(*std::max_element(hits.begin(), hits.end()) == 1);
}

TEST_CASE("parallel_count matches a serial count") {
  const auto pred = [](std::size_t i) { return (i * 2654435761u) % 7 == 0; };
  const auto serial = parallel_count(50000, ExecMode::Serial, pred);
  const auto parallel = parallel_count(50000, ExecMode::Parallel, pred);
  CHECK(serial == parallel);
}

TEST_CASE("batch generation is bit-identical across execution modes") {
  for (Task task : {Task::Arithmetic, Task::DeductiveLogic, Task::MaxSumPath}) {
    std::vector<std::string> serial_lines(64), parallel_lines(64);
    parallel_for(serial_lines.size(), ExecMode::Serial, [&](std::size_t i) {
      serial_lines[i] =
          make_record(task, Level::D2, Order::Random, 9, static_cast<std::uint32_t>(i), {})
              .to_json_line();
    });
    parallel_for(parallel_lines.size(), ExecMode::Parallel, [&](std::size_t i) {
      parallel_lines[i] =
          make_record(task, Level::D2, Order::Random, 9, static_cast<std::uint32_t>(i), {})
              .to_json_line();
    });
    CHECK(serial_lines == parallel_lines);
  }
}

TEST_CASE("cmd_generate output does not depend on the execution mode") {
  RunConfig serial;
  serial.tasks = {Task::BooleanLogic};
  serial.levels = {Level::D1};
  serial.orders = {Order::Topological, Order::Random};
  serial.seeds = {1};
  serial.samples_per_cell = 40;
  serial.exec = ExecMode::Serial;
  serial.out_dir = "parallel_test_serial";
  RunConfig parallel = serial;
  parallel.exec = ExecMode::Parallel;
  parallel.out_dir = "parallel_test_parallel";

  const auto serial_paths = cmd_generate(serial);
  const auto parallel_paths = cmd_generate(parallel);
  REQUIRE(serial_paths.size() == parallel_paths.size());
  for (std::size_t i = 0; i < serial_paths.size(); ++i) {
    std::ifstream a(serial_paths[i]), b(parallel_paths[i]);
    const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK_FALSE(sa.empty());
  }
}
