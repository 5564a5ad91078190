#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dagbench/complexity.hpp"
#include "dagbench/task.hpp"

namespace dagbench {

inline constexpr double kScoreEpsilon = 1e-9;

enum class AnswerShape { TruthToken, NumberOrNA, NumberPair };

AnswerShape answer_shape(Task task);

/// Content of the last well-formed <<<...>>> pair, parsed against the
/// expected shape. Truth tokens match case-insensitively among
/// {true, false, n/a}; numbers are plain decimals with an optional sign;
/// pairs are two whitespace-separated numbers.
struct Extracted {
  std::string raw;
  std::optional<Truth3> truth;
  std::optional<double> number;
  std::optional<std::pair<double, double>> pair;
};

std::optional<std::string> extract_raw(const std::string& response);
std::optional<Extracted> extract(const std::string& response, AnswerShape shape);

/// Relative-precision acceptance: |pred - gt| / (|gt| + epsilon) <= sigma.
/// The denominator takes the magnitude of the ground truth so that negative
/// answers behave symmetrically.
bool numeric_match(double pred, double gt, double sigma);

struct Verdict {
  bool correct = false;
  std::string extracted;  // raw delimiter content, empty when absent
  std::string reason;     // "ok", "no_answer", "malformed", "wrong", "unanswered"
};

/// Scores a raw response against the canonical ground-truth string. Missing
/// or malformed answers count as incorrect. Numeric tasks use numeric_match
/// at `sigma`; the pair shape requires both coordinates to pass; truth tasks
/// require the exact token (an N/A ground truth must be answered N/A).
Verdict score_response(Task task, const std::string& ground_truth, double sigma,
                       const std::string& response);

struct CellKey {
  Task task = Task::Arithmetic;
  Level level = Level::D1;
  Order order = Order::Topological;
  std::uint64_t seed = 0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct CellStat {
  std::uint64_t total = 0;
  std::uint64_t correct = 0;
  std::uint64_t unanswered = 0;  // transport failures, counted incorrect

  double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
};

struct ScoredItem {
  CellKey key;
  Verdict verdict;
};

/// Aggregated accuracy over the (task, level, order, seed) grid: per-cell
/// accuracy, mean and standard error of the mean across seeds per
/// (task, level, order), and the per-level average across orders. Expected
/// cells with no scored samples are reported as missing, never dropped.
struct ScoreReport {
  std::map<CellKey, CellStat> cells;
  std::vector<CellKey> missing;

  struct SeedSummary {
    double mean = 0;
    double stderr_mean = 0;
    int seeds = 0;
  };

  SeedSummary summary(Task task, Level level, Order order) const;
  double level_average(Task task, Level level) const;

  /// Human-readable grid: rows (task, level), columns (order), cells
  /// "mean - stderr" in percent ("95.00 +/- 0.40" prints as 95.00±0.40).
  std::string render_text() const;
  /// Flat table, one row per grid cell.
  std::string render_table() const;
};

ScoreReport aggregate(const std::vector<ScoredItem>& items, const std::vector<CellKey>& grid);

}  // namespace dagbench
