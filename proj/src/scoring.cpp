#include "dagbench/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace dagbench {

AnswerShape answer_shape(Task task) {
  switch (task) {
    case Task::Arithmetic:
    case Task::MaxSumPath:
      return AnswerShape::NumberOrNA;
    case Task::LinearEquation:
      return AnswerShape::NumberPair;
    default:
      return AnswerShape::TruthToken;
  }
}

std::optional<std::string> extract_raw(const std::string& response) {
  // last well-formed "<<<...>>>" pair wins
  std::optional<std::string> result;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t open = response.find("<<<", pos);
    if (open == std::string::npos) break;
    const std::size_t close = response.find(">>>", open + 3);
    if (close == std::string::npos) break;
    result = response.substr(open + 3, close - open - 3);
    pos = close + 3;
  }
  return result;
}

namespace {

std::string trimmed_lower(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<Truth3> parse_truth_token(const std::string& raw) {
  const std::string t = trimmed_lower(raw);
  if (t == "true") return Truth3::True;
  if (t == "false") return Truth3::False;
  if (t == "n/a") return Truth3::NA;
  return std::nullopt;
}

// plain decimal: optional sign, digits, optional fractional part
std::optional<double> parse_plain_number(const std::string& token) {
  if (token.empty()) return std::nullopt;
  std::size_t i = 0;
  if (token[i] == '+' || token[i] == '-') ++i;
  bool digits = false, dot = false;
  for (; i < token.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(token[i]))) {
      digits = true;
    } else if (token[i] == '.' && !dot) {
      dot = true;
    } else {
      return std::nullopt;
    }
  }
  if (!digits) return std::nullopt;
  try {
    return std::stod(token);
  } catch (const std::out_of_range&) {  // absurdly long digit strings
    return std::nullopt;
  }
}

std::vector<std::string> whitespace_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

}  // namespace

std::optional<Extracted> extract(const std::string& response, AnswerShape shape) {
  const auto raw = extract_raw(response);
  if (!raw) return std::nullopt;
  Extracted e;
  e.raw = *raw;
  switch (shape) {
    case AnswerShape::TruthToken: {
      e.truth = parse_truth_token(*raw);
      if (!e.truth) return std::nullopt;
      return e;
    }
    case AnswerShape::NumberOrNA: {
      e.truth = parse_truth_token(*raw);
      if (e.truth == Truth3::NA) return e;
      const auto tokens = whitespace_tokens(*raw);
      if (tokens.size() != 1) return std::nullopt;
      e.truth.reset();
      e.number = parse_plain_number(tokens[0]);
      if (!e.number) return std::nullopt;
      return e;
    }
    default: {
      const auto tokens = whitespace_tokens(*raw);
      if (tokens.size() != 2) return std::nullopt;
      const auto a = parse_plain_number(tokens[0]);
      const auto b = parse_plain_number(tokens[1]);
      if (!a || !b) return std::nullopt;
      e.pair = std::make_pair(*a, *b);
      return e;
    }
  }
}

bool numeric_match(double pred, double gt, double sigma) {
  return std::abs(pred - gt) / (std::abs(gt) + kScoreEpsilon) <= sigma;
}

Verdict score_response(Task task, const std::string& ground_truth, double sigma,
                       const std::string& response) {
  Verdict v;
  const auto raw = extract_raw(response);
  if (!raw) {
    v.reason = "no_answer";
    return v;
  }
  v.extracted = *raw;
  const auto e = extract(response, answer_shape(task));
  if (!e) {
    v.reason = "malformed";
    return v;
  }
  switch (answer_shape(task)) {
    case AnswerShape::TruthToken: {
      const auto gt = parse_truth_token(ground_truth);
      v.correct = gt && e->truth == *gt;
      break;
    }
    case AnswerShape::NumberOrNA: {
      if (ground_truth == "N/A") {
        v.correct = e->truth == Truth3::NA;
      } else {
        v.correct = e->number && numeric_match(*e->number, std::stod(ground_truth), sigma);
      }
      break;
    }
    default: {
      const auto tokens = whitespace_tokens(ground_truth);
      const double gx = std::stod(tokens[0]), gy = std::stod(tokens[1]);
      v.correct = e->pair && numeric_match(e->pair->first, gx, sigma) &&
                  numeric_match(e->pair->second, gy, sigma);
      break;
    }
  }
  v.reason = v.correct ? "ok" : "wrong";
  return v;
}

ScoreReport::SeedSummary ScoreReport::summary(Task task, Level level, Order order) const {
  std::vector<double> acc;
  for (const auto& [key, stat] : cells)
    if (key.task == task && key.level == level && key.order == order && stat.total > 0)
      acc.push_back(stat.accuracy());
  SeedSummary s;
  s.seeds = static_cast<int>(acc.size());
  if (acc.empty()) return s;
  double mean = 0;
  for (double a : acc) mean += a;
  mean /= static_cast<double>(acc.size());
  s.mean = mean;
  if (acc.size() > 1) {
    double var = 0;
    for (double a : acc) var += (a - mean) * (a - mean);
    var /= static_cast<double>(acc.size() - 1);
    s.stderr_mean = std::sqrt(var / static_cast<double>(acc.size()));
  }
  return s;
}

double ScoreReport::level_average(Task task, Level level) const {
  double sum = 0;
  int n = 0;
  for (Order order : {Order::Topological, Order::Reversed, Order::Random}) {
    const SeedSummary s = summary(task, level, order);
    if (s.seeds > 0) {
      sum += s.mean;
      ++n;
    }
  }
  return n ? sum / n : 0.0;
}

namespace {

std::string pct_cell(const ScoreReport::SeedSummary& s) {
  if (s.seeds == 0) return "      -     ";  // order not in this run's grid
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%6.2f±%-5.2f", s.mean * 100.0, s.stderr_mean * 100.0);
  return buf;
}

}  // namespace

std::string ScoreReport::render_text() const {
  std::set<std::pair<Task, Level>> rows;
  for (const auto& [key, stat] : cells) rows.insert({key.task, key.level});
  for (const CellKey& key : missing) rows.insert({key.task, key.level});

  std::ostringstream out;
  out << "task             level  topological    reversed       random         avg\n";
  for (const auto& [task, level] : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-16s %-6s", task_name(task), level_name(level));
    out << line;
    for (Order order : {Order::Topological, Order::Reversed, Order::Random})
      out << ' ' << pct_cell(summary(task, level, order));
    char avg[32];
    std::snprintf(avg, sizeof(avg), " %6.2f", level_average(task, level) * 100.0);
    out << avg << '\n';
  }
  if (!missing.empty()) {
    out << "missing cells:\n";
    for (const CellKey& key : missing)
      out << "  " << task_name(key.task) << ' ' << level_name(key.level) << ' '
          << order_name(key.order) << " seed=" << key.seed << '\n';
  }
  return out.str();
}

std::string ScoreReport::render_table() const {
  std::ostringstream out;
  out << "task\tlevel\torder\tseed\tsamples\tcorrect\tunanswered\taccuracy\n";
  for (const auto& [key, stat] : cells) {
    char acc[32];
    std::snprintf(acc, sizeof(acc), "%.4f", stat.accuracy());
    out << task_name(key.task) << '\t' << level_name(key.level) << '\t' << order_name(key.order)
        << '\t' << key.seed << '\t' << stat.total << '\t' << stat.correct << '\t'
        << stat.unanswered << '\t' << acc << '\n';
  }
  return out.str();
}

ScoreReport aggregate(const std::vector<ScoredItem>& items, const std::vector<CellKey>& grid) {
  if (grid.empty()) throw IntegrityError("empty scoring grid");
  ScoreReport report;
  for (const CellKey& key : grid) report.cells.emplace(key, CellStat{});
  for (const ScoredItem& item : items) {
    const auto it = report.cells.find(item.key);
    if (it == report.cells.end())
      throw IntegrityError("scored item outside the configured grid");
    CellStat& stat = it->second;
    ++stat.total;
    if (item.verdict.correct) ++stat.correct;
    if (item.verdict.reason == "unanswered") ++stat.unanswered;
  }
  for (auto it = report.cells.begin(); it != report.cells.end();) {
    if (it->second.total == 0) {
      report.missing.push_back(it->first);
      it = report.cells.erase(it);
    } else {
      ++it;
    }
  }
  return report;
}

}  // namespace dagbench
