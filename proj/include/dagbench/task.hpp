#pragma once

#include <optional>
#include <string_view>

namespace dagbench {

enum class Task : int {
  Arithmetic = 0,
  LinearEquation,
  BooleanLogic,
  DeductiveLogic,
  AbductiveLogic,
  Reachability,
  MaxSumPath,
};

inline constexpr int kTaskCount = 7;

inline constexpr Task kAllTasks[kTaskCount] = {
    Task::Arithmetic,    Task::LinearEquation, Task::BooleanLogic, Task::DeductiveLogic,
    Task::AbductiveLogic, Task::Reachability,  Task::MaxSumPath,
};

inline bool is_tree_task(Task t) {
  return t == Task::Arithmetic || t == Task::LinearEquation || t == Task::BooleanLogic ||
         t == Task::DeductiveLogic || t == Task::AbductiveLogic;
}

inline bool is_general_task(Task t) { return !is_tree_task(t); }

const char* task_name(Task t);
std::optional<Task> task_from_name(std::string_view name);

}  // namespace dagbench
