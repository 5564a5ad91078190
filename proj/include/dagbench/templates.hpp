#pragma once

// Versioned prompt-template resource. Every byte of the rendered prompts
// comes from the constants below plus the per-node sentences in describe.cpp;
// keep this file stable, bump the version on any wording change.
// Note "For exmaple" in the max-sum closing is intentional.

namespace dagbench::tpl {

inline constexpr const char* kVersion = "prompt-templates-v1";

inline constexpr const char* kArithmeticHeader =
    "Here is a description of an arithmetic problem:\n";
inline constexpr const char* kArithmeticTail =
    "\nCompute the result of {root}. If the solution cannot be calculated, answer 'N/A'. Ensure "
    "your result is within a relative precision of 0.0001 (or 0.01%) compared to the ground truth "
    "value. Ensure your final result begins with '<<<' and ends with '>>>', for example, if the "
    "answer is 1, your final result should be <<<1>>>.";

inline constexpr const char* kLinearHeader =
    "Given the following linear equation system with two variables:\n\n";
inline constexpr const char* kLinearCalc = "\n\nThe calculation of {root} is defined as:\n";
inline constexpr const char* kLinearTail =
    "\n\nDetermine the values of x and y. Ensure your results are within a relative precision of "
    "0.001 (or 0.1%) compared to the ground truth values. Your response should be formatted as: "
    "<<<x's value y's value>>>, e.g., if x=1 and y=2, then it should be <<<1 2>>>";

inline constexpr const char* kBooleanHeader =
    "Here is a description of a boolean logic problem:\n";
inline constexpr const char* kBooleanTail =
    "\nCompute the result of {root}. If the solution can not be calculated, answer 'N/A'. Ensure "
    "your final result begins with '<<<' and ends with '>>>', for example, if the answer is True, "
    "your final result should be <<<True>>>.";

inline constexpr const char* kDeductiveHeader =
    "Here is a description of a deductive logic problem:\n";
inline constexpr const char* kDeductiveTail =
    "\nThe symbol '->' represents a deductive relationship, e.g., A -> B implies that if A is "
    "true, then B is true. If A is false, B's truth value remains undetermined (N/A). Deduce the "
    "result of {root}. If the solution can not be deduced, answer 'N/A'. Ensure your final result "
    "begins with '<<<' and ends with '>>>', for example, if the answer is True, your final result "
    "should be <<<True>>>.";

inline constexpr const char* kAbductiveHeader =
    "Here is a description of an abductive logic problem:\n";
inline constexpr const char* kAbductiveQuestion =
    "Given {root} is {value}, what is the value of {leaf}?";
inline constexpr const char* kAbductiveTail =
    "\nThe symbol '->' represents a deductive relationship, e.g., A -> B implies that if B is "
    "false, then A is false. If B is true, A's truth value remains undetermined (N/A). If the "
    "solution can not be abduced, answer 'N/A'. Ensure your final result begins with '<<<' and "
    "ends with '>>>', for example, if the answer is True, your final result should be <<<True>>>.";

inline constexpr const char* kReachabilityHeader = "Given a directed graph:\n";
inline constexpr const char* kReachabilityQuestion =
    "Can {dst} be reached starting from {src}?";
inline constexpr const char* kReachabilityTail =
    "\nRespond with either '<<<True>>>' if reachable, or '<<<False>>>' otherwise.";

inline constexpr const char* kMaxSumHeader =
    "Given a directed graph with values assigned to each node:\n";
inline constexpr const char* kMaxSumQuestion =
    "What's the maximum sum path from {src} to {dst}?";
inline constexpr const char* kMaxSumTail =
    "\nFor exmaple, the value of the path A->B->C is obtained by summing the values of nodes A, "
    "B, and C. Please format your response as <<<Answer>>>. For example, if the answer is 1, it "
    "should be presented as <<<1>>>.";

}  // namespace dagbench::tpl
