#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dsched/rules.hpp"
#include "dsched/value.hpp"

namespace dsched {

// kSortedOnly walks every subset in quality order (caps at 12 rules);
// kAllPermutations walks every ordering of every subset (caps at 7).
enum class SearchSpace { kSortedOnly, kAllPermutations };

struct OracleReport {
  double best_value = 0.0;
  std::vector<Schedule> best_schedules;  // every maximizer, in enumeration order
  std::uint64_t candidates_evaluated = 0;
};

using ScheduleEvaluator = std::function<double(const Schedule&)>;

// Exhaustive reference optimizer. No pruning on purpose: this is the ground
// truth the real optimizers are tested against. The empty schedule is always
// a candidate, so best_value is at least 0. Co-optima are collected with an
// absolute slack of 1e-12.
OracleReport oracle_optimize(const std::vector<Rule>& rules,
                             const ScheduleEvaluator& evaluate, SearchSpace space);

OracleReport oracle_optimize(const std::vector<Rule>& rules,
                             const DeadlineModel& model, SearchSpace space);

// All candidates with their values, in enumeration order. Same caps.
std::vector<std::pair<Schedule, double>> oracle_candidates(
    const std::vector<Rule>& rules, const ScheduleEvaluator& evaluate,
    SearchSpace space);

}  // namespace dsched
