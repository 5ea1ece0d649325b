#pragma once

#include <cstdint>
#include <vector>

#include "dsched/distribution.hpp"
#include "dsched/rules.hpp"
#include "dsched/value.hpp"

namespace dsched {

struct TableStats {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t filled = 0;
};

struct OptimizationResult {
  Schedule schedule;
  double value = 0.0;
  DeadlineModel regime;
  TableStats table_stats;
};

// Known deadline: best single rule that fits. Empty result if nothing fits
// or the best fitting quality is 0.
OptimizationResult optimize_fixed_deadline(const std::vector<Rule>& rules,
                                           std::int64_t deadline);

// Linear time cost: single rule maximizing quality - cost*runtime. Empty
// result only when every net is strictly negative; a net of exactly 0 still
// selects a rule (ties prefer shorter runtime, then id).
OptimizationResult optimize_fixed_cost(const std::vector<Rule>& rules, double cost);

// Stochastic deadline, any distribution. Table over (rule, completion time),
// O(n^2 * total runtime). Returns an empty schedule when no candidate has
// positive expected value.
OptimizationResult optimize_general(const std::vector<Rule>& rules,
                                    const DeadlineDistribution& dist);

// uniform(0, width) with width >= total runtime of all rules: quadratic
// recurrence over schedules ending in the highest-quality rule.
OptimizationResult optimize_long_uniform(const std::vector<Rule>& rules,
                                         std::int64_t width);

// uniform(0, width) with width < total runtime: the general table restricted
// to completion times <= width, since later completions can never matter.
OptimizationResult optimize_short_uniform(const std::vector<Rule>& rules,
                                          std::int64_t width);

// Exponential deadline: memorylessness collapses the table to one column.
OptimizationResult optimize_exponential(const std::vector<Rule>& rules, double rate);

}  // namespace dsched
