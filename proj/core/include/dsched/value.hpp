#pragma once

#include <cstdint>
#include <variant>

#include "dsched/distribution.hpp"
#include "dsched/rules.hpp"

namespace dsched {

// Episode timing regime. Exactly one of: the deadline is known, time has a
// linear cost, or the deadline is drawn from a distribution and announced by
// a herald the moment it arrives.
struct FixedDeadline {
  std::int64_t at = 0;
};
struct FixedTimeCost {
  double per_step = 0.0;
};
struct StochasticDeadline {
  DeadlineDistribution dist;
  bool heralded = true;
};
using DeadlineModel = std::variant<FixedDeadline, FixedTimeCost, StochasticDeadline>;

// Quality of the best rule completing by the deadline; 0 if none does.
// A rule finishing exactly at the deadline counts.
double value_fixed_deadline(const Schedule& s, std::int64_t deadline);

// Best quality in the schedule minus cost_per_step times total runtime.
// The whole schedule runs; there is no interrupt.
double value_fixed_cost(const Schedule& s, double cost_per_step);

// Expected quality at the deadline: sum over steps of
// [P(d < T_{i+1}) - P(d < T_i)] * (best quality among the first i steps),
// with the final bracket closed at probability 1. Works for unsorted input.
double value_stochastic(const Schedule& s, const DeadlineDistribution& dist);

// Closed form for uniform(0, width) when the window covers the whole
// schedule: each step's runtime contributes interval mass runtime/width.
// Exact only for quality-ascending schedules.
double value_long_uniform(const Schedule& s, std::int64_t width);

// Closed form for an exponential deadline with the given rate, built from
// per-step interruption odds p_i = 1 - e^{-rate*t_i}. Exact only for
// quality-ascending schedules.
double value_exponential(const Schedule& s, double rate);

double value_of(const Schedule& s, const DeadlineModel& model);

}  // namespace dsched
