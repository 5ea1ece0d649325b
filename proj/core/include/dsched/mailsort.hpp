#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsched/distribution.hpp"
#include "dsched/rules.hpp"
#include "dsched/universal.hpp"

namespace dsched {

inline constexpr const char* kRejectId = "reject";

// A bank of recognizers: running longer buys accuracy 1 - e^{-lambda*t}.
// Episodes end in sort-correct (u1), sort-wrong (u2), or reject (u3).
struct SorterConfig {
  double lambda = 0.9;
  std::int64_t n_networks = 40;
  std::vector<std::int64_t> runtimes;  // empty = 1..n_networks
  double u1 = 1.0;
  double u2 = 0.0;
  double u3 = 0.25;
  DeadlineDistribution arrival = DeadlineDistribution::poisson(9.0);
  std::int64_t episodes = 100000;
  std::uint64_t seed = 1;
};

void validate_config(const SorterConfig& config);

// One rule per recognizer runtime (quality p*u1 + (1-p)*u2) plus the
// zero-runtime reject rule at quality u3.
std::vector<Rule> make_network_rules(const SorterConfig& config);

// The four policies compared in the sweeps. All but the optimized sequence
// lead with the reject rule so an early deadline still gets the reject act.
struct ComparatorSet {
  Schedule bo;               // full stochastic-deadline optimization
  Schedule best_singleton;   // reject + the single best recognizer for this arrival
  Schedule mean_rule;        // reject + recognizer whose runtime matches the arrival mean
  Schedule safe_rule;        // reject + longest recognizer finishing with probability >= 0.9
  bool safe_rule_fallback = false;  // no recognizer was safe enough; shortest used
};

ComparatorSet build_comparators(const std::vector<Rule>& rules,
                                const DeadlineDistribution& arrival);

struct SimStats {
  std::int64_t episodes = 0;
  double mean_utility = 0.0, se_utility = 0.0;
  double utility_per_second = 0.0, se_utility_per_second = 0.0;
  double accuracy = 0.0, se_accuracy = 0.0;
  double reject_rate = 0.0, se_reject_rate = 0.0;
  double error_rate = 0.0;
  double mean_act_time = 0.0, se_act_time = 0.0;
  double total_time = 0.0;
};

// Seeded and reproducible: episode e draws from streams derived from
// (seed, e), so runs with the same config are bitwise identical and two
// programs under the same seed face the same deadlines.
SimStats run_episodes(const Schedule& schedule, const SorterConfig& config);

// Same episode loop, but executing the staged doubling program on a
// sped-up machine.
SimStats run_universal_episodes(const UniversalProgram& prog, const MachineSpeedup& m,
                                const SorterConfig& config);

// fig4: arrival-mean sweep of the four comparators under Poisson deadlines.
// fig5: spread sweep at fixed mean 20, widening uniform windows.
// fig7: staged program on a 4x machine vs the per-mean optimum on the base machine.
enum class SweepKind { kFig4, kFig5, kFig7 };

struct SweepRow {
  double sweep_param = 0.0;
  std::string program;
  double utility_per_sec = 0.0;
  double stderr_ups = 0.0;
  double accuracy = 0.0;
  double reject_rate = 0.0;
};

std::vector<SweepRow> sweep_experiment(SweepKind kind, const SorterConfig& base);

}  // namespace dsched
