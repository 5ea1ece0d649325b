#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dsched/distribution.hpp"
#include "dsched/random.hpp"
#include "dsched/rules.hpp"

namespace dsched {

// Samples needed so a mean of [0,1] rewards lands within epsilon_q of the
// truth with probability 1 - delta_q: the two-sided bound
// N >= ln(2/delta_q) / (2*epsilon_q^2).
std::int64_t hoeffding_sample_size(double epsilon_q, double delta_q);

struct EstimatedRuleSet {
  std::vector<Rule> rules;  // qualities replaced by sample means
  std::int64_t sample_count = 0;
  double epsilon_q = 0.0;
  double delta_q = 0.0;
};

// Called as sampler(rule_index, rng) -> one episode reward for that rule.
using EpisodeSampler = std::function<double(std::size_t, Rng&)>;

// Mean of N rewards per rule, N from the bound above. Each rule gets its own
// stream derived from (seed, rule index), so adding a rule does not disturb
// the others' estimates. Rewards are clamped to [0,1].
EstimatedRuleSet estimate_qualities(const EpisodeSampler& sampler,
                                    const std::vector<Rule>& rules,
                                    double epsilon_q, double delta_q,
                                    std::uint64_t seed);

struct DeficitReport {
  std::vector<double> deficits;  // optimal true value minus achieved true value
  double bound = 0.0;            // 2 * epsilon_q
  std::int64_t exceed_count = 0;
  std::int64_t trials = 0;
  std::int64_t sample_count = 0;
  double true_optimum = 0.0;
};

// End-to-end check: estimate qualities from Bernoulli(q) episode rewards,
// optimize against the estimates, then score the chosen schedule under the
// true qualities. The deficit should stay within 2*epsilon_q except with
// roughly per-step probability delta_q.
DeficitReport verify_deficit(const std::vector<Rule>& true_rules,
                             const DeadlineDistribution& dist, double epsilon_q,
                             double delta_q, std::int64_t trials,
                             std::uint64_t seed);

}  // namespace dsched
