#include "dsched/learning.hpp"

#include <algorithm>
#include <cmath>

#include "dsched/errors.hpp"
#include "dsched/optimize.hpp"
#include "dsched/value.hpp"

namespace dsched {

std::int64_t hoeffding_sample_size(double epsilon_q, double delta_q) {
  if (!(epsilon_q > 0.0 && epsilon_q <= 1.0))
    throw ParameterError("accuracy must be in (0, 1]");
  if (!(delta_q > 0.0 && delta_q < 1.0))
    throw ParameterError("confidence level must be in (0, 1)");
  const double x = std::log(2.0 / delta_q) / (2.0 * epsilon_q * epsilon_q);
  // Relative slack keeps an analytically-integer bound from ceiling up when
  // the float lands epsilon above it.
  return static_cast<std::int64_t>(std::ceil(x * (1.0 - 1e-12)));
}

EstimatedRuleSet estimate_qualities(const EpisodeSampler& sampler,
                                    const std::vector<Rule>& rules,
                                    double epsilon_q, double delta_q,
                                    std::uint64_t seed) {
  validate_rules(rules);
  EstimatedRuleSet out;
  out.sample_count = hoeffding_sample_size(epsilon_q, delta_q);
  out.epsilon_q = epsilon_q;
  out.delta_q = delta_q;
  out.rules = rules;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    Rng rng(derive_seed(seed, i));
    double sum = 0.0;
    for (std::int64_t n = 0; n < out.sample_count; ++n)
      sum += std::clamp(sampler(i, rng), 0.0, 1.0);
    out.rules[i].quality = sum / static_cast<double>(out.sample_count);
  }
  return out;
}

DeficitReport verify_deficit(const std::vector<Rule>& true_rules,
                             const DeadlineDistribution& dist, double epsilon_q,
                             double delta_q, std::int64_t trials,
                             std::uint64_t seed) {
  validate_rules(true_rules);
  if (trials < 0) throw ParameterError("trial count must be >= 0");
  for (const auto& r : true_rules)
    if (r.quality > 1.0)
      throw ParameterError("rule " + r.id + ": reward sampling needs quality <= 1");

  DeficitReport report;
  report.bound = 2.0 * epsilon_q;
  report.trials = trials;
  report.sample_count = hoeffding_sample_size(epsilon_q, delta_q);
  report.true_optimum = optimize_general(true_rules, dist).value;

  const EpisodeSampler bernoulli_rewards = [&true_rules](std::size_t i, Rng& rng) {
    return rng.bernoulli(true_rules[i].quality) ? 1.0 : 0.0;
  };

  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const auto est =
        estimate_qualities(bernoulli_rewards, true_rules, epsilon_q, delta_q,
                           derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const Schedule chosen = optimize_general(est.rules, dist).schedule;
    std::vector<std::string> ids;
    for (const auto& r : chosen) ids.push_back(r.id);
    const double achieved =
        value_stochastic(resolve_schedule(true_rules, ids), dist);
    // The optimizer's argmax can sit a few ulps under a co-optimum it did not
    // pick; a deficit is never truly negative.
    const double deficit = std::max(0.0, report.true_optimum - achieved);
    report.deficits.push_back(deficit);
    if (deficit > report.bound) ++report.exceed_count;
  }
  return report;
}

}  // namespace dsched
