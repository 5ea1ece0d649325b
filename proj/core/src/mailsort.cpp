#include "dsched/mailsort.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dsched/errors.hpp"
#include "dsched/optimize.hpp"
#include "dsched/random.hpp"
#include "dsched/value.hpp"

namespace dsched {

void validate_config(const SorterConfig& config) {
  if (!(std::isfinite(config.lambda) && config.lambda > 0.0))
    throw ParameterError("accuracy rate must be > 0");
  if (config.n_networks < 1) throw ParameterError("need at least one recognizer");
  if (!config.runtimes.empty() &&
      config.runtimes.size() != static_cast<std::size_t>(config.n_networks))
    throw ParameterError("runtime list does not match the recognizer count");
  for (std::int64_t t : config.runtimes)
    if (t < 1) throw ParameterError("recognizer runtimes must be >= 1");
  if (!(std::isfinite(config.u1) && std::isfinite(config.u2) && std::isfinite(config.u3)))
    throw ParameterError("outcome utilities must be finite");
  if (!(config.u2 <= config.u3 && config.u3 <= config.u1))
    throw ParameterError("outcome utilities must satisfy wrong <= reject <= correct");
  if (!(config.u1 > config.u2))
    throw ParameterError("correct and wrong outcomes must have distinct utilities");
  if (config.episodes < 0) throw ParameterError("episode count must be >= 0");
  if (!(config.arrival.mean() > 0.0))
    throw ParameterError("arrival distribution must have positive mean");
}

std::vector<Rule> make_network_rules(const SorterConfig& config) {
  validate_config(config);
  std::vector<Rule> rules;
  for (std::int64_t i = 0; i < config.n_networks; ++i) {
    const std::int64_t t = config.runtimes.empty()
                               ? i + 1
                               : config.runtimes[static_cast<std::size_t>(i)];
    const double p = -std::expm1(-config.lambda * static_cast<double>(t));
    char id[24];
    std::snprintf(id, sizeof id, "net%02lld", static_cast<long long>(i + 1));
    rules.push_back({id, config.u2 + p * (config.u1 - config.u2), t});
  }
  rules.push_back({kRejectId, config.u3, 0});
  return rules;
}

namespace {

const Rule* find_reject(const std::vector<Rule>& rules) {
  for (const auto& r : rules)
    if (r.id == kRejectId) return &r;
  throw ParameterError("rule set has no reject rule");
}

std::vector<const Rule*> networks_by_runtime(const std::vector<Rule>& rules) {
  std::vector<const Rule*> nets;
  for (const auto& r : rules)
    if (r.id != kRejectId) nets.push_back(&r);
  std::sort(nets.begin(), nets.end(), [](const Rule* a, const Rule* b) {
    if (a->runtime != b->runtime) return a->runtime < b->runtime;
    if (a->quality != b->quality) return a->quality > b->quality;
    return a->id < b->id;
  });
  if (nets.empty()) throw ParameterError("rule set has no recognizers");
  return nets;
}

}  // namespace

ComparatorSet build_comparators(const std::vector<Rule>& rules,
                                const DeadlineDistribution& arrival) {
  validate_rules(rules);
  const Rule reject = *find_reject(rules);
  const auto nets = networks_by_runtime(rules);

  ComparatorSet out;
  out.bo = optimize_general(rules, arrival).schedule;

  const Rule* single = nullptr;
  double single_value = 0.0;
  for (const Rule* net : nets) {
    const double v = value_stochastic({reject, *net}, arrival);
    if (!single || v > single_value) {
      single = net;
      single_value = v;
    }
  }
  out.best_singleton = {reject, *single};

  const double mean = arrival.mean();
  const Rule* nearest = nets.front();
  for (const Rule* net : nets) {
    if (std::fabs(static_cast<double>(net->runtime) - mean) <
        std::fabs(static_cast<double>(nearest->runtime) - mean))
      nearest = net;
  }
  out.mean_rule = {reject, *nearest};

  const Rule* safe = nullptr;
  for (const Rule* net : nets)
    if (arrival.survival(static_cast<double>(net->runtime)) >= 0.9) safe = net;
  if (!safe) {
    safe = nets.front();
    out.safe_rule_fallback = true;
  }
  out.safe_rule = {reject, *safe};
  return out;
}

namespace {

// What the agent would do if the deadline lands after the step finishing at
// completion[i]: either reject or run recognizer with accuracy p.
struct ActChoice {
  bool is_reject = true;
  double p = 0.0;
};

struct Timeline {
  std::vector<std::int64_t> completions;  // nondecreasing
  std::vector<ActChoice> acting;          // best choice after completions[i]
  std::int64_t total = 0;
};

ActChoice choice_for(const Rule& r, const SorterConfig& config) {
  ActChoice c;
  if (r.id == kRejectId) return c;
  c.is_reject = false;
  c.p = std::clamp((r.quality - config.u2) / (config.u1 - config.u2), 0.0, 1.0);
  return c;
}

Timeline timeline_of(const Schedule& schedule, const SorterConfig& config) {
  Timeline tl;
  double best = -1.0;
  ActChoice current;
  std::int64_t now = 0;
  for (const auto& r : schedule) {
    now += r.runtime;
    if (r.quality > best) {
      best = r.quality;
      current = choice_for(r, config);
    }
    tl.completions.push_back(now);
    tl.acting.push_back(current);
  }
  tl.total = now;
  return tl;
}

Timeline timeline_of(const UniversalProgram& prog, const MachineSpeedup& m,
                     const SorterConfig& config) {
  Timeline tl;
  double best = -1.0;
  ActChoice current;
  std::int64_t now = 0;
  for (const auto& stage : prog.stages) {
    for (const auto& r : stage.schedule) {
      now += scaled_runtime(r.runtime, m);
      if (r.quality > best) {
        best = r.quality;
        current = choice_for(r, config);
      }
      tl.completions.push_back(now);
      tl.acting.push_back(current);
    }
  }
  tl.total = now;
  return tl;
}

SimStats run_timeline(const Timeline& tl, const SorterConfig& config) {
  validate_config(config);
  SimStats stats;
  stats.episodes = config.episodes;
  if (config.episodes == 0) return stats;

  const std::int64_t n = config.episodes;
  std::int64_t correct = 0, wrong = 0, rejected = 0;
  double su = 0, su2 = 0, sd = 0, sd2 = 0, sud = 0, sa = 0, sa2 = 0;

  for (std::int64_t e = 0; e < n; ++e) {
    const std::uint64_t ep = derive_seed(config.seed, static_cast<std::uint64_t>(e));
    Rng deadline_rng(derive_seed(ep, 0));
    Rng outcome_rng(derive_seed(ep, 1));

    double d = config.arrival.sample(deadline_rng);
    while (d <= 0.0) d = config.arrival.sample(deadline_rng);

    // Last step finished by the deadline; finishing exactly on it counts.
    std::ptrdiff_t idx = -1;
    {
      auto it = std::upper_bound(tl.completions.begin(), tl.completions.end(), d,
                                 [](double v, std::int64_t t) {
                                   return v < static_cast<double>(t);
                                 });
      idx = (it - tl.completions.begin()) - 1;
    }

    double u;
    if (idx < 0 || tl.acting[static_cast<std::size_t>(idx)].is_reject) {
      u = config.u3;
      ++rejected;
    } else if (outcome_rng.uniform01() <
               tl.acting[static_cast<std::size_t>(idx)].p) {
      u = config.u1;
      ++correct;
    } else {
      u = config.u2;
      ++wrong;
    }

    const double act = std::min(d, static_cast<double>(tl.total));
    su += u;
    su2 += u * u;
    sd += d;
    sd2 += d * d;
    sud += u * d;
    sa += act;
    sa2 += act * act;
  }

  const double dn = static_cast<double>(n);
  stats.mean_utility = su / dn;
  stats.total_time = sd;
  stats.mean_act_time = sa / dn;
  stats.accuracy = static_cast<double>(correct) / dn;
  stats.reject_rate = static_cast<double>(rejected) / dn;
  stats.error_rate = static_cast<double>(wrong) / dn;
  stats.utility_per_second = su / sd;

  if (n > 1) {
    const double var_u = std::max(0.0, (su2 - dn * stats.mean_utility * stats.mean_utility) / (dn - 1.0));
    stats.se_utility = std::sqrt(var_u / dn);
    const double var_a = std::max(0.0, (sa2 - dn * stats.mean_act_time * stats.mean_act_time) / (dn - 1.0));
    stats.se_act_time = std::sqrt(var_a / dn);
    // Ratio-of-means error via the linearized residual u - R*d.
    const double r = stats.utility_per_second;
    const double var_z = std::max(0.0, (su2 - 2.0 * r * sud + r * r * sd2) / dn);
    stats.se_utility_per_second = std::sqrt(var_z / dn) / (sd / dn);
    stats.se_accuracy = std::sqrt(stats.accuracy * (1.0 - stats.accuracy) / dn);
    stats.se_reject_rate = std::sqrt(stats.reject_rate * (1.0 - stats.reject_rate) / dn);
  }
  return stats;
}

}  // namespace

SimStats run_episodes(const Schedule& schedule, const SorterConfig& config) {
  validate_rules(schedule);
  return run_timeline(timeline_of(schedule, config), config);
}

SimStats run_universal_episodes(const UniversalProgram& prog, const MachineSpeedup& m,
                                const SorterConfig& config) {
  return run_timeline(timeline_of(prog, m, config), config);
}

namespace {

SweepRow row_from(double param, std::string program, const SimStats& s) {
  return {param, std::move(program), s.utility_per_second, s.se_utility_per_second,
          s.accuracy, s.reject_rate};
}

}  // namespace

std::vector<SweepRow> sweep_experiment(SweepKind kind, const SorterConfig& base) {
  validate_config(base);
  std::vector<SweepRow> rows;

  if (kind == SweepKind::kFig7) {
    const auto rules = make_network_rules(base);
    const auto prog = build_universal(rules, 1);
    const MachineSpeedup fast{4.0};
    for (std::int64_t mean = 1; mean <= 20; ++mean) {
      SorterConfig cfg = base;
      cfg.arrival = DeadlineDistribution::poisson(static_cast<double>(mean));
      cfg.seed = derive_seed(base.seed, static_cast<std::uint64_t>(mean));
      const Schedule best = optimize_general(rules, cfg.arrival).schedule;
      rows.push_back(row_from(static_cast<double>(mean), "universal",
                              run_universal_episodes(prog, fast, cfg)));
      rows.push_back(row_from(static_cast<double>(mean), "optimal",
                              run_episodes(best, cfg)));
    }
    return rows;
  }

  const bool by_mean = kind == SweepKind::kFig4;
  const std::vector<std::int64_t> grid =
      by_mean ? [] {
        std::vector<std::int64_t> g;
        for (std::int64_t m = 1; m <= 20; ++m) g.push_back(m);
        return g;
      }()
              : std::vector<std::int64_t>{0, 3, 6, 9, 12, 15, 18};

  for (std::int64_t point : grid) {
    SorterConfig cfg = base;
    cfg.arrival = by_mean
                      ? DeadlineDistribution::poisson(static_cast<double>(point))
                      : DeadlineDistribution::uniform(20.0 - static_cast<double>(point),
                                                     20.0 + static_cast<double>(point));
    cfg.seed = derive_seed(base.seed, static_cast<std::uint64_t>(point) + 1000);
    const auto rules = make_network_rules(cfg);
    const auto comps = build_comparators(rules, cfg.arrival);
    const double param = static_cast<double>(point);
    rows.push_back(row_from(param, "bo", run_episodes(comps.bo, cfg)));
    rows.push_back(row_from(param, "singleton", run_episodes(comps.best_singleton, cfg)));
    rows.push_back(row_from(param, "rule50", run_episodes(comps.mean_rule, cfg)));
    rows.push_back(row_from(param, "rule90", run_episodes(comps.safe_rule, cfg)));
  }
  return rows;
}

}  // namespace dsched
