#include "dsched/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "dsched/errors.hpp"

namespace dsched {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool ids_less(const Schedule& a, const Schedule& b) {
  const std::size_t m = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].id != b[i].id) return a[i].id < b[i].id;
  }
  return a.size() < b.size();
}

OptimizationResult pick_singleton(const std::vector<Rule>& rules,
                                  const std::function<bool(const Rule&)>& eligible,
                                  const std::function<double(const Rule&)>& score) {
  OptimizationResult out;
  const Rule* best = nullptr;
  double best_score = kNegInf;
  for (const auto& r : rules) {
    if (!eligible(r)) continue;
    const double v = score(r);
    if (!best || v > best_score ||
        (v == best_score && (r.runtime < best->runtime ||
                             (r.runtime == best->runtime && r.id < best->id)))) {
      best = &r;
      best_score = v;
    }
  }
  if (best) {
    out.schedule = {*best};
    out.value = best_score;
  }
  return out;
}

// Drop a tail that adds nothing: re-evaluate every prefix with the regime's
// own value function and keep the shortest one achieving the maximum.
Schedule trim_to_best_prefix(const Schedule& s,
                             const std::function<double(const Schedule&)>& eval) {
  double best = kNegInf;
  std::size_t keep = 0;
  Schedule prefix;
  for (std::size_t i = 0; i < s.size(); ++i) {
    prefix.push_back(s[i]);
    const double v = eval(prefix);
    if (v > best) {
      best = v;
      keep = i + 1;
    }
  }
  return Schedule(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(keep));
}

OptimizationResult finish_stochastic(Schedule chain, DeadlineModel regime,
                                     TableStats stats,
                                     const std::function<double(const Schedule&)>& eval) {
  OptimizationResult out;
  out.regime = std::move(regime);
  out.table_stats = stats;
  if (!chain.empty()) {
    chain = trim_to_best_prefix(chain, eval);
    const double v = eval(chain);
    if (v > 0.0) {
      out.schedule = std::move(chain);
      out.value = v;
    }
  }
  return out;
}

// Table over (rule index in quality order, completion time). Cell (i,t) is the
// best expected value of a sequence that ends with rule i finishing exactly at
// t; its increment over the predecessor's best quality is weighted by the
// chance the deadline has not struck before t.
struct RowDp {
  std::vector<Rule> sorted;
  std::int64_t t_cap = 0;
  std::vector<double> cell;
  std::vector<std::int32_t> pred;   // predecessor rule index, -1 = starts the sequence
  std::vector<std::int32_t> steps;
  TableStats stats;

  std::size_t at(std::size_t i, std::int64_t t) const {
    return i * static_cast<std::size_t>(t_cap + 1) + static_cast<std::size_t>(t);
  }

  Schedule reconstruct(std::size_t i, std::int64_t t) const {
    Schedule rev;
    std::int64_t cur_t = t;
    std::int32_t cur = static_cast<std::int32_t>(i);
    while (cur >= 0) {
      const auto& r = sorted[static_cast<std::size_t>(cur)];
      rev.push_back(r);
      const std::int32_t p = pred[at(static_cast<std::size_t>(cur), cur_t)];
      cur_t -= r.runtime;
      cur = p;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
  }
};

RowDp fill_row_dp(std::vector<Rule> sorted, const DeadlineDistribution& dist,
                  std::int64_t t_cap) {
  RowDp dp;
  dp.sorted = std::move(sorted);
  dp.t_cap = t_cap;
  const std::size_t n = dp.sorted.size();
  const std::size_t width = static_cast<std::size_t>(t_cap + 1);
  dp.cell.assign(n * width, kNegInf);
  dp.pred.assign(n * width, -1);
  dp.steps.assign(n * width, 0);
  dp.stats.rows = n;
  dp.stats.cols = width;

  std::vector<double> surv(width);
  for (std::int64_t t = 0; t <= t_cap; ++t)
    surv[static_cast<std::size_t>(t)] = dist.survival(static_cast<double>(t));

  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t ti = dp.sorted[i].runtime;
    const double qi = dp.sorted[i].quality;
    for (std::int64_t t = ti; t <= t_cap; ++t) {
      const double st = surv[static_cast<std::size_t>(t)];
      double best = kNegInf;
      std::int32_t best_pred = -1;
      std::int32_t best_steps = 0;
      if (t == ti) {  // sequence starts here; no idle time before the first rule
        best = qi * st;
        best_pred = -1;
        best_steps = 1;
      }
      const std::int64_t rem = t - ti;
      for (std::size_t k = 0; k < i; ++k) {
        const double prev = dp.cell[dp.at(k, rem)];
        if (prev == kNegInf) continue;
        const double cand = prev + (qi - dp.sorted[k].quality) * st;
        const std::int32_t cand_steps = dp.steps[dp.at(k, rem)] + 1;
        bool take = cand > best;
        if (!take && cand == best && best > kNegInf) {
          if (cand_steps != best_steps) {
            take = cand_steps < best_steps;
          } else if (best_pred >= 0 && best_pred != static_cast<std::int32_t>(k)) {
            // same value, same length: settle by id sequence
            take = ids_less(dp.reconstruct(k, rem),
                            dp.reconstruct(static_cast<std::size_t>(best_pred), rem));
          }
        }
        if (take) {
          best = cand;
          best_pred = static_cast<std::int32_t>(k);
          best_steps = cand_steps;
        }
      }
      if (best > kNegInf) {
        dp.cell[dp.at(i, t)] = best;
        dp.pred[dp.at(i, t)] = best_pred;
        dp.steps[dp.at(i, t)] = best_steps;
        ++dp.stats.filled;
      }
    }
  }
  return dp;
}

Schedule best_row_dp_chain(const RowDp& dp) {
  double best = kNegInf;
  bool found = false;
  std::size_t bi = 0;
  std::int64_t bt = 0;
  for (std::int64_t t = 0; t <= dp.t_cap; ++t) {
    for (std::size_t i = 0; i < dp.sorted.size(); ++i) {
      const double v = dp.cell[dp.at(i, t)];
      if (v == kNegInf) continue;
      bool take = !found || v > best;
      if (!take && v == best && t == bt) {
        const auto s = dp.steps[dp.at(i, t)];
        const auto bs = dp.steps[dp.at(bi, bt)];
        if (s != bs)
          take = s < bs;
        else
          take = ids_less(dp.reconstruct(i, t), dp.reconstruct(bi, bt));
      }
      if (take) {
        best = v;
        bi = i;
        bt = t;
        found = true;
      }
    }
  }
  if (!found || best <= 0.0) return {};
  return dp.reconstruct(bi, bt);
}

// One-column recurrence for the two regimes where an optimal sequence always
// ends with the highest-quality rule: chain[i] is the best sequence that
// starts at rule i and runs through rule n-1.
struct ColumnDp {
  std::vector<Rule> sorted;
  std::vector<double> value;
  std::vector<std::int32_t> next;  // -1 terminates the chain
  std::vector<std::int32_t> steps;
  std::vector<std::int64_t> chain_time;

  Schedule reconstruct(std::size_t i) const {
    Schedule out;
    std::int32_t cur = static_cast<std::int32_t>(i);
    while (cur >= 0) {
      out.push_back(sorted[static_cast<std::size_t>(cur)]);
      cur = next[static_cast<std::size_t>(cur)];
    }
    return out;
  }
};

ColumnDp fill_column_dp(
    std::vector<Rule> sorted,
    const std::function<double(const Rule&)>& boundary,
    const std::function<double(const Rule&, const Rule&, double)>& extend) {
  ColumnDp dp;
  dp.sorted = std::move(sorted);
  const std::size_t n = dp.sorted.size();
  dp.value.assign(n, kNegInf);
  dp.next.assign(n, -1);
  dp.steps.assign(n, 0);
  dp.chain_time.assign(n, 0);
  if (n == 0) return dp;
  dp.value[n - 1] = boundary(dp.sorted[n - 1]);
  dp.steps[n - 1] = 1;
  dp.chain_time[n - 1] = dp.sorted[n - 1].runtime;
  for (std::size_t i = n - 1; i-- > 0;) {
    double best = kNegInf;
    std::int32_t best_next = -1;
    for (std::size_t k = i + 1; k < n; ++k) {
      const double cand = extend(dp.sorted[i], dp.sorted[k], dp.value[k]);
      bool take = best_next < 0 || cand > best;
      if (!take && cand == best) {
        const std::size_t b = static_cast<std::size_t>(best_next);
        if (dp.chain_time[k] != dp.chain_time[b])
          take = dp.chain_time[k] < dp.chain_time[b];
        else if (dp.steps[k] != dp.steps[b])
          take = dp.steps[k] < dp.steps[b];
        else
          take = ids_less(dp.reconstruct(k), dp.reconstruct(b));
      }
      if (take) {
        best = cand;
        best_next = static_cast<std::int32_t>(k);
      }
    }
    dp.value[i] = best;
    dp.next[i] = best_next;
    dp.steps[i] = dp.steps[static_cast<std::size_t>(best_next)] + 1;
    dp.chain_time[i] =
        dp.chain_time[static_cast<std::size_t>(best_next)] + dp.sorted[i].runtime;
  }
  return dp;
}

Schedule best_column_chain(const ColumnDp& dp) {
  double best = kNegInf;
  std::int32_t bi = -1;
  for (std::size_t i = 0; i < dp.sorted.size(); ++i) {
    const double v = dp.value[i];
    bool take = bi < 0 || v > best;
    if (!take && v == best) {
      const std::size_t b = static_cast<std::size_t>(bi);
      if (dp.chain_time[i] != dp.chain_time[b])
        take = dp.chain_time[i] < dp.chain_time[b];
      else if (dp.steps[i] != dp.steps[b])
        take = dp.steps[i] < dp.steps[b];
      else
        take = ids_less(dp.reconstruct(i), dp.reconstruct(b));
    }
    if (take) {
      best = v;
      bi = static_cast<std::int32_t>(i);
    }
  }
  if (bi < 0 || best <= 0.0) return {};
  return dp.reconstruct(static_cast<std::size_t>(bi));
}

}  // namespace

OptimizationResult optimize_fixed_deadline(const std::vector<Rule>& rules,
                                           std::int64_t deadline) {
  if (deadline < 0) throw ParameterError("deadline must be >= 0");
  validate_rules(rules);
  auto out = pick_singleton(
      rules, [deadline](const Rule& r) { return r.runtime <= deadline; },
      [](const Rule& r) { return r.quality; });
  if (!out.schedule.empty() && out.value <= 0.0) {
    out.schedule.clear();
    out.value = 0.0;
  }
  out.regime = FixedDeadline{deadline};
  return out;
}

OptimizationResult optimize_fixed_cost(const std::vector<Rule>& rules, double cost) {
  if (!(std::isfinite(cost) && cost >= 0.0))
    throw ParameterError("time cost must be finite and >= 0");
  validate_rules(rules);
  auto out = pick_singleton(
      rules, [](const Rule&) { return true; },
      [cost](const Rule& r) { return r.quality - cost * static_cast<double>(r.runtime); });
  if (!out.schedule.empty() && out.value < 0.0) {
    out.schedule.clear();
    out.value = 0.0;
  }
  out.regime = FixedTimeCost{cost};
  return out;
}

OptimizationResult optimize_general(const std::vector<Rule>& rules,
                                    const DeadlineDistribution& dist) {
  validate_rules(rules);
  std::vector<Rule> sorted = rules;
  sort_canonical(sorted);
  std::int64_t cap = 0;
  for (const auto& r : sorted) cap += r.runtime;
  auto dp = fill_row_dp(std::move(sorted), dist, cap);
  auto eval = [&dist](const Schedule& s) { return value_stochastic(s, dist); };
  return finish_stochastic(best_row_dp_chain(dp), StochasticDeadline{dist}, dp.stats, eval);
}

OptimizationResult optimize_long_uniform(const std::vector<Rule>& rules,
                                         std::int64_t width) {
  if (width < 1) throw ParameterError("window width must be >= 1");
  validate_rules(rules);
  std::vector<Rule> sorted = rules;
  sort_canonical(sorted);
  std::int64_t total = 0;
  for (const auto& r : sorted) total += r.runtime;
  if (total > width)
    throw RegimeError("window shorter than the combined runtimes; use the short-window optimizer");
  const double w = static_cast<double>(width);
  const double q_last = sorted.empty() ? 0.0 : sorted.back().quality;
  auto mass = [w](const Rule& r) { return static_cast<double>(r.runtime) / w; };
  auto dp = fill_column_dp(
      std::move(sorted),
      [&mass](const Rule& r) { return (1.0 - mass(r)) * r.quality; },
      [&mass, q_last](const Rule& ri, const Rule& rk, double tail) {
        return tail + mass(rk) * ri.quality - mass(ri) * q_last;
      });
  TableStats stats{dp.sorted.size(), 1, dp.sorted.size()};
  auto eval = [width](const Schedule& s) { return value_long_uniform(s, width); };
  return finish_stochastic(best_column_chain(dp),
                           StochasticDeadline{DeadlineDistribution::uniform(0.0, w)},
                           stats, eval);
}

OptimizationResult optimize_short_uniform(const std::vector<Rule>& rules,
                                          std::int64_t width) {
  if (width < 1) throw ParameterError("window width must be >= 1");
  validate_rules(rules);
  std::vector<Rule> sorted = rules;
  sort_canonical(sorted);
  std::int64_t total = 0;
  for (const auto& r : sorted) total += r.runtime;
  if (total <= width)
    throw RegimeError("window covers the whole schedule; use the long-window optimizer");
  const auto dist = DeadlineDistribution::uniform(0.0, static_cast<double>(width));
  auto dp = fill_row_dp(std::move(sorted), dist, std::min(total, width));
  auto eval = [&dist](const Schedule& s) { return value_stochastic(s, dist); };
  return finish_stochastic(best_row_dp_chain(dp), StochasticDeadline{dist}, dp.stats, eval);
}

OptimizationResult optimize_exponential(const std::vector<Rule>& rules, double rate) {
  if (!(std::isfinite(rate) && rate > 0.0))
    throw ParameterError("rate must be > 0");
  validate_rules(rules);
  std::vector<Rule> sorted = rules;
  sort_canonical(sorted);
  auto interrupt_p = [rate](const Rule& r) {
    return -std::expm1(-rate * static_cast<double>(r.runtime));
  };
  auto dp = fill_column_dp(
      std::move(sorted),
      [&interrupt_p](const Rule& r) { return r.quality * (1.0 - interrupt_p(r)); },
      [&interrupt_p](const Rule& ri, const Rule& rk, double tail) {
        const double keep = 1.0 - interrupt_p(ri);
        return keep * interrupt_p(rk) * ri.quality + keep * tail;
      });
  TableStats stats{dp.sorted.size(), 1, dp.sorted.size()};
  auto eval = [rate](const Schedule& s) { return value_exponential(s, rate); };
  return finish_stochastic(best_column_chain(dp),
                           StochasticDeadline{DeadlineDistribution::exponential(rate)},
                           stats, eval);
}

}  // namespace dsched
