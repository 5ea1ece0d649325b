#include "dsched/value.hpp"

#include <algorithm>
#include <cmath>

#include "dsched/errors.hpp"

namespace dsched {

double value_fixed_deadline(const Schedule& s, std::int64_t deadline) {
  if (deadline < 0) throw ParameterError("deadline must be >= 0");
  std::int64_t now = 0;
  double best = 0.0;
  for (const auto& r : s) {
    now += r.runtime;
    if (now > deadline) break;
    best = std::max(best, r.quality);
  }
  return best;
}

double value_fixed_cost(const Schedule& s, double cost_per_step) {
  if (!(std::isfinite(cost_per_step) && cost_per_step >= 0.0))
    throw ParameterError("time cost must be finite and >= 0");
  if (s.empty()) return 0.0;
  double best = 0.0;
  for (const auto& r : s) best = std::max(best, r.quality);
  return best - cost_per_step * static_cast<double>(total_runtime(s));
}

double value_stochastic(const Schedule& s, const DeadlineDistribution& dist) {
  if (s.empty()) return 0.0;
  double v = 0.0;
  double best = 0.0;
  std::int64_t now = 0;
  double phat = 0.0;  // P(d < current completion time)
  for (std::size_t i = 0; i < s.size(); ++i) {
    now += s[i].runtime;
    best = std::max(best, s[i].quality);
    const double phat_next = (i + 1 < s.size())
                                 ? dist.arrival_before(static_cast<double>(now + s[i + 1].runtime))
                                 : 1.0;
    if (i == 0) phat = dist.arrival_before(static_cast<double>(now));
    v += (phat_next - phat) * best;
    phat = phat_next;
  }
  return v;
}

double value_long_uniform(const Schedule& s, std::int64_t width) {
  if (width < 1) throw ParameterError("window width must be >= 1");
  if (s.empty()) return 0.0;
  if (total_runtime(s) > width)
    throw RegimeError("window shorter than the schedule; not the long regime");
  const double w = static_cast<double>(width);
  double v = 0.0;
  double mass_sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    mass_sum += static_cast<double>(s[i].runtime) / w;
    if (i + 1 < s.size())
      v += (static_cast<double>(s[i + 1].runtime) / w) * s[i].quality;
  }
  v += s.back().quality * (1.0 - mass_sum);
  return v;
}

double value_exponential(const Schedule& s, double rate) {
  if (!(std::isfinite(rate) && rate > 0.0))
    throw ParameterError("rate must be > 0");
  if (s.empty()) return 0.0;
  const std::size_t m = s.size();
  // Backward over suffixes. Kept as two separate products so the identity
  // V(a.s) = (1-p_a)*p_{s1}*q_a + (1-p_a)*V(s) holds bit for bit.
  auto interrupt_p = [rate](std::int64_t t) {
    return -std::expm1(-rate * static_cast<double>(t));
  };
  double v = (1.0 - interrupt_p(s[m - 1].runtime)) * s[m - 1].quality;
  for (std::size_t i = m - 1; i-- > 0;) {
    const double keep = 1.0 - interrupt_p(s[i].runtime);
    v = keep * interrupt_p(s[i + 1].runtime) * s[i].quality + keep * v;
  }
  return v;
}

double value_of(const Schedule& s, const DeadlineModel& model) {
  if (const auto* fd = std::get_if<FixedDeadline>(&model))
    return value_fixed_deadline(s, fd->at);
  if (const auto* fc = std::get_if<FixedTimeCost>(&model))
    return value_fixed_cost(s, fc->per_step);
  const auto& st = std::get<StochasticDeadline>(model);
  if (!st.heralded)
    throw ParameterError("non-heralded deadlines are not supported");
  return value_stochastic(s, st.dist);
}

}  // namespace dsched
