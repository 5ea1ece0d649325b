#include "dsched/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dsched/errors.hpp"

namespace dsched {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ParameterError(msg);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

DeadlineDistribution DeadlineDistribution::uniform(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi), "uniform: bounds must be finite");
  require(lo >= 0.0 && hi >= lo, "uniform: need 0 <= lo <= hi");
  if (lo == hi) {
    // Zero width collapses to a known deadline.
    require(std::floor(lo) == lo, "uniform: degenerate bound must be an integer");
    return point_mass(static_cast<std::int64_t>(lo));
  }
  DeadlineDistribution d;
  d.kind_ = DeadlineKind::kUniform;
  d.lo_ = lo;
  d.hi_ = hi;
  d.mean_ = 0.5 * (lo + hi);
  return d;
}

DeadlineDistribution DeadlineDistribution::exponential(double rate) {
  require(std::isfinite(rate) && rate > 0.0, "exponential: rate must be > 0");
  DeadlineDistribution d;
  d.kind_ = DeadlineKind::kExponential;
  d.rate_ = rate;
  d.mean_ = 1.0 / rate;
  return d;
}

DeadlineDistribution DeadlineDistribution::poisson(double mean) {
  require(std::isfinite(mean) && mean > 0.0, "poisson: mean must be > 0");
  DeadlineDistribution d;
  d.kind_ = DeadlineKind::kPoisson;
  d.pois_mean_ = mean;
  d.mean_ = mean;
  // Build the table once; truncate far into the tail, then renormalize so
  // inversion sampling covers all of [0,1).
  const std::int64_t cap =
      static_cast<std::int64_t>(mean + 40.0 * std::sqrt(mean + 1.0)) + 64;
  double p = std::exp(-mean);
  double cum = 0.0;
  for (std::int64_t k = 0; k <= cap; ++k) {
    if (k > 0) p *= mean / static_cast<double>(k);
    d.atoms_.push_back(k);
    d.probs_.push_back(p);
    cum += p;
    if (cum > 1.0 - 1e-15 && static_cast<double>(k) >= mean) break;
  }
  for (auto& q : d.probs_) q /= cum;
  double run = 0.0;
  for (double q : d.probs_) {
    run += q;
    d.cum_.push_back(run);
  }
  d.cum_.back() = 1.0;
  return d;
}

DeadlineDistribution DeadlineDistribution::explicit_pmf(
    std::vector<std::pair<std::int64_t, double>> entries) {
  require(!entries.empty(), "pmf: no entries");
  std::sort(entries.begin(), entries.end());
  double total = 0.0;
  DeadlineDistribution d;
  d.kind_ = DeadlineKind::kExplicitPmf;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto [t, p] = entries[i];
    require(t >= 0, "pmf: support must be >= 0");
    require(std::isfinite(p) && p >= 0.0, "pmf: masses must be finite and >= 0");
    require(i == 0 || t != entries[i - 1].first, "pmf: duplicate support point");
    d.atoms_.push_back(t);
    d.probs_.push_back(p);
    total += p;
  }
  require(std::fabs(total - 1.0) <= 1e-9, "pmf: masses must sum to 1");
  double run = 0.0;
  for (std::size_t i = 0; i < d.probs_.size(); ++i) {
    d.probs_[i] /= total;
    run += d.probs_[i];
    d.cum_.push_back(run);
    d.mean_ += static_cast<double>(d.atoms_[i]) * d.probs_[i];
  }
  d.cum_.back() = 1.0;
  return d;
}

DeadlineDistribution DeadlineDistribution::point_mass(std::int64_t at) {
  require(at >= 0, "point mass: support must be >= 0");
  DeadlineDistribution d;
  d.kind_ = DeadlineKind::kPointMass;
  d.atoms_ = {at};
  d.probs_ = {1.0};
  d.cum_ = {1.0};
  d.mean_ = static_cast<double>(at);
  return d;
}

bool DeadlineDistribution::is_discrete() const {
  return kind_ != DeadlineKind::kUniform && kind_ != DeadlineKind::kExponential;
}

double DeadlineDistribution::cdf(double t) const {
  switch (kind_) {
    case DeadlineKind::kUniform:
      if (t <= lo_) return 0.0;
      if (t >= hi_) return 1.0;
      return (t - lo_) / (hi_ - lo_);
    case DeadlineKind::kExponential:
      if (t <= 0.0) return 0.0;
      return -std::expm1(-rate_ * t);
    default: {
      // First atom strictly above t; everything before it has landed.
      auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t,
                                 [](double v, std::int64_t a) {
                                   return v < static_cast<double>(a);
                                 });
      if (it == atoms_.begin()) return 0.0;
      return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
    }
  }
}

double DeadlineDistribution::arrival_before(double t) const {
  if (!is_discrete()) return cdf(t);
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                             [](std::int64_t a, double v) {
                               return static_cast<double>(a) < v;
                             });
  if (it == atoms_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DeadlineDistribution::pmf(std::int64_t t) const {
  if (!is_discrete()) {
    if (t < 0) return 0.0;
    return cdf(static_cast<double>(t)) - cdf(static_cast<double>(t) - 1.0);
  }
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t);
  if (it == atoms_.end() || *it != t) return 0.0;
  return probs_[static_cast<std::size_t>(it - atoms_.begin())];
}

double DeadlineDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case DeadlineKind::kUniform:
      return rng.uniform(lo_, hi_);
    case DeadlineKind::kExponential:
      // u in [0,1) keeps the log argument away from zero.
      return -std::log1p(-rng.uniform01()) / rate_;
    default: {
      const double u = rng.uniform01();
      auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
      if (it == cum_.end()) --it;
      return static_cast<double>(atoms_[static_cast<std::size_t>(it - cum_.begin())]);
    }
  }
}

std::string DeadlineDistribution::describe() const {
  switch (kind_) {
    case DeadlineKind::kUniform:
      return "uniform:" + num(lo_) + ":" + num(hi_);
    case DeadlineKind::kExponential:
      return "exp:" + num(rate_);
    case DeadlineKind::kPoisson:
      return "poisson:" + num(pois_mean_);
    case DeadlineKind::kExplicitPmf:
      return "pmf[" + std::to_string(atoms_.size()) + "]";
    case DeadlineKind::kPointMass:
      return "point:" + std::to_string(atoms_[0]);
  }
  return "?";
}

DeadlineDistribution discretize_exponential(double rate, double cutoff) {
  if (!(std::isfinite(rate) && rate > 0.0))
    throw ParameterError("discretize: rate must be > 0");
  if (!(cutoff > 0.0 && cutoff < 1e-3))
    throw ParameterError("discretize: cutoff out of range");
  std::vector<std::pair<std::int64_t, double>> entries;
  for (std::int64_t t = 0;; ++t) {
    const double lo = std::exp(-rate * static_cast<double>(t));
    const double hi = std::exp(-rate * static_cast<double>(t + 1));
    entries.emplace_back(t, lo - hi);
    if (hi < cutoff) {
      // Fold the truncated tail into the last step so the masses still sum
      // to one; completions inside the table are unaffected.
      entries.back().second += hi;
      break;
    }
  }
  return DeadlineDistribution::explicit_pmf(std::move(entries));
}

}  // namespace dsched
