#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsched/random.hpp"

namespace dsched {

enum class DeadlineKind { kUniform, kExponential, kPoisson, kExplicitPmf, kPointMass };

// Distribution of the episode deadline. Uniform and exponential are continuous;
// the rest put mass on non-negative integers. Immutable after construction, so
// instances can be shared freely.
class DeadlineDistribution {
 public:
  static DeadlineDistribution uniform(double lo, double hi);
  static DeadlineDistribution exponential(double rate);
  static DeadlineDistribution poisson(double mean);
  static DeadlineDistribution explicit_pmf(std::vector<std::pair<std::int64_t, double>> entries);
  static DeadlineDistribution point_mass(std::int64_t at);

  DeadlineKind kind() const { return kind_; }
  bool is_discrete() const;

  // P(deadline <= t).
  double cdf(double t) const;
  // P(deadline < t). This is the weight that matters when work finishes exactly
  // at t: a result landing at the deadline still counts.
  double arrival_before(double t) const;
  // P(deadline >= t).
  double survival(double t) const { return 1.0 - arrival_before(t); }
  // Mass attributed to integer step t: the atom for discrete kinds, the mass
  // of (t-1, t] for continuous ones.
  double pmf(std::int64_t t) const;

  double mean() const { return mean_; }
  double sample(Rng& rng) const;

  // Construction parameters; meaningful only for the matching kind.
  double uniform_lower() const { return lo_; }
  double uniform_upper() const { return hi_; }
  double exponential_rate() const { return rate_; }

  // Discrete kinds only; empty for continuous.
  const std::vector<std::int64_t>& support() const { return atoms_; }
  const std::vector<double>& masses() const { return probs_; }

  std::string describe() const;

 private:
  DeadlineDistribution() = default;

  DeadlineKind kind_ = DeadlineKind::kPointMass;
  double lo_ = 0.0, hi_ = 0.0;  // uniform
  double rate_ = 0.0;           // exponential
  double pois_mean_ = 0.0;      // poisson
  double mean_ = 0.0;
  std::vector<std::int64_t> atoms_;
  std::vector<double> probs_;
  std::vector<double> cum_;
};

// Integer-grid approximation of an exponential deadline: step t gets the mass
// of [t, t+1), truncated once the tail drops below `cutoff`.
DeadlineDistribution discretize_exponential(double rate, double cutoff = 1e-12);

}  // namespace dsched
