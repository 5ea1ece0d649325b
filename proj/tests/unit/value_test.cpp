#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dsched/distribution.hpp"
#include "dsched/errors.hpp"
#include "dsched/profile.hpp"
#include "dsched/random.hpp"
#include "dsched/value.hpp"

using namespace dsched;

namespace {

const Schedule kThree = {{"r1", 0.2, 2}, {"r2", 0.5, 5}, {"r3", 0.7, 7}};

Schedule head(const Schedule& s, std::size_t n) {
  return Schedule(s.begin(), s.begin() + n);
}

Schedule random_schedule(Rng& rng, std::uint64_t max_len = 5) {
  Schedule s;
  const auto n = 1 + rng.below(max_len);
  for (std::uint64_t i = 0; i < n; ++i)
    s.push_back({"x" + std::to_string(i), rng.uniform01(),
                 1 + static_cast<std::int64_t>(rng.below(8))});
  return s;
}

// The closed forms only promise anything for quality-ascending schedules.
Schedule random_ascending(Rng& rng, std::uint64_t max_len = 5) {
  auto s = random_schedule(rng, max_len);
  std::sort(s.begin(), s.end(),
            [](const Rule& a, const Rule& b) { return a.quality < b.quality; });
  return s;
}

DeadlineDistribution random_dist(Rng& rng) {
  switch (rng.below(4)) {
    case 0:
      return DeadlineDistribution::uniform(0, 1 + static_cast<double>(rng.below(30)));
    case 1:
      return DeadlineDistribution::exponential(0.05 + rng.uniform01());
    case 2:
      return DeadlineDistribution::poisson(0.5 + 10 * rng.uniform01());
    default:
      return DeadlineDistribution::point_mass(static_cast<std::int64_t>(rng.below(25)));
  }
}

}  // namespace

TEST_CASE("known deadline takes the best rule finishing in time") {
  CHECK(value_fixed_deadline(kThree, 1) == 0.0);
  CHECK(value_fixed_deadline(kThree, 2) == 0.2);
  CHECK(value_fixed_deadline(kThree, 6) == 0.2);
  CHECK(value_fixed_deadline(kThree, 7) == 0.5);
  CHECK(value_fixed_deadline(kThree, 13) == 0.5);
  CHECK(value_fixed_deadline(kThree, 14) == 0.7);  // finishing on the bell counts
  CHECK(value_fixed_deadline({}, 5) == 0.0);
  CHECK_THROWS_AS(value_fixed_deadline(kThree, -1), ParameterError);
}

TEST_CASE("linear time cost charges the whole schedule") {
  CHECK(value_fixed_cost({{"r1", 0.2, 2}}, 0.1) == doctest::Approx(0.0));
  CHECK(value_fixed_cost(head(kThree, 2), 0.1) == doctest::Approx(0.5 - 0.7));
  CHECK(value_fixed_cost({}, 0.1) == 0.0);
  CHECK(value_fixed_cost(kThree, 0.0) == doctest::Approx(0.7));
  CHECK_THROWS_AS(value_fixed_cost(kThree, -0.5), ParameterError);
}

TEST_CASE("stochastic value of the worked three-rule example") {
  auto u10 = DeadlineDistribution::uniform(0, 10);
  CHECK(value_stochastic(kThree, u10) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(value_stochastic(head(kThree, 2), u10) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(value_stochastic({{"r2", 0.5, 5}}, u10) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(value_stochastic({{"r3", 0.7, 7}}, u10) == doctest::Approx(0.21).epsilon(1e-9));
  CHECK(value_stochastic({}, u10) == 0.0);
}

TEST_CASE("quality applies from the completion instant onward") {
  // Deadline exactly at the completion time: the result still gets used.
  auto at2 = DeadlineDistribution::point_mass(2);
  CHECK(value_stochastic({{"r1", 0.2, 2}}, at2) == doctest::Approx(0.2));
  auto at1 = DeadlineDistribution::point_mass(1);
  CHECK(value_stochastic({{"r1", 0.2, 2}}, at1) == 0.0);
}

TEST_CASE("running max handles schedules in any order") {
  // r1 after r2 adds nothing; the value matches r2 alone.
  auto u10 = DeadlineDistribution::uniform(0, 10);
  const Schedule backwards = {{"r2", 0.5, 5}, {"r1", 0.2, 2}};
  CHECK(value_stochastic(backwards, u10) ==
        doctest::Approx(value_stochastic({{"r2", 0.5, 5}}, u10)).epsilon(1e-12));
}

TEST_CASE("point mass agrees with the known-deadline value") {
  Rng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_schedule(rng);
    const auto d = static_cast<std::int64_t>(rng.below(30));
    CHECK(value_stochastic(s, DeadlineDistribution::point_mass(d)) ==
          doctest::Approx(value_fixed_deadline(s, d)).epsilon(1e-12));
  }
}

TEST_CASE("long-window closed form") {
  const Schedule r1r2 = head(kThree, 2);
  CHECK(value_long_uniform(r1r2, 10) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(value_long_uniform({}, 10) == 0.0);
  CHECK_THROWS_AS(value_long_uniform(kThree, 10), RegimeError);  // 14 > 10
  CHECK_THROWS_AS(value_long_uniform(r1r2, 0), ParameterError);

  SUBCASE("agrees with the general stochastic value whenever it applies") {
    Rng rng(202);
    int tried = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto s = random_ascending(rng);
      const auto w = total_runtime(s) + static_cast<std::int64_t>(rng.below(20));
      if (w < 1) continue;
      ++tried;
      const auto u = DeadlineDistribution::uniform(0, static_cast<double>(w));
      if (u.kind() != DeadlineKind::kUniform) continue;  // w == 0 collapses
      CHECK(value_long_uniform(s, w) ==
            doctest::Approx(value_stochastic(s, u)).epsilon(1e-9));
    }
    CHECK(tried > 900);
  }
}

TEST_CASE("exponential closed form") {
  CHECK(value_exponential({{"r1", 0.2, 2}}, 0.1) ==
        doctest::Approx(std::exp(-0.2) * 0.2).epsilon(1e-12));
  CHECK(value_exponential({}, 0.1) == 0.0);
  CHECK_THROWS_AS(value_exponential(kThree, 0.0), ParameterError);

  SUBCASE("prepending obeys the survival recursion bit for bit") {
    Rng rng(303);
    for (int trial = 0; trial < 1000; ++trial) {
      auto s = random_schedule(rng);
      const Rule a{"head", rng.uniform01(), 1 + static_cast<std::int64_t>(rng.below(8))};
      const double rate = 0.05 + rng.uniform01();
      Schedule as;
      as.push_back(a);
      as.insert(as.end(), s.begin(), s.end());
      const double keep = 1.0 - (-std::expm1(-rate * static_cast<double>(a.runtime)));
      const double p1 = -std::expm1(-rate * static_cast<double>(s[0].runtime));
      const double expected = keep * p1 * a.quality + keep * value_exponential(s, rate);
      CHECK(value_exponential(as, rate) == expected);
    }
  }

  SUBCASE("agrees with the general value under the discretized deadline") {
    Rng rng(404);
    for (int trial = 0; trial < 300; ++trial) {
      const auto s = random_ascending(rng);
      const double rate = 0.1 + rng.uniform01();
      CHECK(value_exponential(s, rate) ==
            doctest::Approx(value_stochastic(s, discretize_exponential(rate)))
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("value dispatch covers every regime") {
  CHECK(value_of(kThree, FixedDeadline{7}) == 0.5);
  CHECK(value_of(kThree, FixedTimeCost{0.0}) == doctest::Approx(0.7));
  CHECK(value_of(head(kThree, 2),
                 StochasticDeadline{DeadlineDistribution::uniform(0, 10)}) ==
        doctest::Approx(0.25).epsilon(1e-9));
  CHECK_THROWS_AS(
      value_of(kThree, StochasticDeadline{DeadlineDistribution::uniform(0, 10), false}),
      ParameterError);
}

TEST_CASE("appending a strictly better rule never hurts") {
  Rng rng(505);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = random_schedule(rng);
    double top = 0.0;
    for (const auto& r : s) top = std::max(top, r.quality);
    auto longer = s;
    longer.push_back({"best", top + 0.5 * (1.0 - top) + 1e-6,
                      1 + static_cast<std::int64_t>(rng.below(8))});
    const auto dist = random_dist(rng);
    CHECK(value_stochastic(longer, dist) >= value_stochastic(s, dist) - 1e-12);
  }
}

TEST_CASE("profile dominance implies value dominance") {
  Rng rng(606);
  int informative = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_schedule(rng);
    // Deleting a tail rule yields a candidate the original often dominates.
    auto b = a;
    b.pop_back();
    const auto pa = profile_of(a);
    const auto pb = profile_of(b);
    if (!profile_dominates(pa, pb)) continue;
    ++informative;
    const auto dist = random_dist(rng);
    CHECK(value_stochastic(a, dist) >= value_stochastic(b, dist) - 1e-12);
  }
  CHECK(informative > 500);
}
