#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dsched/errors.hpp"
#include "dsched/learning.hpp"

using namespace dsched;

namespace {

const std::vector<Rule> kThree = {{"r1", 0.2, 2}, {"r2", 0.5, 5}, {"r3", 0.7, 7}};

}  // namespace

TEST_CASE("sample size bound") {
  CHECK(hoeffding_sample_size(0.1, 0.05) == 185);
  CHECK(hoeffding_sample_size(0.5, 0.5) == 3);
  CHECK(hoeffding_sample_size(0.05, 0.01) == 1060);
  // Degenerate corner: the bound collapses to a single sample.
  CHECK(hoeffding_sample_size(1.0, 2.0 * std::exp(-2.0)) == 1);

  CHECK_THROWS_AS(hoeffding_sample_size(0.0, 0.05), ParameterError);
  CHECK_THROWS_AS(hoeffding_sample_size(1.5, 0.05), ParameterError);
  CHECK_THROWS_AS(hoeffding_sample_size(0.1, 0.0), ParameterError);
  CHECK_THROWS_AS(hoeffding_sample_size(0.1, 1.0), ParameterError);
}

TEST_CASE("zero-variance rewards estimate to summation error") {
  const auto est = estimate_qualities(
      [](std::size_t rule, Rng&) {
        return rule == 0 ? 0.2 : rule == 1 ? 0.5 : 0.7;
      },
      kThree, 0.1, 0.05, 7);
  REQUIRE(est.rules.size() == 3);
  CHECK(est.sample_count == 185);
  CHECK(est.rules[0].quality == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(est.rules[1].quality == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(est.rules[2].quality == doctest::Approx(0.7).epsilon(1e-12));
  // Runtimes pass through untouched.
  CHECK(est.rules[2].runtime == 7);
}

TEST_CASE("rewards outside the unit interval are clamped") {
  const auto est = estimate_qualities([](std::size_t, Rng&) { return 3.5; },
                                      kThree, 0.5, 0.5, 7);
  for (const auto& r : est.rules) CHECK(r.quality == 1.0);
  const auto neg = estimate_qualities([](std::size_t, Rng&) { return -2.0; },
                                      kThree, 0.5, 0.5, 7);
  for (const auto& r : neg.rules) CHECK(r.quality == 0.0);
}

TEST_CASE("each rule draws from its own stream") {
  const auto noisy = [](std::size_t, Rng& rng) { return rng.uniform01(); };
  const auto a = estimate_qualities(noisy, kThree, 0.1, 0.05, 99);
  auto four = kThree;
  four.push_back({"r4", 0.9, 9});
  const auto b = estimate_qualities(noisy, four, 0.1, 0.05, 99);
  // Adding a rule must not disturb the existing estimates.
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(a.rules[i].quality == b.rules[i].quality);

  const auto again = estimate_qualities(noisy, kThree, 0.1, 0.05, 99);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(a.rules[i].quality == again.rules[i].quality);
}

TEST_CASE("estimates tighten as the sample budget grows") {
  const double q = 0.37;
  const auto coin = [q](std::size_t, Rng& rng) {
    return rng.uniform01() < q ? 1.0 : 0.0;
  };
  const std::vector<Rule> one = {{"solo", q, 1}};
  // Quartering epsilon multiplies N by 16; the error quartiles should drop.
  std::vector<double> med;
  for (const double eps : {0.2, 0.1, 0.05}) {
    std::vector<double> errs;
    for (std::uint64_t seed = 0; seed < 41; ++seed)
      errs.push_back(std::fabs(
          estimate_qualities(coin, one, eps, 0.05, seed).rules[0].quality - q));
    std::nth_element(errs.begin(), errs.begin() + 20, errs.end());
    med.push_back(errs[20]);
  }
  CHECK(med[1] < med[0]);
  CHECK(med[2] < med[1]);
}

TEST_CASE("deficit verification on the worked example") {
  const auto dist = DeadlineDistribution::uniform(0, 10);
  const auto rep = verify_deficit(kThree, dist, 0.05, 0.01, 50, 42);
  CHECK(rep.trials == 50);
  CHECK(rep.sample_count == 1060);
  CHECK(rep.bound == doctest::Approx(0.1));
  CHECK(rep.true_optimum == doctest::Approx(0.25).epsilon(1e-9));
  REQUIRE(rep.deficits.size() == 50);
  for (const double d : rep.deficits) CHECK(d >= 0.0);
  std::int64_t over = 0;
  for (const double d : rep.deficits)
    if (d > rep.bound) ++over;
  CHECK(over == rep.exceed_count);
  CHECK(rep.exceed_count <= 2);  // far looser than the theory needs

  SUBCASE("runs are reproducible") {
    const auto again = verify_deficit(kThree, dist, 0.05, 0.01, 50, 42);
    CHECK(again.deficits == rep.deficits);
  }
}

TEST_CASE("qualities above one cannot be treated as reward probabilities") {
  CHECK_THROWS_AS(verify_deficit({{"hot", 1.2, 3}},
                                 DeadlineDistribution::uniform(0, 10), 0.05,
                                 0.01, 10, 1),
                  ParameterError);
}
