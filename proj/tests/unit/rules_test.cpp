#include "doctest.h"

#include "dsched/errors.hpp"
#include "dsched/rules.hpp"

using namespace dsched;

namespace {

std::vector<Rule> three() {
  return {{"r1", 0.2, 2}, {"r2", 0.5, 5}, {"r3", 0.7, 7}};
}

}  // namespace

TEST_CASE("rule validation rejects malformed sets") {
  CHECK_THROWS_AS(validate_rules({{"", 0.5, 1}}), ParameterError);
  CHECK_THROWS_AS(validate_rules({{"a", 0.5, 1}, {"a", 0.6, 2}}), ParameterError);
  CHECK_THROWS_AS(validate_rules({{"a", -0.1, 1}}), ParameterError);
  CHECK_THROWS_AS(validate_rules({{"a", 0.5, -1}}), ParameterError);
  CHECK_NOTHROW(validate_rules({{"a", 0.0, 0}}));  // reject-style rule is fine
  CHECK_NOTHROW(validate_rules({}));
}

TEST_CASE("canonical order is quality, then runtime, then id") {
  std::vector<Rule> rules = {{"b", 0.5, 3}, {"a", 0.5, 3}, {"c", 0.5, 2}, {"d", 0.1, 9}};
  sort_canonical(rules);
  CHECK(rules[0].id == "d");
  CHECK(rules[1].id == "c");
  CHECK(rules[2].id == "a");
  CHECK(rules[3].id == "b");
}

TEST_CASE("normalize sorts and drops dominated rules") {
  auto rules = three();
  std::swap(rules[0], rules[2]);  // r3 r2 r1
  auto out = normalize(rules);
  REQUIRE(out.size() == 3);
  CHECK(out[0].id == "r1");
  CHECK(out[1].id == "r2");
  CHECK(out[2].id == "r3");

  SUBCASE("strictly slower and no better goes away") {
    rules.push_back({"dud", 0.4, 6});  // r2 is faster and better
    out = normalize(rules);
    CHECK(out.size() == 3);
    for (const auto& r : out) CHECK(r.id != "dud");
  }
  SUBCASE("equal quality and runtime survives on both sides") {
    rules.push_back({"twin", 0.5, 5});
    out = normalize(rules);
    CHECK(out.size() == 4);
  }
  SUBCASE("same runtime, strictly worse quality goes away") {
    rules.push_back({"dim", 0.3, 5});
    out = normalize(rules);
    CHECK(out.size() == 3);
  }
}

TEST_CASE("schedules resolve by id against the rule set") {
  const auto rules = three();
  auto s = resolve_schedule(rules, {"r2", "r1"});
  REQUIRE(s.size() == 2);
  CHECK(s[0].id == "r2");
  CHECK(s[1].runtime == 2);
  CHECK(resolve_schedule(rules, {}).empty());
  CHECK_THROWS_AS(resolve_schedule(rules, {"nope"}), ResolutionError);
  CHECK_THROWS_AS(resolve_schedule(rules, {"r1", "r1"}), ResolutionError);
}

TEST_CASE("schedule formatting") {
  CHECK(format_schedule({}) == "-");
  CHECK(format_schedule(resolve_schedule(three(), {"r1", "r3"})) == "r1 r3");
  CHECK(total_runtime(resolve_schedule(three(), {"r1", "r2", "r3"})) == 14);
  CHECK(total_runtime({}) == 0);
}
