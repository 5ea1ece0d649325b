#include "dsched/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dsched/errors.hpp"

namespace dsched {
namespace {

constexpr std::size_t kSortedCap = 12;
constexpr std::size_t kPermutationCap = 7;
constexpr double kCoOptimumSlack = 1e-12;

void check_cap(std::size_t n, SearchSpace space) {
  if (space == SearchSpace::kSortedOnly && n > kSortedCap)
    throw CapacityError("subset search handles at most " +
                        std::to_string(kSortedCap) + " rules, got " +
                        std::to_string(n));
  if (space == SearchSpace::kAllPermutations && n > kPermutationCap)
    throw CapacityError("permutation search handles at most " +
                        std::to_string(kPermutationCap) + " rules, got " +
                        std::to_string(n));
}

// Enumeration is fixed: rules ordered by id, subsets by ascending bitmask,
// permutations lexicographically within each subset. Keeps report ordering
// stable across runs.
void for_each_candidate(const std::vector<Rule>& rules, SearchSpace space,
                        const std::function<void(const Schedule&)>& visit) {
  std::vector<Rule> by_id = rules;
  std::sort(by_id.begin(), by_id.end(),
            [](const Rule& a, const Rule& b) { return a.id < b.id; });
  const std::size_t n = by_id.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ULL << i)) members.push_back(i);
    if (space == SearchSpace::kSortedOnly) {
      Schedule s;
      for (std::size_t i : members) s.push_back(by_id[i]);
      sort_canonical(s);
      visit(s);
    } else {
      std::vector<std::size_t> perm = members;
      do {
        Schedule s;
        for (std::size_t i : perm) s.push_back(by_id[i]);
        visit(s);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

}  // namespace

OracleReport oracle_optimize(const std::vector<Rule>& rules,
                             const ScheduleEvaluator& evaluate, SearchSpace space) {
  validate_rules(rules);
  check_cap(rules.size(), space);
  OracleReport report;
  std::vector<std::pair<Schedule, double>> seen;
  double best = 0.0;
  for_each_candidate(rules, space, [&](const Schedule& s) {
    const double v = evaluate(s);
    seen.emplace_back(s, v);
    best = std::max(best, v);
  });
  report.best_value = best;
  report.candidates_evaluated = seen.size();
  for (auto& [s, v] : seen)
    if (v >= best - kCoOptimumSlack) report.best_schedules.push_back(std::move(s));
  return report;
}

OracleReport oracle_optimize(const std::vector<Rule>& rules,
                             const DeadlineModel& model, SearchSpace space) {
  return oracle_optimize(
      rules, [&model](const Schedule& s) { return value_of(s, model); }, space);
}

std::vector<std::pair<Schedule, double>> oracle_candidates(
    const std::vector<Rule>& rules, const ScheduleEvaluator& evaluate,
    SearchSpace space) {
  validate_rules(rules);
  check_cap(rules.size(), space);
  std::vector<std::pair<Schedule, double>> out;
  for_each_candidate(rules, space,
                     [&](const Schedule& s) { out.emplace_back(s, evaluate(s)); });
  return out;
}

}  // namespace dsched
