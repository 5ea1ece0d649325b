#pragma once

#include <string>
#include <vector>

#include "dsched/distribution.hpp"
#include "dsched/mailsort.hpp"
#include "dsched/rules.hpp"

namespace dsched {

// Fixed-width reals everywhere we print: nine decimals, no negative zero.
std::string format_real(double v);

// Rule files are "id quality runtime" per line; '#' starts a comment.
std::vector<Rule> parse_rules(const std::string& text);
std::vector<Rule> load_rules(const std::string& path);
void save_rules(const std::string& path, const std::vector<Rule>& rules);

// Deadline mass files are "time probability" per line, same comment rule.
DeadlineDistribution load_pmf(const std::string& path);

// Compact one-token distribution forms: uniform:a:b, exp:beta, poisson:mu,
// pmf:path.
DeadlineDistribution parse_distribution(const std::string& spec);

// Sorter configs are "key value" lines. Unknown keys are errors so a typo
// does not silently run the default experiment.
SorterConfig load_sorter_config(const std::string& path);

}  // namespace dsched
