#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dsched {

// A decision procedure with a known result quality and a fixed integer runtime.
// Runtime 0 is allowed (e.g. a default action that costs no time).
struct Rule {
  std::string id;
  double quality = 0.0;
  std::int64_t runtime = 0;
};

// Throws ParameterError on negative runtime, non-finite or negative quality,
// empty or duplicate ids.
void validate_rules(const std::vector<Rule>& rules);

// An ordered sequence of distinct rules, to run back to back. Empty = do nothing.
using Schedule = std::vector<Rule>;

std::int64_t total_runtime(const Schedule& s);

// Canonical order: quality ascending, runtime, then id as the final tie-break.
void sort_canonical(std::vector<Rule>& rules);

// Drops every rule that some other rule renders pointless (no better and
// no cheaper, with at least one strict), then sorts canonically.
std::vector<Rule> normalize(std::vector<Rule> rules);

// Resolve comma-separated ids against a rule list, preserving order.
Schedule resolve_schedule(const std::vector<Rule>& rules,
                          const std::vector<std::string>& ids);

std::string format_schedule(const Schedule& s);

}  // namespace dsched
