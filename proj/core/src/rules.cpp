#include "dsched/rules.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "dsched/errors.hpp"

namespace dsched {

void validate_rules(const std::vector<Rule>& rules) {
  std::unordered_set<std::string> seen;
  for (const auto& r : rules) {
    if (r.id.empty()) throw ParameterError("rule with empty id");
    if (!seen.insert(r.id).second)
      throw ParameterError("duplicate rule id: " + r.id);
    if (!std::isfinite(r.quality) || r.quality < 0.0)
      throw ParameterError("rule " + r.id + ": quality must be finite and >= 0");
    if (r.runtime < 0)
      throw ParameterError("rule " + r.id + ": runtime must be >= 0");
  }
}

std::int64_t total_runtime(const Schedule& s) {
  std::int64_t t = 0;
  for (const auto& r : s) t += r.runtime;
  return t;
}

void sort_canonical(std::vector<Rule>& rules) {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.quality != b.quality) return a.quality < b.quality;
    if (a.runtime != b.runtime) return a.runtime < b.runtime;
    return a.id < b.id;
  });
}

std::vector<Rule> normalize(std::vector<Rule> rules) {
  validate_rules(rules);
  std::vector<Rule> kept;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < rules.size(); ++j) {
      if (i == j) continue;
      const Rule& m = rules[i];
      const Rule& o = rules[j];
      // o makes m pointless: never slower while strictly better, or
      // strictly faster while at least as good.
      if ((o.runtime < m.runtime && o.quality >= m.quality) ||
          (o.runtime <= m.runtime && o.quality > m.quality)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(rules[i]);
  }
  sort_canonical(kept);
  return kept;
}

Schedule resolve_schedule(const std::vector<Rule>& rules,
                          const std::vector<std::string>& ids) {
  std::unordered_map<std::string, const Rule*> by_id;
  for (const auto& r : rules) by_id[r.id] = &r;
  Schedule out;
  std::unordered_set<std::string> used;
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ResolutionError("unknown rule id: " + id);
    if (!used.insert(id).second)
      throw ResolutionError("rule id repeated in schedule: " + id);
    out.push_back(*it->second);
  }
  return out;
}

std::string format_schedule(const Schedule& s) {
  if (s.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += s[i].id;
  }
  return out;
}

}  // namespace dsched
