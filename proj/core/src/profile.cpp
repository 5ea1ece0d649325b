#include "dsched/profile.hpp"

#include <algorithm>

namespace dsched {

Profile profile_of(const Schedule& s) {
  Profile p;
  std::int64_t now = 0;
  double best = 0.0;
  for (const auto& r : s) {
    now += r.runtime;
    if (r.quality > best) {
      best = r.quality;
      if (!p.empty() && p.back().time == now) {
        p.back().quality = best;  // zero-runtime step landing on an existing breakpoint
      } else {
        p.push_back({now, best});
      }
    }
  }
  return p;
}

double profile_quality(const Profile& p, double t) {
  double q = 0.0;
  for (const auto& step : p) {
    if (static_cast<double>(step.time) <= t) q = step.quality;
    else break;
  }
  return q;
}

bool profile_dominates(const Profile& a, const Profile& b) {
  std::vector<std::int64_t> times;
  times.reserve(a.size() + b.size());
  for (const auto& s : a) times.push_back(s.time);
  for (const auto& s : b) times.push_back(s.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  for (std::int64_t t : times) {
    if (profile_quality(a, static_cast<double>(t)) <
        profile_quality(b, static_cast<double>(t)))
      return false;
  }
  return true;
}

}  // namespace dsched
