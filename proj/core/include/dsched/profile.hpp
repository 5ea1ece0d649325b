#pragma once

#include <cstdint>
#include <vector>

#include "dsched/rules.hpp"

namespace dsched {

// Right-open step function: quality() holds from time onward until the next
// breakpoint. Implicitly 0 before the first breakpoint.
struct ProfileStep {
  std::int64_t time = 0;
  double quality = 0.0;
};

using Profile = std::vector<ProfileStep>;

// Quality available if execution is cut off at time t: the best rule whose
// completion time is <= t. Plateaus are coalesced, so quality is strictly
// increasing across the returned breakpoints.
Profile profile_of(const Schedule& s);

double profile_quality(const Profile& p, double t);

// True iff a is at least as good as b at every time. Both are step functions,
// so the union of breakpoints decides it.
bool profile_dominates(const Profile& a, const Profile& b);

}  // namespace dsched
