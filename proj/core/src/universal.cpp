#include "dsched/universal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsched/errors.hpp"
#include "dsched/optimize.hpp"

namespace dsched {

std::int64_t scaled_runtime(std::int64_t t, const MachineSpeedup& m) {
  if (!(std::isfinite(m.k) && m.k >= 1.0))
    throw ParameterError("speedup factor must be >= 1");
  if (t <= 0) return 0;
  auto c = static_cast<std::int64_t>(std::ceil(static_cast<double>(t) / m.k));
  // Guard the divide against landing a hair above an exact integer.
  while (c > 1 && (static_cast<double>(c) - 1.0) * m.k >= static_cast<double>(t) - 1e-9)
    --c;
  return c;
}

UniversalProgram build_universal(const std::vector<Rule>& rules, std::int64_t epsilon) {
  validate_rules(rules);
  if (epsilon < 1) throw ParameterError("time increment must be >= 1");
  std::int64_t min_positive = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_runtime = 0;
  for (const auto& r : rules) {
    if (r.runtime > 0) min_positive = std::min(min_positive, r.runtime);
    max_runtime = std::max(max_runtime, r.runtime);
  }
  if (min_positive != std::numeric_limits<std::int64_t>::max() && epsilon > min_positive)
    throw ParameterError("time increment exceeds the shortest rule runtime");

  UniversalProgram prog;
  prog.epsilon = epsilon;
  for (std::int64_t d = epsilon;; d *= 2) {
    prog.stages.push_back({optimize_fixed_deadline(rules, d).schedule, d});
    if (d >= max_runtime) break;
  }
  return prog;
}

namespace {

// Completion events of the staged run: (time on the sped-up machine, best
// quality so far). Null stages take no time at all.
Profile staged_profile(const UniversalProgram& prog, const MachineSpeedup& m) {
  Profile p;
  std::int64_t now = 0;
  double best = 0.0;
  for (const auto& stage : prog.stages) {
    for (const auto& r : stage.schedule) {
      now += scaled_runtime(r.runtime, m);
      if (r.quality > best) {
        best = r.quality;
        if (!p.empty() && p.back().time == now)
          p.back().quality = best;
        else
          p.push_back({now, best});
      }
    }
  }
  return p;
}

std::int64_t total_staged_time(const UniversalProgram& prog, const MachineSpeedup& m) {
  std::int64_t now = 0;
  for (const auto& stage : prog.stages)
    for (const auto& r : stage.schedule) now += scaled_runtime(r.runtime, m);
  return now;
}

}  // namespace

Profile universal_profile(const UniversalProgram& prog, const MachineSpeedup& m) {
  return staged_profile(prog, m);
}

HeraldOutcome run_universal(const UniversalProgram& prog, const MachineSpeedup& m,
                            std::int64_t deadline) {
  if (deadline < 0) throw ParameterError("deadline must be >= 0");
  HeraldOutcome out;
  const Profile p = staged_profile(prog, m);
  out.quality = profile_quality(p, static_cast<double>(deadline));
  out.act_time = std::min(deadline, total_staged_time(prog, m));
  return out;
}

AspirationOutcome run_universal(const UniversalProgram& prog, const MachineSpeedup& m,
                                double threshold, std::int64_t act_by) {
  if (act_by < 0) throw ParameterError("act-by time must be >= 0");
  AspirationOutcome out;
  std::int64_t now = 0;
  double best = 0.0;
  for (std::size_t j = 0; j < prog.stages.size(); ++j) {
    const auto& stage = prog.stages[j];
    std::int64_t cost = 0;
    double stage_quality = 0.0;
    for (const auto& r : stage.schedule) {
      cost += scaled_runtime(r.runtime, m);
      stage_quality = std::max(stage_quality, r.quality);
    }
    if (now + cost > act_by) break;  // would overrun the last admissible act
    now += cost;
    best = std::max(best, stage_quality);
    out.stage_index = j;
    if (stage_quality >= threshold) {
      out.quality = best;
      out.act_time = now;
      out.status = AspirationStatus::kMet;
      return out;
    }
  }
  out.quality = best;
  out.act_time = now;
  out.status = AspirationStatus::kExhausted;
  return out;
}

DominanceReport check_dominance(const UniversalProgram& prog, const MachineSpeedup& m,
                                const Schedule& reference) {
  DominanceReport report;
  report.universal = staged_profile(prog, m);
  report.reference = profile_of(reference);
  report.dominates = profile_dominates(report.universal, report.reference);
  return report;
}

}  // namespace dsched
