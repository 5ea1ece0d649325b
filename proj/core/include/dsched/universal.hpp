#pragma once

#include <cstdint>
#include <vector>

#include "dsched/profile.hpp"
#include "dsched/rules.hpp"

namespace dsched {

// Speed factor of the machine the program runs on. A rule taking t steps on
// the base machine takes ceil(t/k) here.
struct MachineSpeedup {
  double k = 1.0;
};

std::int64_t scaled_runtime(std::int64_t t, const MachineSpeedup& m);

struct UniversalStage {
  Schedule schedule;
  std::int64_t nominal_deadline = 0;
};

// Doubling construction: stage j holds the best known-deadline answer for
// deadline epsilon*2^j. Run in order, the stages give a program that is never
// far behind any single fixed-deadline specialist.
struct UniversalProgram {
  std::vector<UniversalStage> stages;
  std::int64_t epsilon = 1;
};

// Stage list stops at the first deadline covering the longest rule; beyond
// that every stage would repeat the same singleton.
UniversalProgram build_universal(const std::vector<Rule>& rules, std::int64_t epsilon);

// Quality step function of the whole staged run on the sped-up machine.
Profile universal_profile(const UniversalProgram& prog, const MachineSpeedup& m);

struct HeraldOutcome {
  double quality = 0.0;
  std::int64_t act_time = 0;
};

// Stages run back to back until the deadline strikes; the act uses the best
// stage finished by then. A stage finishing exactly at the deadline counts.
HeraldOutcome run_universal(const UniversalProgram& prog, const MachineSpeedup& m,
                            std::int64_t deadline);

enum class AspirationStatus { kMet, kExhausted };

struct AspirationOutcome {
  double quality = 0.0;
  std::int64_t act_time = 0;
  AspirationStatus status = AspirationStatus::kExhausted;
  std::size_t stage_index = 0;
};

// Stop after the first stage whose quality reaches the threshold, never
// running past act_by. Exhausted means no stage got there in time; quality
// is then the best completed.
AspirationOutcome run_universal(const UniversalProgram& prog, const MachineSpeedup& m,
                                double threshold, std::int64_t act_by);

struct DominanceReport {
  bool dominates = false;
  Profile universal;
  Profile reference;
};

// Does the staged program on the k-fast machine match or beat the reference
// schedule on the base machine at every time?
DominanceReport check_dominance(const UniversalProgram& prog, const MachineSpeedup& m,
                                const Schedule& reference);

}  // namespace dsched
