// Command line front end: every subcommand reads plain text files, writes a
// deterministic table or key/value block, and exits nonzero with a one-line
// diagnostic on any precondition violation.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dsched/distribution.hpp"
#include "dsched/errors.hpp"
#include "dsched/io.hpp"
#include "dsched/learning.hpp"
#include "dsched/mailsort.hpp"
#include "dsched/optimize.hpp"
#include "dsched/oracle.hpp"
#include "dsched/profile.hpp"
#include "dsched/rules.hpp"
#include "dsched/universal.hpp"
#include "dsched/value.hpp"

namespace {

using namespace dsched;

struct Opts {
  std::string rules_path;
  std::string regime;
  std::string dist_spec;
  std::string algorithm = "auto";
  std::string schedule_str;
  std::string reference_str;
  std::string out_path;
  std::string format = "csv";
  std::string kind_str;
  std::string config_path;
  std::string program = "bo";
  std::int64_t deadline = 0;
  std::int64_t epsilon = 1;
  std::int64_t episodes = 0;
  std::int64_t trials = 200;
  double cost = 0.0;
  double speedup = 1.0;
  double lambda = 0.0;
  double epsq = 0.05;
  double deltaq = 0.01;
  std::uint64_t seed = 1;
  bool all_perms = false;
  bool emit_candidates = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string> schedule_ids(const std::string& str) {
  if (str.empty() || str == "-") return {};
  return split(str, ',');
}

// Rows render as csv (header + comma rows) or as padded columns.
std::string render_rows(const std::vector<std::vector<std::string>>& rows,
                        const std::string& format) {
  std::string out;
  if (format == "csv") {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      out += row[i];
      if (i + 1 < row.size()) out.append(width[i] - row[i].size(), ' ');
    }
    out += '\n';
  }
  return out;
}

void emit(const Opts& o, const std::string& body) {
  const std::string text = "# seed=" + std::to_string(o.seed) + "\n" + body;
  if (o.out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + o.out_path);
  f << text;
}

DeadlineModel build_model(const Opts& o, bool has_deadline, bool has_cost) {
  if (o.regime == "deadline") {
    if (!has_deadline) throw ParameterError("--regime deadline needs --deadline");
    return FixedDeadline{o.deadline};
  }
  if (o.regime == "cost") {
    if (!has_cost) throw ParameterError("--regime cost needs --cost");
    return FixedTimeCost{o.cost};
  }
  if (o.regime == "stochastic") {
    if (o.dist_spec.empty()) throw ParameterError("--regime stochastic needs --dist");
    return StochasticDeadline{parse_distribution(o.dist_spec)};
  }
  throw ParameterError("--regime must be deadline, cost, or stochastic");
}

std::string describe_model(const DeadlineModel& model) {
  if (const auto* fd = std::get_if<FixedDeadline>(&model))
    return "deadline " + std::to_string(fd->at);
  if (const auto* fc = std::get_if<FixedTimeCost>(&model))
    return "cost " + format_real(fc->per_step);
  return "stochastic " + std::get<StochasticDeadline>(model).dist.describe();
}

// The uniform-window and exponential closed forms only apply to their own
// distributions; asking for them elsewhere is a regime error, not a fallback.
std::int64_t window_of(const DeadlineDistribution& dist) {
  if (dist.kind() != DeadlineKind::kUniform || dist.uniform_lower() != 0.0)
    throw RegimeError("window optimizer needs a uniform:0:W deadline");
  const double w = dist.uniform_upper();
  const auto wi = static_cast<std::int64_t>(std::llround(w));
  if (static_cast<double>(wi) != w)
    throw RegimeError("window optimizer needs an integer window");
  return wi;
}

OptimizationResult dispatch_stochastic(const std::string& algorithm,
                                       const std::vector<Rule>& rules,
                                       const DeadlineDistribution& dist,
                                       std::string& resolved) {
  if (algorithm == "general") {
    resolved = "general";
    return optimize_general(rules, dist);
  }
  if (algorithm == "long-uniform") {
    resolved = "long-uniform";
    return optimize_long_uniform(rules, window_of(dist));
  }
  if (algorithm == "short-uniform") {
    resolved = "short-uniform";
    return optimize_short_uniform(rules, window_of(dist));
  }
  if (algorithm == "exponential") {
    resolved = "exponential";
    if (dist.kind() != DeadlineKind::kExponential)
      throw RegimeError("exponential optimizer needs an exp:beta deadline");
    return optimize_exponential(rules, dist.exponential_rate());
  }
  if (dist.kind() == DeadlineKind::kUniform && dist.uniform_lower() == 0.0) {
    const double w = dist.uniform_upper();
    const auto wi = static_cast<std::int64_t>(std::llround(w));
    if (static_cast<double>(wi) == w && wi >= 1) {
      std::int64_t total = 0;
      for (const auto& r : rules) total += r.runtime;
      if (total <= wi) {
        resolved = "long-uniform";
        return optimize_long_uniform(rules, wi);
      }
      resolved = "short-uniform";
      return optimize_short_uniform(rules, wi);
    }
  }
  if (dist.kind() == DeadlineKind::kExponential) {
    resolved = "exponential";
    return optimize_exponential(rules, dist.exponential_rate());
  }
  resolved = "general";
  return optimize_general(rules, dist);
}

int run_optimize(const Opts& o, bool has_deadline, bool has_cost) {
  const auto rules = load_rules(o.rules_path);
  const auto model = build_model(o, has_deadline, has_cost);
  OptimizationResult res;
  std::string resolved = o.algorithm;
  if (const auto* fd = std::get_if<FixedDeadline>(&model)) {
    res = optimize_fixed_deadline(rules, fd->at);
    resolved = "fixed-deadline";
  } else if (const auto* fc = std::get_if<FixedTimeCost>(&model)) {
    res = optimize_fixed_cost(rules, fc->per_step);
    resolved = "fixed-cost";
  } else {
    res = dispatch_stochastic(o.algorithm, rules,
                              std::get<StochasticDeadline>(model).dist, resolved);
  }
  std::string body = "regime: " + describe_model(model) + "\n";
  body += "algorithm: " + resolved + "\n";
  body += "schedule: " + format_schedule(res.schedule) + "\n";
  body += "value: " + format_real(res.value) + "\n";
  emit(o, body);
  return 0;
}

int run_evaluate(const Opts& o, bool has_deadline, bool has_cost) {
  const auto rules = load_rules(o.rules_path);
  const auto model = build_model(o, has_deadline, has_cost);
  const auto schedule = resolve_schedule(rules, schedule_ids(o.schedule_str));
  std::string body = "regime: " + describe_model(model) + "\n";
  body += "schedule: " + format_schedule(schedule) + "\n";
  body += "value: " + format_real(value_of(schedule, model)) + "\n";
  emit(o, body);
  return 0;
}

int run_profile(const Opts& o) {
  const auto rules = load_rules(o.rules_path);
  const auto schedule = resolve_schedule(rules, schedule_ids(o.schedule_str));
  const auto prof = profile_of(schedule);
  std::vector<std::vector<std::string>> rows = {{"time", "quality"}};
  for (const auto& step : prof)
    rows.push_back({std::to_string(step.time), format_real(step.quality)});
  std::string body = "schedule: " + format_schedule(schedule) + "\n";
  body += render_rows(rows, o.format);
  emit(o, body);
  return 0;
}

int run_oracle(const Opts& o, bool has_deadline, bool has_cost) {
  const auto rules = load_rules(o.rules_path);
  const auto model = build_model(o, has_deadline, has_cost);
  const auto space =
      o.all_perms ? SearchSpace::kAllPermutations : SearchSpace::kSortedOnly;
  const auto report = oracle_optimize(rules, model, space);
  std::string body = "regime: " + describe_model(model) + "\n";
  body += std::string("space: ") + (o.all_perms ? "permutations" : "sorted") + "\n";
  body += "best_value: " + format_real(report.best_value) + "\n";
  body += "candidates: " + std::to_string(report.candidates_evaluated) + "\n";
  body += "co_optimal: " + std::to_string(report.best_schedules.size()) + "\n";
  for (const auto& s : report.best_schedules)
    body += "schedule: " + format_schedule(s) + "\n";
  if (o.emit_candidates) {
    const auto evaluate = [&model](const Schedule& s) { return value_of(s, model); };
    std::vector<std::vector<std::string>> rows = {{"schedule", "value"}};
    for (const auto& [s, v] : oracle_candidates(rules, evaluate, space))
      rows.push_back({format_schedule(s), format_real(v)});
    body += render_rows(rows, o.format);
  }
  emit(o, body);
  return 0;
}

int run_universal(const Opts& o) {
  const auto rules = load_rules(o.rules_path);
  const auto prog = build_universal(rules, o.epsilon);
  const MachineSpeedup m{o.speedup};
  std::string body = "epsilon: " + std::to_string(prog.epsilon) + "\n";
  body += "speedup: " + format_real(m.k) + "\n";
  body += "stages: " + std::to_string(prog.stages.size()) + "\n";
  std::vector<std::vector<std::string>> rows = {{"stage", "deadline", "schedule"}};
  std::int64_t total = 0;
  for (std::size_t i = 0; i < prog.stages.size(); ++i) {
    const auto& st = prog.stages[i];
    rows.push_back({std::to_string(i), std::to_string(st.nominal_deadline),
                    format_schedule(st.schedule)});
    for (const auto& r : st.schedule) total += scaled_runtime(r.runtime, m);
  }
  body += render_rows(rows, o.format);
  body += "total_time: " + std::to_string(total) + "\n";
  if (!o.reference_str.empty()) {
    const auto ref = resolve_schedule(rules, schedule_ids(o.reference_str));
    const auto dom = check_dominance(prog, m, ref);
    body += "reference: " + format_schedule(ref) + "\n";
    body += std::string("dominates: ") + (dom.dominates ? "true" : "false") + "\n";
  }
  emit(o, body);
  return 0;
}

int run_learn(const Opts& o) {
  const auto rules = load_rules(o.rules_path);
  if (o.dist_spec.empty()) throw ParameterError("learn needs --dist");
  const auto dist = parse_distribution(o.dist_spec);
  const auto report =
      verify_deficit(rules, dist, o.epsq, o.deltaq, o.trials, o.seed);
  std::string body = "samples_per_rule: " + std::to_string(report.sample_count) + "\n";
  body += "bound: " + format_real(report.bound) + "\n";
  body += "true_optimum: " + format_real(report.true_optimum) + "\n";
  body += "exceed_count: " + std::to_string(report.exceed_count) + "\n";
  std::vector<std::vector<std::string>> rows = {
      {"trial", "samples", "deficit", "bound", "exceeded"}};
  for (std::size_t i = 0; i < report.deficits.size(); ++i)
    rows.push_back({std::to_string(i), std::to_string(report.sample_count),
                    format_real(report.deficits[i]), format_real(report.bound),
                    report.deficits[i] > report.bound ? "1" : "0"});
  body += render_rows(rows, o.format);
  emit(o, body);
  return 0;
}

SorterConfig sorter_config(const Opts& o, bool has_lambda, bool has_episodes,
                           bool has_seed, bool has_dist) {
  SorterConfig cfg;
  if (!o.config_path.empty()) cfg = load_sorter_config(o.config_path);
  if (has_lambda) cfg.lambda = o.lambda;
  if (has_episodes) cfg.episodes = o.episodes;
  if (has_seed) cfg.seed = o.seed;
  if (has_dist) cfg.arrival = parse_distribution(o.dist_spec);
  validate_config(cfg);
  return cfg;
}

int run_simulate(const Opts& o, bool has_lambda, bool has_episodes, bool has_seed,
                 bool has_dist) {
  auto cfg = sorter_config(o, has_lambda, has_episodes, has_seed, has_dist);
  Opts header = o;
  header.seed = cfg.seed;
  const auto rules = make_network_rules(cfg);
  const auto comps = build_comparators(rules, cfg.arrival);
  const Schedule* schedule = nullptr;
  if (o.program == "bo") schedule = &comps.bo;
  else if (o.program == "singleton") schedule = &comps.best_singleton;
  else if (o.program == "rule50") schedule = &comps.mean_rule;
  else if (o.program == "rule90") schedule = &comps.safe_rule;
  else throw ParameterError("--program must be bo, singleton, rule50, or rule90");
  const auto stats = run_episodes(*schedule, cfg);
  std::string body = "program: " + o.program + "\n";
  body += "arrival: " + cfg.arrival.describe() + "\n";
  body += "schedule: " + format_schedule(*schedule) + "\n";
  if (o.program == "rule90" && comps.safe_rule_fallback)
    body += "note: no rule finishes in 90% of episodes; shortest used\n";
  body += "episodes: " + std::to_string(stats.episodes) + "\n";
  body += "mean_utility: " + format_real(stats.mean_utility) + "\n";
  body += "se_mean_utility: " + format_real(stats.se_utility) + "\n";
  body += "utility_per_second: " + format_real(stats.utility_per_second) + "\n";
  body += "se_utility_per_second: " + format_real(stats.se_utility_per_second) + "\n";
  body += "accuracy: " + format_real(stats.accuracy) + "\n";
  body += "se_accuracy: " + format_real(stats.se_accuracy) + "\n";
  body += "reject_rate: " + format_real(stats.reject_rate) + "\n";
  body += "se_reject_rate: " + format_real(stats.se_reject_rate) + "\n";
  body += "error_rate: " + format_real(stats.error_rate) + "\n";
  body += "mean_act_time: " + format_real(stats.mean_act_time) + "\n";
  body += "se_act_time: " + format_real(stats.se_act_time) + "\n";
  body += "total_time: " + format_real(stats.total_time) + "\n";
  emit(header, body);
  return 0;
}

int run_sweep(const Opts& o, bool has_lambda, bool has_episodes, bool has_seed,
              bool has_dist) {
  auto cfg = sorter_config(o, has_lambda, has_episodes, has_seed, has_dist);
  Opts header = o;
  header.seed = cfg.seed;
  SweepKind kind;
  if (o.kind_str == "fig4") kind = SweepKind::kFig4;
  else if (o.kind_str == "fig5") kind = SweepKind::kFig5;
  else if (o.kind_str == "fig7") kind = SweepKind::kFig7;
  else throw ParameterError("--kind must be fig4, fig5, or fig7");
  const auto table = sweep_experiment(kind, cfg);
  std::vector<std::vector<std::string>> rows = {
      {"sweep_param", "program", "utility_per_sec", "stderr", "accuracy",
       "reject_rate"}};
  for (const auto& r : table)
    rows.push_back({format_real(r.sweep_param), r.program,
                    format_real(r.utility_per_sec), format_real(r.stderr_ups),
                    format_real(r.accuracy), format_real(r.reject_rate)});
  emit(header, render_rows(rows, o.format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  CLI::App app{"deliberation scheduling toolkit"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "rng seed recorded in the output header");
    cmd->add_option("--out", o.out_path, "write output here instead of stdout");
    cmd->add_option("--format", o.format, "row format")
        ->check(CLI::IsMember({"csv", "table"}));
  };
  const auto add_regime = [&](CLI::App* cmd) {
    cmd->add_option("--regime", o.regime, "deadline, cost, or stochastic")
        ->required()
        ->check(CLI::IsMember({"deadline", "cost", "stochastic"}));
    cmd->add_option("--deadline", o.deadline, "known deadline (regime deadline)");
    cmd->add_option("--cost", o.cost, "cost per time step (regime cost)");
    cmd->add_option("--dist", o.dist_spec,
                    "deadline distribution: uniform:a:b exp:beta poisson:mu pmf:path");
  };

  auto* optimize = app.add_subcommand("optimize", "best schedule for a regime");
  optimize->add_option("--rules", o.rules_path, "rule file")->required();
  add_regime(optimize);
  optimize->add_option("--algorithm", o.algorithm, "optimizer variant")
      ->check(CLI::IsMember(
          {"auto", "general", "long-uniform", "short-uniform", "exponential"}));
  add_common(optimize);

  auto* evaluate = app.add_subcommand("evaluate", "value of a given schedule");
  evaluate->add_option("--rules", o.rules_path, "rule file")->required();
  evaluate->add_option("--schedule", o.schedule_str, "comma-separated ids, - for empty")
      ->required();
  add_regime(evaluate);
  add_common(evaluate);

  auto* profile = app.add_subcommand("profile", "quality step function of a schedule");
  profile->add_option("--rules", o.rules_path, "rule file")->required();
  profile->add_option("--schedule", o.schedule_str, "comma-separated ids, - for empty")
      ->required();
  add_common(profile);

  auto* oracle = app.add_subcommand("oracle", "exhaustive reference optimizer");
  oracle->add_option("--rules", o.rules_path, "rule file")->required();
  add_regime(oracle);
  oracle->add_flag("--all-permutations", o.all_perms,
                   "search every ordering, not just quality-sorted ones");
  oracle->add_flag("--emit-candidates", o.emit_candidates,
                   "also list every candidate with its value");
  add_common(oracle);

  auto* universal = app.add_subcommand("universal", "doubling stage program");
  universal->add_option("--rules", o.rules_path, "rule file")->required();
  universal->add_option("--epsilon", o.epsilon, "first stage deadline");
  universal->add_option("--speedup", o.speedup, "machine speedup factor k");
  universal->add_option("--reference", o.reference_str,
                        "schedule to test dominance against (comma-separated ids)");
  add_common(universal);

  auto* learn = app.add_subcommand("learn", "quality estimation deficit check");
  learn->add_option("--rules", o.rules_path, "rule file")->required();
  learn->add_option("--dist", o.dist_spec, "deadline distribution")->required();
  learn->add_option("--epsq", o.epsq, "target estimate accuracy");
  learn->add_option("--deltaq", o.deltaq, "estimate failure probability");
  learn->add_option("--trials", o.trials, "independent estimate/optimize trials");
  add_common(learn);

  auto* simulate = app.add_subcommand("simulate", "run one sorter program");
  simulate->add_option("--config", o.config_path, "sorter config file");
  simulate->add_option("--program", o.program, "bo, singleton, rule50, or rule90");
  simulate->add_option("--lambda", o.lambda, "accuracy profile rate override");
  simulate->add_option("--episodes", o.episodes, "episode count override");
  simulate->add_option("--dist", o.dist_spec, "arrival distribution override");
  add_common(simulate);

  auto* sweep = app.add_subcommand("sweep", "comparator tables over a grid");
  sweep->add_option("--kind", o.kind_str, "fig4, fig5, or fig7")->required();
  sweep->add_option("--config", o.config_path, "sorter config file");
  sweep->add_option("--lambda", o.lambda, "accuracy profile rate override");
  sweep->add_option("--episodes", o.episodes, "episode count override");
  sweep->add_option("--dist", o.dist_spec, "arrival distribution override");
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  try {
    if (optimize->parsed())
      return run_optimize(o, optimize->count("--deadline") > 0,
                          optimize->count("--cost") > 0);
    if (evaluate->parsed())
      return run_evaluate(o, evaluate->count("--deadline") > 0,
                          evaluate->count("--cost") > 0);
    if (profile->parsed()) return run_profile(o);
    if (oracle->parsed())
      return run_oracle(o, oracle->count("--deadline") > 0,
                        oracle->count("--cost") > 0);
    if (universal->parsed()) return run_universal(o);
    if (learn->parsed()) return run_learn(o);
    if (simulate->parsed())
      return run_simulate(o, simulate->count("--lambda") > 0,
                          simulate->count("--episodes") > 0,
                          simulate->count("--seed") > 0,
                          simulate->count("--dist") > 0);
    if (sweep->parsed())
      return run_sweep(o, sweep->count("--lambda") > 0,
                       sweep->count("--episodes") > 0,
                       sweep->count("--seed") > 0, sweep->count("--dist") > 0);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
