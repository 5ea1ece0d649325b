#include "dsched/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dsched/errors.hpp"

namespace dsched {

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // flush -0 so equal values print identically
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line;
  if (auto hash = body.find('#'); hash != std::string::npos) body.resize(hash);
  std::istringstream in(body);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

double parse_double(const std::string& tok, const std::string& what) {
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || p != end)
    throw ParseError("bad " + what + ": '" + tok + "'");
  return v;
}

std::int64_t parse_int(const std::string& tok, const std::string& what) {
  std::int64_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || p != end)
    throw ParseError("bad " + what + ": '" + tok + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

std::vector<Rule> parse_rules(const std::string& text) {
  std::vector<Rule> rules;
  std::istringstream in(text);
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() != 3)
      throw ParseError("rule line " + std::to_string(lineno) +
                       ": want 'id quality runtime'");
    rules.push_back({toks[0], parse_double(toks[1], "quality"),
                     parse_int(toks[2], "runtime")});
  }
  validate_rules(rules);
  return rules;
}

std::vector<Rule> load_rules(const std::string& path) {
  return parse_rules(read_file(path));
}

void save_rules(const std::string& path, const std::vector<Rule>& rules) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << "# id quality runtime\n";
  for (const auto& r : rules)
    out << r.id << ' ' << format_real(r.quality) << ' ' << r.runtime << '\n';
}

DeadlineDistribution load_pmf(const std::string& path) {
  std::vector<std::pair<std::int64_t, double>> entries;
  std::istringstream in(read_file(path));
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw ParseError("mass line " + std::to_string(lineno) +
                       ": want 'time probability'");
    entries.emplace_back(parse_int(toks[0], "time"),
                         parse_double(toks[1], "probability"));
  }
  return DeadlineDistribution::explicit_pmf(entries);
}

DeadlineDistribution parse_distribution(const std::string& spec) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const auto& kind = parts[0];
  if (kind == "uniform" && parts.size() == 3)
    return DeadlineDistribution::uniform(parse_double(parts[1], "lower bound"),
                                         parse_double(parts[2], "upper bound"));
  if (kind == "exp" && parts.size() == 2)
    return DeadlineDistribution::exponential(parse_double(parts[1], "rate"));
  if (kind == "poisson" && parts.size() == 2)
    return DeadlineDistribution::poisson(parse_double(parts[1], "mean"));
  if (kind == "pmf" && parts.size() >= 2)
    return load_pmf(spec.substr(4));  // path may itself contain colons
  throw ParseError("bad distribution '" + spec +
                   "' (want uniform:a:b, exp:beta, poisson:mu, or pmf:path)");
}

SorterConfig load_sorter_config(const std::string& path) {
  SorterConfig cfg;
  std::istringstream in(read_file(path));
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw ParseError("config line " + std::to_string(lineno) +
                       ": want 'key value'");
    const auto& key = toks[0];
    const auto& val = toks[1];
    if (key == "lambda") {
      cfg.lambda = parse_double(val, "lambda");
    } else if (key == "networks") {
      cfg.n_networks = parse_int(val, "networks");
    } else if (key == "runtimes") {
      cfg.runtimes.clear();
      std::string::size_type pos = 0;
      while (true) {
        const auto comma = val.find(',', pos);
        cfg.runtimes.push_back(
            parse_int(val.substr(pos, comma - pos), "runtime"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    } else if (key == "u1") {
      cfg.u1 = parse_double(val, "u1");
    } else if (key == "u2") {
      cfg.u2 = parse_double(val, "u2");
    } else if (key == "u3") {
      cfg.u3 = parse_double(val, "u3");
    } else if (key == "arrival") {
      cfg.arrival = parse_distribution(val);
    } else if (key == "episodes") {
      cfg.episodes = parse_int(val, "episodes");
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(val, "seed"));
    } else {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace dsched
