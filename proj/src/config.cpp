#include "holo/config.hpp"

#include <fstream>
#include <sstream>

namespace holo::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  }
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "model") cfg.model = value;
  else if (key == "T") cfg.T = parse_double(key, value);
  else if (key == "p") cfg.p = parse_int(key, value);
  else if (key == "loop") cfg.loop = value;
  else if (key == "lambda0") cfg.lambda0 = parse_double(key, value);
  else if (key == "gamma0") cfg.gamma0 = parse_double(key, value);
  else if (key == "eta0") cfg.eta0 = parse_double(key, value);
  else if (key == "xi0") cfg.xi0 = parse_double(key, value);
  else if (key == "zeta0") cfg.zeta0 = parse_double(key, value);
  else if (key == "turns") cfg.turns = parse_double(key, value);
  else if (key == "waypoints") cfg.waypoints = value;
  else if (key == "K") cfg.K = parse_int(key, value);
  else if (key == "policy") cfg.policy = value;
  else if (key == "deg_tol") cfg.deg_tol = parse_double(key, value);
  else if (key == "perm_tol") cfg.perm_tol = parse_double(key, value);
  else if (key == "N_periods") cfg.N_periods = parse_int(key, value);
  else if (key == "sweep") cfg.sweep = value;
  else if (key == "sweep_from") cfg.sweep_from = parse_double(key, value);
  else if (key == "sweep_to") cfg.sweep_to = parse_double(key, value);
  else if (key == "compare_tol") cfg.compare_tol = parse_double(key, value);
  else if (key == "propagate_tol") cfg.propagate_tol = parse_double(key, value);
  else if (key == "out") cfg.out = value;
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_line(RunConfig& cfg, const std::string& raw, const std::string& where) {
  const std::string line = trim(raw);
  if (line.empty() || line[0] == '#') return;
  const auto eq = line.find('=');
  if (eq == std::string::npos)
    throw ConfigError(where + ": expected key=value, got '" + line + "'");
  apply(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

void validate(const RunConfig& cfg) {
  if (cfg.model != "spin_half" && cfg.model != "spin_threehalf")
    throw ConfigError("model must be spin_half or spin_threehalf, got '" + cfg.model + "'");
  static const char* loops[] = {"lambda", "gamma", "eta", "xi", "zeta", "constant", "waypoints"};
  bool ok = false;
  for (const char* l : loops) ok = ok || cfg.loop == l;
  if (!ok) throw ConfigError("unknown loop '" + cfg.loop + "'");
  if (cfg.model == "spin_half" && (cfg.loop == "eta" || cfg.loop == "zeta"))
    throw ConfigError("loop '" + cfg.loop + "' needs the spin_threehalf model");
  if (cfg.K < 16) throw ConfigError("K must be at least 16");
  if (cfg.N_periods < 0) throw ConfigError("N_periods must be non-negative");
  if (cfg.perm_tol <= 0 || cfg.perm_tol >= 0.5) throw ConfigError("perm_tol out of range");
  gauge_policy_from_string(cfg.policy);  // throws on bad value
}

}  // namespace

RunConfig parse_config(const std::string& config_path,
                       const std::vector<std::string>& overrides) {
  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      apply_line(cfg, line, config_path + ":" + std::to_string(lineno));
    }
  }
  for (const std::string& kv : overrides) apply_line(cfg, kv, "--set " + kv);
  validate(cfg);
  return cfg;
}

ModelSpec RunConfig::model_spec() const {
  if (model == "spin_half") return ModelSpec::kicked_spin_half(T, p);
  return ModelSpec::kicked_spin_threehalf(T, p);
}

ParameterPoint RunConfig::base_point() const {
  if (model == "spin_half") return ParameterPoint::s2(lambda0, gamma0, xi0);
  return ParameterPoint::s4(lambda0, gamma0, eta0, xi0, zeta0);
}

LoopDef RunConfig::loop_def() const {
  if (loop == "constant") return LoopDef::constant(base_point());
  if (loop == "waypoints") {
    std::vector<ParameterPoint> pts;
    std::stringstream ss(waypoints);
    std::string chunk;
    while (std::getline(ss, chunk, ';')) {
      std::vector<double> vals;
      std::stringstream cs(chunk);
      std::string num;
      while (std::getline(cs, num, ',')) {
        const std::string t = trim(num);
        if (!t.empty()) vals.push_back(parse_double("waypoints", t));
      }
      if (model == "spin_half") {
        if (vals.size() != 3)
          throw ConfigError("waypoints: spin_half points need lambda,gamma,xi");
        pts.push_back(ParameterPoint::s2(vals[0], vals[1], vals[2]));
      } else {
        if (vals.size() != 5)
          throw ConfigError("waypoints: spin_threehalf points need lambda,gamma,eta,xi,zeta");
        pts.push_back(ParameterPoint::s4(vals[0], vals[1], vals[2], vals[3], vals[4]));
      }
    }
    return LoopDef::from_waypoints(std::move(pts));
  }
  return LoopDef::coordinate_loop(loop, base_point(), turns);
}

GaugePolicy RunConfig::gauge_policy() const { return gauge_policy_from_string(policy); }

double RunConfig::effective_deg_tol() const {
  return deg_tol > 0.0 ? deg_tol : default_deg_tol(model_spec());
}

}  // namespace holo::cli
