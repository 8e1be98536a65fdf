#include "holo/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include "holo/oracles.hpp"
#include "holo/propagate.hpp"

namespace holo::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + out_path + "'");
  f << text << "\n";
}

void write_report(ordered_json& report, const std::string& out_path) {
  finalize_report(report);
  write_text(report.dump(2), out_path);
}

void note(bool quiet, const std::string& line) {
  if (!quiet) std::cerr << line << "\n";
}

ordered_json result_json(const HolonomyResult& res) {
  ordered_json j;
  j["W"] = matrix_json(res.W);
  j["B"] = matrix_json(res.B);
  j["M"] = matrix_json(res.M);
  if (res.permutation)
    j["permutation"] = *res.permutation;
  else
    j["permutation"] = nullptr;
  if (!res.phases.empty()) {
    ordered_json ph = ordered_json::array();
    for (const cplx& z : res.phases) ph.push_back(phase_json(z));
    j["phases"] = ph;
  }
  if (!res.block_unitaries.empty()) {
    ordered_json bu = ordered_json::array();
    for (const CMatrix& g : res.block_unitaries) bu.push_back(matrix_json(g));
    j["block_unitaries"] = bu;
  }
  j["blocks"] = res.blocks;
  j["delta_n"] = res.delta_n;
  if (!res.dynamical_phases.empty()) j["dynamical_phases"] = res.dynamical_phases;
  return j;
}

oracles::OracleLoop oracle_loop_from(const std::string& name) {
  if (name == "xi") return oracles::OracleLoop::Xi;
  if (name == "gamma") return oracles::OracleLoop::Gamma;
  if (name == "lambda") return oracles::OracleLoop::Lambda;
  throw UnsupportedLoop("no closed-form oracle for loop '" + name + "'");
}

bool any_degenerate(const std::vector<std::vector<int>>& blocks) {
  for (const auto& b : blocks)
    if (b.size() > 1) return true;
  return false;
}

// permutation content of M, block-aware; nullopt when not permutation-like
std::optional<std::vector<int>> permutation_of(const CMatrix& m,
                                               const std::vector<std::vector<int>>& blocks,
                                               double tol) {
  if (any_degenerate(blocks)) {
    if (auto bp = classify_block_permutation(m, blocks, tol)) return bp->column_map;
    return std::nullopt;
  }
  if (auto cp = classify_permutation(m, tol)) return cp->permutation;
  return std::nullopt;
}

}  // namespace

ordered_json matrix_json(const CMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

ordered_json phase_json(const cplx& z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

ordered_json provenance_json(const RunConfig& cfg) {
  ordered_json j;
  j["model"] = cfg.model;
  j["T"] = cfg.T;
  j["p"] = cfg.p;
  j["T_p"] = 1.0;
  j["loop"] = cfg.loop;
  j["base"] = {{"lambda", cfg.lambda0}, {"gamma", cfg.gamma0}, {"eta", cfg.eta0},
               {"xi", cfg.xi0},         {"zeta", cfg.zeta0}};
  j["turns"] = cfg.turns;
  j["K"] = cfg.K;
  j["policy"] = cfg.policy;
  j["deg_tol"] = cfg.effective_deg_tol();
  j["perm_tol"] = cfg.perm_tol;
  if (cfg.N_periods > 0) j["N_periods"] = cfg.N_periods;
  if (cfg.model == "spin_threehalf") j["theta_convention"] = oracles::resolved_theta().name;
  return j;
}

ordered_json error_json(const Error& err) {
  ordered_json j;
  j["schema"] = "holonomy-lab/error/1";
  j["error"] = {{"type", err.kind()}, {"message", err.what()}, {"exit_code", err.exit_code()}};
  return j;
}

void finalize_report(ordered_json& report) {
  report.erase("timestamp");
  report.erase("canonical_hash");
  report["canonical_hash"] = hex64(fnv1a64(report.dump()));
  report["timestamp"] = iso_timestamp();
}

int emit_error(const Error& err, const std::string& out_path, bool quiet) {
  ordered_json j = error_json(err);
  write_text(j.dump(2), out_path);
  note(quiet, std::string("error: ") + err.kind() + ": " + err.what());
  return err.exit_code();
}

int run_holonomy(const RunConfig& cfg, bool quiet) {
  const ModelSpec spec = cfg.model_spec();
  const LoopDef loop = cfg.loop_def();
  const Bundle bundle =
      bundle_along(spec, loop, cfg.K, cfg.gauge_policy(), cfg.effective_deg_tol());
  HolonomyResult res = holonomy_M(bundle, cfg.perm_tol);
  if (cfg.N_periods > 0) {
    Schedule sched{cfg.N_periods, loop, 1};
    res.dynamical_phases = dynamical_phase(bundle, sched);
  }

  ordered_json report;
  report["schema"] = "holonomy-lab/holonomy/1";
  report["provenance"] = provenance_json(cfg);
  report["result"] = result_json(res);
  report["quasienergies_start"] = bundle.frames.front().quasienergies;
  report["quasienergies_end_tracked"] = bundle.frames.back().quasienergies;
  write_report(report, cfg.out);
  note(quiet, "holonomy: wrote " + (cfg.out.empty() ? std::string("stdout") : cfg.out));
  return 0;
}

int run_spectrum(const RunConfig& cfg, bool quiet) {
  const ModelSpec spec = cfg.model_spec();
  std::vector<ParameterPoint> points;
  points.reserve(static_cast<size_t>(cfg.K) + 1);
  for (int k = 0; k <= cfg.K; ++k) {
    ParameterPoint pt = cfg.base_point();
    const double v = cfg.sweep_from + (cfg.sweep_to - cfg.sweep_from) * k / cfg.K;
    if (cfg.sweep == "lambda") {
      pt.lambda = v;
    } else {
      LoopDef probe = LoopDef::coordinate_loop(cfg.sweep, pt, 0.0);  // validates the name
      (void)probe;
      if (cfg.sweep == "gamma") pt.sphere[0] = v;
      else if (cfg.sweep == "eta") pt.sphere[1] = v;
      else if (cfg.sweep == "xi") pt.sphere[pt.sphere.size() == 2 ? 1 : 2] = v;
      else pt.sphere[3] = v;
    }
    points.push_back(pt);
  }

  GaugePolicy policy = cfg.gauge_policy();
  if (policy == GaugePolicy::AnalyticOracle) policy = GaugePolicy::RawSolver;
  const std::vector<Frame> frames = track_open_path(spec, points, policy,
                                                    cfg.effective_deg_tol());

  const double period = kTwoPi / spec.T_p;
  const int d = spec.dim();
  std::string csv;
  csv += "sweep";
  for (int b = 0; b < d; ++b) csv += ",eps_tracked_" + std::to_string(b);
  for (int b = 0; b < d; ++b) csv += ",eps_principal_" + std::to_string(b);
  csv += "\n";
  char buf[64];
  for (int k = 0; k <= cfg.K; ++k) {
    const double v = cfg.sweep_from + (cfg.sweep_to - cfg.sweep_from) * k / cfg.K;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    csv += buf;
    const Frame& f = frames[static_cast<size_t>(k)];
    for (int b = 0; b < d; ++b) {
      std::snprintf(buf, sizeof buf, ",%.17g", f.quasienergies[static_cast<size_t>(b)]);
      csv += buf;
    }
    for (int b = 0; b < d; ++b) {
      double pr = std::fmod(f.quasienergies[static_cast<size_t>(b)], period);
      if (pr < 0.0) pr += period;
      std::snprintf(buf, sizeof buf, ",%.17g", pr);
      csv += buf;
    }
    csv += "\n";
  }
  if (cfg.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + cfg.out + "'");
    f << csv;
  }
  note(quiet, "spectrum: " + std::to_string(cfg.K + 1) + " rows");
  return 0;
}

int run_compare(const RunConfig& cfg, bool quiet) {
  const ModelSpec spec = cfg.model_spec();
  const LoopDef loop = cfg.loop_def();
  const oracles::OracleValues oracle =
      oracles::analytic_holonomies(spec.kind, oracle_loop_from(cfg.loop), cfg.p,
                                   cfg.base_point(), cfg.T);

  const Bundle bundle =
      bundle_along(spec, loop, cfg.K, cfg.gauge_policy(), cfg.effective_deg_tol());
  const HolonomyResult res = holonomy_M(bundle, cfg.perm_tol);
  const auto& blocks = bundle.blocks();

  const double m_raw = frobenius_distance(res.M, oracle.M);
  const double m_conj = conjugation_minimized_distance(res.M, oracle.M, blocks);
  const double w_raw = frobenius_distance(res.W, oracle.W);
  const double b_raw = frobenius_distance(res.B, oracle.B);

  const auto perm_numeric = permutation_of(res.M, blocks, cfg.perm_tol);
  const auto perm_oracle = permutation_of(oracle.M, blocks, cfg.perm_tol);
  const bool perm_match = perm_numeric.has_value() == perm_oracle.has_value() &&
                          (!perm_numeric || *perm_numeric == *perm_oracle);

  bool pass = m_conj <= cfg.compare_tol && perm_match;
  if (cfg.gauge_policy() == GaugePolicy::AnalyticOracle)
    pass = pass && m_raw <= cfg.compare_tol && w_raw <= cfg.compare_tol &&
           b_raw <= cfg.compare_tol;

  ordered_json report;
  report["schema"] = "holonomy-lab/compare/1";
  report["provenance"] = provenance_json(cfg);
  report["oracle"] = {{"W", matrix_json(oracle.W)},
                      {"B", matrix_json(oracle.B)},
                      {"M", matrix_json(oracle.M)},
                      {"E", oracle.E},
                      {"Q", oracle.Q}};
  report["numeric"] = result_json(res);
  ordered_json dist;
  dist["M_raw"] = m_raw;
  dist["M_conjugation_minimized"] = m_conj;
  dist["W_raw"] = w_raw;
  dist["B_raw"] = b_raw;

  if (cfg.N_periods > 0) {
    Schedule sched{cfg.N_periods, loop, 1};
    const CMatrix u_total = stroboscopic_evolve(spec, sched);
    const std::vector<double> phi = dynamical_phase(bundle, sched);
    const CMatrix m_num = extract_geometric(u_total, bundle.frames.front(), phi);
    dist["M_vs_propagated"] = frobenius_distance(res.M, m_num);
    dist["propagated_unitarity_defect"] = unitarity_defect(m_num);
    const auto perm_prop = permutation_of(m_num, blocks, 0.1);
    const bool prop_perm_match = perm_prop.has_value() == perm_numeric.has_value() &&
                                 (!perm_prop || *perm_prop == *perm_numeric);
    report["propagated_permutation_match"] = prop_perm_match;
    pass = pass && frobenius_distance(res.M, m_num) <= cfg.propagate_tol && prop_perm_match;
  }

  report["distances"] = dist;
  report["permutation_match"] = perm_match;
  report["tolerances"] = {{"compare_tol", cfg.compare_tol}, {"propagate_tol", cfg.propagate_tol}};
  report["pass"] = pass;
  write_report(report, cfg.out);

  char line[160];
  std::snprintf(line, sizeof line, "compare: M raw %.3e, conj-min %.3e -> %s", m_raw, m_conj,
                pass ? "pass" : "FAIL");
  note(quiet, line);
  return pass ? 0 : 4;
}

int run_propagate(const RunConfig& cfg, bool quiet) {
  if (cfg.N_periods <= 0) throw ConfigError("propagate needs N_periods > 0");
  const ModelSpec spec = cfg.model_spec();
  const LoopDef loop = cfg.loop_def();
  const Bundle bundle =
      bundle_along(spec, loop, cfg.K, cfg.gauge_policy(), cfg.effective_deg_tol());
  const HolonomyResult res = holonomy_M(bundle, cfg.perm_tol);

  Schedule sched{cfg.N_periods, loop, 1};
  const CMatrix u_total = stroboscopic_evolve(spec, sched);
  const std::vector<double> phi = dynamical_phase(bundle, sched);
  const CMatrix m_num = extract_geometric(u_total, bundle.frames.front(), phi);

  ordered_json report;
  report["schema"] = "holonomy-lab/propagate/1";
  report["provenance"] = provenance_json(cfg);
  report["M_numeric"] = matrix_json(m_num);
  report["dynamical_phases"] = phi;
  report["unitarity_defect"] = unitarity_defect(m_num);
  report["distance_to_connection_M"] = frobenius_distance(res.M, m_num);
  const auto perm = permutation_of(m_num, bundle.blocks(), 0.1);
  if (perm)
    report["permutation"] = *perm;
  else
    report["permutation"] = nullptr;
  write_report(report, cfg.out);

  char line[120];
  std::snprintf(line, sizeof line, "propagate: N=%d, |M_num - M| = %.3e", cfg.N_periods,
                frobenius_distance(res.M, m_num));
  note(quiet, line);
  return 0;
}

}  // namespace holo::cli
