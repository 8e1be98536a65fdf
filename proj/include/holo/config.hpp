#pragma once

#include <string>
#include <vector>

#include "holo/eigenframe.hpp"

namespace holo::cli {

// Flat key=value run configuration; file values first, then --set overrides.
// Unknown keys are rejected.
struct RunConfig {
  std::string model = "spin_half";
  double T = 1.0;
  int p = 1;

  std::string loop = "lambda";
  double lambda0 = 0.0;
  double gamma0 = 0.7;
  double eta0 = 0.0;
  double xi0 = 0.0;
  double zeta0 = 0.0;
  double turns = 1.0;
  std::string waypoints;  // "l,g,x ; l,g,x ; ..." (5 numbers per point on S^1 x S^4)

  int K = 2048;
  std::string policy = "smooth_phase";
  double deg_tol = -1.0;  // <0: model default
  double perm_tol = 1e-3;

  int N_periods = 0;  // 0: no propagation

  std::string sweep = "lambda";
  double sweep_from = 0.0;
  double sweep_to = 12.566370614359172;  // two turns

  double compare_tol = 1e-6;
  double propagate_tol = 2e-2;

  std::string out;

  ModelSpec model_spec() const;
  ParameterPoint base_point() const;
  LoopDef loop_def() const;
  GaugePolicy gauge_policy() const;
  double effective_deg_tol() const;
};

RunConfig parse_config(const std::string& config_path,
                       const std::vector<std::string>& overrides);

}  // namespace holo::cli
