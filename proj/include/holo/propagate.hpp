#pragma once

#include <vector>

#include "holo/eigenframe.hpp"

namespace holo {

// Slow sweep schedule: the loop is traversed once over N_periods kick periods,
// with the parameter stepped once per period (piecewise-constant).
struct Schedule {
  int N_periods = 0;
  LoopDef loop;
  int samples_per_period = 1;
};

// Ordered product of one-period evolution operators along the slowly swept
// loop, earliest period acting first (rightmost). Static models use fixed-step
// midpoint factors e^{-i H(alpha_mid) T_p} instead.
CMatrix stroboscopic_evolve(const ModelSpec& spec, const Schedule& sched);

// Accumulated dynamical phase per starting band, following the tracked
// (spiral-aware) quasienergy branch along the same per-period samples.
std::vector<double> dynamical_phase(const Bundle& bundle, const Schedule& sched);

// M_numeric[m][n] = <v_m(a_0)| U_total |v_n(a_0)> e^{+i phi_d[n]}; the
// deviation from unitarity is the reported adiabatic error, nothing is cleaned.
CMatrix extract_geometric(const CMatrix& u_total, const Frame& frame0,
                          const std::vector<double>& phi_d);

}  // namespace holo
