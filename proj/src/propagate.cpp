#include "holo/propagate.hpp"

#include <cmath>

namespace holo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

CMatrix one_period(const ModelSpec& spec, const ParameterPoint& pt) {
  if (spec.kicked()) return floquet_operator(spec, pt);
  return expm_antihermitian_generator(static_hamiltonian(spec, pt), spec.T_p);
}

}  // namespace

CMatrix stroboscopic_evolve(const ModelSpec& spec, const Schedule& sched) {
  if (sched.N_periods < 1) throw ConfigError("stroboscopic_evolve: N_periods must be positive");
  const int n = sched.N_periods;
  CMatrix u = CMatrix::Identity(spec.dim(), spec.dim());
  for (int j = 0; j < n; ++j) {
    const ParameterPoint pt = sched.loop.at((j + 0.5) / n);
    u = one_period(spec, pt) * u;
  }
  return u;
}

std::vector<double> dynamical_phase(const Bundle& bundle, const Schedule& sched) {
  if (sched.N_periods < 1) throw ConfigError("dynamical_phase: N_periods must be positive");
  const ModelSpec& spec = bundle.spec;
  const int n = sched.N_periods;
  const int d = bundle.dim();
  const double period = spec.kicked() ? kTwoPi / spec.T_p : 0.0;
  const double deg_tol = default_deg_tol(spec);

  // re-track along the per-period samples; the bundle supplies the starting
  // band labels (its base frame) and the loop geometry
  Frame prev = bundle.frames.front();
  std::vector<double> phi(static_cast<size_t>(d), 0.0);
  for (int j = 0; j < n; ++j) {
    const ParameterPoint pt = sched.loop.at((j + 0.5) / n);
    Frame next = continue_frame(prev, frame_at(spec, pt, deg_tol), GaugePolicy::RawSolver, j,
                                period);
    for (int b = 0; b < d; ++b)
      phi[static_cast<size_t>(b)] += next.quasienergies[static_cast<size_t>(b)] * spec.T_p;
    prev = std::move(next);
  }
  return phi;
}

CMatrix extract_geometric(const CMatrix& u_total, const Frame& frame0,
                          const std::vector<double>& phi_d) {
  const int d = frame0.dim();
  if (static_cast<int>(phi_d.size()) != d)
    throw DimensionMismatch("extract_geometric: one dynamical phase per band required");
  CMatrix m = frame0.vectors.adjoint() * u_total * frame0.vectors;
  for (int col = 0; col < d; ++col)
    m.col(col) *= std::exp(cplx(0.0, phi_d[static_cast<size_t>(col)]));
  return m;
}

}  // namespace holo
