#include "holo/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace holo::oracles {

namespace {
constexpr double kPi = 3.14159265358979323846;

double clamp1(double x) { return std::max(-1.0, std::min(1.0, x)); }
}  // namespace

double E_function(double lam, double gamma, double T) {
  return std::acos(clamp1(std::cos(lam) * std::cos(T) - std::sin(lam) * std::sin(T) * std::cos(gamma)));
}

double Q_principal(double lam, double gamma, double T) {
  const double num = std::sin(lam) * std::sin(gamma);
  const double den = std::cos(lam) * std::sin(T) + std::sin(lam) * std::cos(T) * std::cos(gamma);
  return 0.5 * std::atan2(num, den);
}

double Q_near(double lam, double gamma, double T, double hint) {
  const double q = Q_principal(lam, gamma, T);
  return q + kPi * std::round((hint - q) / kPi);
}

double Q_unwrapped(double lam, double gamma, double T) {
  // march from lambda = 0 keeping Q continuous; Q is only defined modulo pi,
  // so per-step changes must stay below pi/2
  const int steps = std::max(256, static_cast<int>(std::ceil(std::abs(lam) / 0.005)));
  double q = Q_principal(0.0, gamma, T);
  for (int i = 1; i <= steps; ++i) {
    const double l = lam * static_cast<double>(i) / steps;
    q = Q_near(l, gamma, T, q);
  }
  return q;
}

double Q_change_along(const std::vector<std::array<double, 3>>& path) {
  if (path.size() < 2) return 0.0;
  const double q0 = Q_principal(path[0][0], path[0][1], path[0][2]);
  double q = q0;
  for (size_t i = 1; i < path.size(); ++i)
    q = Q_near(path[i][0], path[i][1], path[i][2], q);
  return q - q0;
}

namespace {

void check_gap(double E, const char* where) {
  const double d = std::min(E, kPi - E);
  if (d < 1e-10) throw GapClosed(std::string(where) + ": quasienergy gap closed");
}

Frame frame_half(int p, double lam, double gamma, double xi, double T, double q) {
  const double mu = 0.5 * (2 - p) * lam;
  const double E = E_function(mu, gamma, T);
  check_gap(E, "analytic_frame_spin_half");

  const cplx em = std::exp(cplx(0.0, -0.5 * xi));
  const cplx ep = std::exp(cplx(0.0, 0.5 * xi));
  const double c = std::cos(q), s = std::sin(q);

  Frame f;
  f.point = ParameterPoint::s2(lam, gamma, xi);
  f.quasienergies = {0.5 * p * lam + E, 0.5 * p * lam - E};
  f.vectors.resize(2, 2);
  f.vectors << em * c, -em * s, ep * s, ep * c;
  f.blocks = {{0}, {1}};
  return f;
}

Frame frame_threehalf(int p, double lam, double gamma, double eta, double xi, double zeta,
                      double T, double q) {
  const double mu = 0.5 * (2 - p) * lam;
  const double E = E_function(mu, gamma, T);
  check_gap(E, "analytic_frame_spin_threehalf");

  const ThetaConvention& th = resolved_theta();
  const double tp = th.a_plus_xi * xi + th.a_plus_zeta * zeta;
  const double tm = th.a_minus_xi * xi + th.a_minus_zeta * zeta;
  const cplx epp = std::exp(cplx(0.0, tp)), epm = std::exp(cplx(0.0, -tp));
  const cplx emp = std::exp(cplx(0.0, tm)), emm = std::exp(cplx(0.0, -tm));
  const double c = std::cos(q), s = std::sin(q);
  const double se = std::sin(eta), ce = std::cos(eta);

  Frame f;
  f.point = ParameterPoint::s4(lam, gamma, eta, xi, zeta);
  const double e0 = 0.5 * p * lam + E, e1 = 0.5 * p * lam - E;
  f.quasienergies = {e0, e0, e1, e1};
  f.vectors.resize(4, 4);
  f.vectors.col(0) << epm * c, 0.0, emm * se * s, emp * ce * s;
  f.vectors.col(1) << 0.0, epp * c, -emm * ce * s, emp * se * s;
  f.vectors.col(2) << -epm * se * s, epp * ce * s, emm * c, 0.0;
  f.vectors.col(3) << -epm * ce * s, -epp * se * s, 0.0, emp * c;
  f.blocks = {{0, 1}, {2, 3}};
  return f;
}

double q_for(int p, double lam, double gamma, double T) {
  return Q_unwrapped(0.5 * (2 - p) * lam, gamma, T);
}

}  // namespace

Frame analytic_frame_spin_half(int p, double lam, double gamma, double xi, double T) {
  return frame_half(p, lam, gamma, xi, T, q_for(p, lam, gamma, T));
}

Frame analytic_frame_spin_half(int p, double lam, double gamma, double xi, double T,
                               double q_hint) {
  return frame_half(p, lam, gamma, xi, T, Q_near(0.5 * (2 - p) * lam, gamma, T, q_hint));
}

Frame analytic_frame_spin_threehalf(int p, double lam, double gamma, double eta, double xi,
                                    double zeta, double T) {
  return frame_threehalf(p, lam, gamma, eta, xi, zeta, T, q_for(p, lam, gamma, T));
}

Frame analytic_frame_spin_threehalf(int p, double lam, double gamma, double eta, double xi,
                                    double zeta, double T, double q_hint) {
  return frame_threehalf(p, lam, gamma, eta, xi, zeta, T,
                         Q_near(0.5 * (2 - p) * lam, gamma, T, q_hint));
}

const ThetaConvention& resolved_theta() {
  static const ThetaConvention accepted = [] {
    const ThetaConvention candidates[] = {
        {"theta_plus=xi/2, theta_minus=zeta/2", 0.5, 0.0, 0.0, 0.5},
        {"theta_pm=(xi+-zeta)/2", 0.5, 0.5, 0.5, -0.5},
    };
    std::mt19937_64 rng(404740);
    std::uniform_real_distribution<double> ang(0.2, 2.9);
    std::uniform_int_distribution<int> pd(0, 3);

    for (const ThetaConvention& cand : candidates) {
      bool ok = true;
      for (int draw = 0; draw < 100 && ok; ++draw) {
        const int p = pd(rng);
        const double lam = ang(rng), g = ang(rng), eta = ang(rng), xi = ang(rng),
                     zeta = ang(rng), T = ang(rng);
        const double mu = 0.5 * (2 - p) * lam;
        const double E = E_function(mu, g, T);
        if (std::min(E, kPi - E) < 1e-3) continue;
        const double q = Q_unwrapped(mu, g, T);

        const ThetaConvention* saved = &cand;
        Frame f;
        {
          // build frame with this candidate without touching the cache
          const double tp = saved->a_plus_xi * xi + saved->a_plus_zeta * zeta;
          const double tm = saved->a_minus_xi * xi + saved->a_minus_zeta * zeta;
          const cplx epp = std::exp(cplx(0.0, tp)), epm = std::exp(cplx(0.0, -tp));
          const cplx emp = std::exp(cplx(0.0, tm)), emm = std::exp(cplx(0.0, -tm));
          const double c = std::cos(q), s = std::sin(q);
          const double se = std::sin(eta), ce = std::cos(eta);
          f.vectors.resize(4, 4);
          f.vectors.col(0) << epm * c, 0.0, emm * se * s, emp * ce * s;
          f.vectors.col(1) << 0.0, epp * c, -emm * ce * s, emp * se * s;
          f.vectors.col(2) << -epm * se * s, epp * ce * s, emm * c, 0.0;
          f.vectors.col(3) << -epm * ce * s, -epp * se * s, 0.0, emp * c;
        }
        const CMatrix U = floquet_operator(ModelSpec::kicked_spin_threehalf(T, p),
                                           ParameterPoint::s4(lam, g, eta, xi, zeta));
        const double e0 = 0.5 * p * lam + E, e1 = 0.5 * p * lam - E;
        const double eps[4] = {e0, e0, e1, e1};
        for (int j = 0; j < 4 && ok; ++j) {
          const CVector r = U * f.vectors.col(j) -
                            std::exp(cplx(0.0, -eps[j])) * f.vectors.col(j);
          if (r.cwiseAbs().maxCoeff() > 1e-8) ok = false;
        }
      }
      if (ok) return cand;
    }
    throw ThetaResolutionFailure(
        "no candidate theta convention satisfies the eigenvalue equation");
  }();
  return accepted;
}

std::string to_string(OracleLoop loop) {
  switch (loop) {
    case OracleLoop::Xi: return "xi";
    case OracleLoop::Gamma: return "gamma";
    case OracleLoop::Lambda: return "lambda";
  }
  return "unknown";
}

namespace {

void check_lambda_sweep_gap(int p, double lam0, double gamma, double T) {
  // E must stay away from 0 and pi while mu sweeps by (2-p)*pi
  const double mu0 = 0.5 * (2 - p) * lam0;
  const double mu1 = mu0 + (2 - p) * kPi;
  const int n = 512;
  for (int i = 0; i <= n; ++i) {
    const double mu = mu0 + (mu1 - mu0) * static_cast<double>(i) / n;
    const double E = E_function(mu, gamma, T);
    if (std::min(E, kPi - E) < 1e-9)
      throw GapClosed("analytic_holonomies: lambda loop crosses a degeneracy");
  }
}

}  // namespace

OracleValues analytic_holonomies(ModelKind kind, OracleLoop loop, int p,
                                 const ParameterPoint& base, double T) {
  OracleValues out;
  const CMatrix I2 = CMatrix::Identity(2, 2);

  if (kind == ModelKind::KickedSpinHalf) {
    const double lam0 = base.lambda, gamma = base.gamma(), xi0 = base.xi();
    const double mu0 = 0.5 * (2 - p) * lam0;
    out.E = E_function(mu0, gamma, T);
    out.Q = Q_unwrapped(mu0, gamma, T);
    out.eigvecs = analytic_frame_spin_half(p, lam0, gamma, xi0, T).vectors;

    switch (loop) {
      case OracleLoop::Xi: {
        if (std::abs(T) > 1e-12)
          throw UnsupportedLoop("analytic_holonomies: xi loop oracle requires T = 0");
        check_gap(out.E, "analytic_holonomies");
        out.W = -I2;
        out.B = expm_antihermitian_generator(pauli(3), -kPi * std::cos(gamma));
        out.M = out.W * out.B;
        return out;
      }
      case OracleLoop::Gamma: {
        if (std::abs(T) > 1e-12)
          throw UnsupportedLoop("analytic_holonomies: gamma loop oracle requires T = 0");
        check_gap(out.E, "analytic_holonomies");
        out.W = -I2;
        out.B = I2;
        out.M = -I2;
        return out;
      }
      case OracleLoop::Lambda: {
        check_lambda_sweep_gap(p, lam0, gamma, T);
        const double ang = 0.5 * (2 - p) * kPi;  // Q change over one lambda cycle
        out.W = std::cos(ang) * I2 - cplx(0.0, 1.0) * std::sin(ang) * pauli(2);
        out.B = I2;
        out.M = out.W;
        return out;
      }
    }
  }

  if (kind == ModelKind::KickedSpinThreeHalf) {
    if (loop != OracleLoop::Lambda)
      throw UnsupportedLoop("analytic_holonomies: only the lambda loop has a spin-3/2 oracle");
    const double lam0 = base.lambda, gamma = base.gamma(), eta = base.eta();
    check_lambda_sweep_gap(p, lam0, gamma, T);
    const double mu0 = 0.5 * (2 - p) * lam0;
    out.E = E_function(mu0, gamma, T);
    out.Q = Q_unwrapped(mu0, gamma, T);
    out.eigvecs =
        analytic_frame_spin_threehalf(p, lam0, gamma, eta, base.xi(), base.zeta(), T).vectors;

    const double ang = 0.5 * (2 - p) * kPi;
    const CMatrix I4 = CMatrix::Identity(4, 4);
    CMatrix mix_sin = CMatrix::Zero(4, 4), mix_cos = CMatrix::Zero(4, 4);
    mix_sin.block(0, 2, 2, 2) = cplx(0.0, -1.0) * I2;
    mix_sin.block(2, 0, 2, 2) = cplx(0.0, 1.0) * I2;
    mix_cos.block(0, 2, 2, 2) = pauli(2);
    mix_cos.block(2, 0, 2, 2) = pauli(2);
    out.M = std::cos(ang) * I4 -
            cplx(0.0, 1.0) * std::sin(ang) * (std::sin(eta) * mix_sin + std::cos(eta) * mix_cos);
    out.W = out.M;
    out.B = I4;
    return out;
  }

  throw UnsupportedLoop("analytic_holonomies: no oracle for this model");
}

}  // namespace holo::oracles
