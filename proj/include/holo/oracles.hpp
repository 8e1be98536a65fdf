#pragma once

#include <array>
#include <string>
#include <vector>

#include "holo/eigenframe.hpp"

namespace holo::oracles {

// Closed-form quasienergy half-splitting, principal branch in [0, pi]:
// E = arccos(cos l cos T - sin l sin T cos g).
double E_function(double lam, double gamma, double T);

// Principal mixing angle in (-pi/2, pi/2]:
// Q = atan2(sin l sin g, cos l sin T + sin l cos T cos g) / 2.
double Q_principal(double lam, double gamma, double T);

// Q continued along lambda from the principal value at lambda = 0 (which is 0
// whenever sin T > 0). Satisfies Q(l + pi) = Q(l) + pi/2.
double Q_unwrapped(double lam, double gamma, double T);

// Q continued along an arbitrary sampled (lambda, gamma, T) path; returns the
// total change Q(end) - Q(start).
double Q_change_along(const std::vector<std::array<double, 3>>& path);

// pick the branch of Q nearest to hint (Q is defined modulo pi)
double Q_near(double lam, double gamma, double T, double hint);

// Closed-form eigenframes. Quasienergies carry the raw formula values
// e_n = p*lambda/2 + (-1)^n E, not reduced to principal range.
Frame analytic_frame_spin_half(int p, double lam, double gamma, double xi, double T);
Frame analytic_frame_spin_half(int p, double lam, double gamma, double xi, double T,
                               double q_hint);
Frame analytic_frame_spin_threehalf(int p, double lam, double gamma, double eta, double xi,
                                    double zeta, double T);
Frame analytic_frame_spin_threehalf(int p, double lam, double gamma, double eta, double xi,
                                    double zeta, double T, double q_hint);

// The doubly-degenerate closed form leaves the two phase angles theta_+/-
// underdetermined; the convention is resolved empirically by checking the
// eigenvalue equation over random parameter draws.
struct ThetaConvention {
  std::string name;
  // theta_+ = a_plus_xi * xi + a_plus_zeta * zeta, likewise for theta_-
  double a_plus_xi, a_plus_zeta, a_minus_xi, a_minus_zeta;
};
const ThetaConvention& resolved_theta();

enum class OracleLoop { Xi, Gamma, Lambda };
std::string to_string(OracleLoop loop);

struct OracleValues {
  double E = 0.0;
  double Q = 0.0;
  CMatrix eigvecs;  // frame at the loop base point
  CMatrix W, B, M;
};

// Closed-form W, B, M for the covered loops: xi/gamma/lambda for spin-1/2
// (xi and gamma require T = 0), lambda for spin-3/2.
OracleValues analytic_holonomies(ModelKind kind, OracleLoop loop, int p,
                                 const ParameterPoint& base, double T);

}  // namespace holo::oracles
