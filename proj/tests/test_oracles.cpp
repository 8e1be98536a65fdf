#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "holo/models.hpp"
#include "holo/oracles.hpp"
#include "test_support.hpp"

using namespace holo;
namespace orc = holo::oracles;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

double wrap_pi(double x) { return x - 2.0 * kPi * std::round(x / (2.0 * kPi)); }
}  // namespace

TEST_CASE("E and Q at lambda = 0") {
  for (double T : {0.3, 1.0, 2.5}) {
    CHECK(std::abs(orc::E_function(0.0, 0.8, T) - T) < 1e-14);
    CHECK(std::abs(orc::Q_principal(0.0, 0.8, T)) < 1e-14);
    CHECK(std::abs(orc::Q_unwrapped(0.0, 0.8, T)) < 1e-14);
  }
}

TEST_CASE("E anti-periodicity") {
  auto rng = testsupport::make_rng(20);
  std::uniform_real_distribution<double> ang(0.05, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double l = ang(rng), g = ang(rng), T = ang(rng);
    CHECK(std::abs(orc::E_function(l + kPi, g, T) - (kPi - orc::E_function(l, g, T))) < 1e-10);
  }
}

TEST_CASE("Q shift relations") {
  auto rng = testsupport::make_rng(21);
  std::uniform_real_distribution<double> ang(0.1, 2.9);

  // Q_{l+pi, g, T} = Q_{l, g, T} + pi/2 along the lambda continuation
  for (int trial = 0; trial < 25; ++trial) {
    const double l = ang(rng), g = ang(rng), T = ang(rng);
    CHECK(std::abs(orc::Q_unwrapped(l + kPi, g, T) - orc::Q_unwrapped(l, g, T) - kPi / 2) <
          1e-10);
  }

  // Q_{pi/2, g+pi, T} = Q_{pi/2, g, T} + pi/2 along the gamma continuation
  for (int trial = 0; trial < 25; ++trial) {
    const double g = ang(rng), T = ang(rng);
    std::vector<std::array<double, 3>> path;
    for (int i = 0; i <= 720; ++i)
      path.push_back({kPi / 2, g + kPi * i / 720.0, T});
    CHECK(std::abs(orc::Q_change_along(path) - kPi / 2) < 1e-10);
  }

  // Q_{l, g+pi, 0} = Q_{l, g, 0} + pi/2
  for (int trial = 0; trial < 25; ++trial) {
    const double l = ang(rng), g = ang(rng);
    std::vector<std::array<double, 3>> path;
    for (int i = 0; i <= 720; ++i)
      path.push_back({l, g + kPi * i / 720.0, 0.0});
    CHECK(std::abs(orc::Q_change_along(path) - kPi / 2) < 1e-10);
  }
}

TEST_CASE("analytic spin-1/2 frames solve the eigenvalue problem") {
  auto rng = testsupport::make_rng(22);
  std::uniform_real_distribution<double> ang(0.15, 2.9);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = trial % 4;
    const double lam = ang(rng), g = ang(rng), x = ang(rng), T = ang(rng);
    const double E = orc::E_function(0.5 * (2 - p) * lam, g, T);
    if (std::min(E, kPi - E) < 1e-3) continue;

    const Frame f = orc::analytic_frame_spin_half(p, lam, g, x, T);
    CHECK(unitarity_defect(f.vectors) < 1e-13);
    const CMatrix u = floquet_operator(ModelSpec::kicked_spin_half(T, p),
                                       ParameterPoint::s2(lam, g, x));
    for (int n = 0; n < 2; ++n) {
      const CVector r = u * f.vectors.col(n) -
                        std::exp(-kI * f.quasienergies[static_cast<size_t>(n)]) * f.vectors.col(n);
      CHECK(r.cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("lambda + 2pi maps analytic bands onto shifted labels") {
  auto rng = testsupport::make_rng(23);
  std::uniform_real_distribution<double> ang(0.3, 2.8);
  for (int p : {1, 3}) {
    const double lam = ang(rng), g = 0.7, x = 0.4, T = 1.0;
    const Frame base = orc::analytic_frame_spin_half(p, lam, g, x, T);

    // continue Q along the sweep to lambda + 2pi
    double q = orc::Q_unwrapped(0.5 * (2 - p) * lam, g, T);
    const int steps = 512;
    for (int i = 1; i <= steps; ++i) {
      const double l = lam + 2.0 * kPi * i / steps;
      q = orc::Q_near(0.5 * (2 - p) * l, g, T, q);
    }
    const Frame shifted = orc::analytic_frame_spin_half(p, lam + 2 * kPi, g, x, T, q);

    for (int n = 0; n < 2; ++n) {
      const int target = (n + p) % 2;
      const cplx ov = (base.vectors.col(target).adjoint() * shifted.vectors.col(n)).value();
      CHECK(std::abs(std::abs(ov) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("theta convention is resolved to (xi +- zeta)/2") {
  const orc::ThetaConvention& th = orc::resolved_theta();
  CHECK(th.a_plus_xi == 0.5);
  CHECK(th.a_plus_zeta == 0.5);
  CHECK(th.a_minus_xi == 0.5);
  CHECK(th.a_minus_zeta == -0.5);
}

TEST_CASE("analytic spin-3/2 frames solve the eigenvalue problem") {
  auto rng = testsupport::make_rng(24);
  std::uniform_real_distribution<double> ang(0.15, 2.9);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = trial % 4;
    const double lam = ang(rng), g = ang(rng), e = ang(rng), x = ang(rng), z = ang(rng),
                 T = ang(rng);
    const double E = orc::E_function(0.5 * (2 - p) * lam, g, T);
    if (std::min(E, kPi - E) < 1e-3) continue;

    const Frame f = orc::analytic_frame_spin_threehalf(p, lam, g, e, x, z, T);
    CHECK(unitarity_defect(f.vectors) < 1e-13);  // block Gram matrices included
    const CMatrix u = floquet_operator(ModelSpec::kicked_spin_threehalf(T, p),
                                       ParameterPoint::s4(lam, g, e, x, z));
    for (int n = 0; n < 4; ++n) {
      const CVector r = u * f.vectors.col(n) -
                        std::exp(-kI * f.quasienergies[static_cast<size_t>(n)]) * f.vectors.col(n);
      CHECK(r.cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("eta = pi/2 with xi = zeta block-reduces the spin-3/2 frame") {
  const int p = 1;
  const double lam = 1.1, g = 0.9, x = 0.7, T = 1.3;
  const Frame f = orc::analytic_frame_spin_threehalf(p, lam, g, kPi / 2, x, x, T);
  // columns live on the index pairs {0,2} and {1,3}
  for (int n : {0, 2}) {
    CHECK(std::abs(f.vectors(1, n)) < 1e-14);
    CHECK(std::abs(f.vectors(3, n)) < 1e-14);
  }
  for (int n : {1, 3}) {
    CHECK(std::abs(f.vectors(0, n)) < 1e-14);
    CHECK(std::abs(f.vectors(2, n)) < 1e-14);
  }
}

TEST_CASE("analytic_holonomies: spin-1/2 lambda loop") {
  const ParameterPoint base = ParameterPoint::s2(0.0, 0.7, 0.0);

  const orc::OracleValues p2 = orc::analytic_holonomies(
      ModelKind::KickedSpinHalf, orc::OracleLoop::Lambda, 2, base, 1.0);
  CHECK(max_abs_diff(p2.M, CMatrix::Identity(2, 2)) < 1e-14);

  const orc::OracleValues p1 = orc::analytic_holonomies(
      ModelKind::KickedSpinHalf, orc::OracleLoop::Lambda, 1, base, 1.0);
  CHECK(max_abs_diff(p1.M, -kI * pauli(2)) < 1e-14);
  CHECK(max_abs_diff(p1.M, p1.W * p1.B) < 1e-12);
}

TEST_CASE("analytic_holonomies: self-consistency M = W B") {
  const ParameterPoint base2 = ParameterPoint::s2(kPi / 2, kPi / 3, 0.0);
  for (orc::OracleLoop loop : {orc::OracleLoop::Xi, orc::OracleLoop::Gamma}) {
    const orc::OracleValues v =
        orc::analytic_holonomies(ModelKind::KickedSpinHalf, loop, 0, base2, 0.0);
    CHECK(max_abs_diff(v.M, v.W * v.B) < 1e-12);
    CHECK(unitarity_defect(v.M) < 1e-12);
  }
  const ParameterPoint base4 = ParameterPoint::s4(0.0, 0.7, kPi / 4, 0.4, 1.1);
  const orc::OracleValues v =
      orc::analytic_holonomies(ModelKind::KickedSpinThreeHalf, orc::OracleLoop::Lambda, 1,
                               base4, 1.0);
  CHECK(max_abs_diff(v.M, v.W * v.B) < 1e-12);
}

TEST_CASE("analytic_holonomies: spin-3/2 lambda loop block structure") {
  // eta = 0: pure sigma_2 mixing blocks between the degenerate pairs
  const ParameterPoint base = ParameterPoint::s4(0.0, 0.7, 0.0, 0.4, 1.1);
  const orc::OracleValues v = orc::analytic_holonomies(
      ModelKind::KickedSpinThreeHalf, orc::OracleLoop::Lambda, 1, base, 1.0);
  CMatrix expected = CMatrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = -kI * pauli(2);
  expected.block(2, 0, 2, 2) = -kI * pauli(2);
  CHECK(max_abs_diff(v.M, expected) < 1e-14);
}

TEST_CASE("analytic_holonomies: xi loop at nonzero T is not covered") {
  const ParameterPoint base = ParameterPoint::s2(kPi / 2, kPi / 3, 0.0);
  CHECK_THROWS_AS(orc::analytic_holonomies(ModelKind::KickedSpinHalf, orc::OracleLoop::Xi, 0,
                                           base, 1.0),
                  UnsupportedLoop);
}

TEST_CASE("analytic_holonomies: gap closure is detected") {
  // T = 0 lambda loop sweeps E through 0 and pi
  const ParameterPoint base = ParameterPoint::s2(0.0, 0.7, 0.0);
  CHECK_THROWS_AS(orc::analytic_holonomies(ModelKind::KickedSpinHalf,
                                           orc::OracleLoop::Lambda, 1, base, 0.0),
                  GapClosed);
}

TEST_CASE("wrap helper sanity") { CHECK(std::abs(wrap_pi(2.0 * kPi + 0.3) - 0.3) < 1e-14); }
