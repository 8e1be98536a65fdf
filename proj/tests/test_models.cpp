#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "holo/models.hpp"
#include "test_support.hpp"

using namespace holo;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
}  // namespace

TEST_CASE("build_V_spin_half: examples") {
  CHECK(max_abs_diff(build_V_spin_half(0, 0.0, 1.3), pauli(3)) < 1e-15);
  CHECK(max_abs_diff(build_V_spin_half(2, 0.7, 0.4), CMatrix::Identity(2, 2)) < 1e-15);

  // p=1, gamma=pi/2, xi=0: V = 1/2 + sigma_1/2, eigenvalues {0, 1}
  const CMatrix v = build_V_spin_half(1, kPi / 2, 0.0);
  CHECK(max_abs_diff(v, 0.5 * (CMatrix::Identity(2, 2) + pauli(1))) < 1e-15);
  const HermEigenPairs ep = eig_hermitian(v);
  CHECK(std::abs(ep.values(0) - 0.0) < 1e-14);
  CHECK(std::abs(ep.values(1) - 1.0) < 1e-14);
}

TEST_CASE("build_V_spin_threehalf: examples") {
  CHECK(max_abs_diff(build_V_spin_threehalf(0, 0.0, 0.9, 0.2, 1.1), tau(5)) < 1e-15);

  // p=1, gamma=pi/2, eta=0, xi=0: V = 1/2 + tau_1/2, eigenvalues {0,0,1,1}
  const CMatrix v = build_V_spin_threehalf(1, kPi / 2, 0.0, 0.0, 0.6);
  CHECK(max_abs_diff(v, 0.5 * (CMatrix::Identity(4, 4) + tau(1))) < 1e-15);
  const HermEigenPairs ep = eig_hermitian(v);
  CHECK(std::abs(ep.values(0)) < 1e-14);
  CHECK(std::abs(ep.values(1)) < 1e-14);
  CHECK(std::abs(ep.values(2) - 1.0) < 1e-14);
  CHECK(std::abs(ep.values(3) - 1.0) < 1e-14);
}

TEST_CASE("spherical maps are unit vectors") {
  auto rng = testsupport::make_rng(10);
  std::uniform_real_distribution<double> ang(-6.0, 6.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double g = ang(rng), e = ang(rng), x = ang(rng), z = ang(rng);
    const CMatrix b_dot_tau = build_V_spin_threehalf(0, g, e, x, z) * 1.0;  // p=0: b.tau
    // (sum b_i tau_i)^2 = |b|^2 I = I
    CHECK(max_abs_diff(b_dot_tau * b_dot_tau, CMatrix::Identity(4, 4)) < 1e-13);
    const CMatrix b_dot_sigma = build_V_spin_half(0, g, x);
    CHECK(max_abs_diff(b_dot_sigma * b_dot_sigma, CMatrix::Identity(2, 2)) < 1e-14);
  }
}

TEST_CASE("Clifford relations hold exactly") {
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      const CMatrix anti = tau(i) * tau(j) + tau(j) * tau(i);
      const CMatrix expected =
          (i == j) ? CMatrix(2.0 * CMatrix::Identity(4, 4)) : CMatrix(CMatrix::Zero(4, 4));
      CHECK(max_abs_diff(anti, expected) == 0.0);
    }
}

TEST_CASE("2pi-periodicity condition on V") {
  auto rng = testsupport::make_rng(11);
  std::uniform_real_distribution<double> ang(-3.2, 3.2);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = trial % 4;
    const double g = ang(rng), e = ang(rng), x = ang(rng), z = ang(rng);
    const CMatrix v2 = build_V_spin_half(p, g, x);
    CHECK(max_abs_diff(expm_antihermitian_generator(v2, -2.0 * kPi), CMatrix::Identity(2, 2)) <
          1e-10);
    const CMatrix v4 = build_V_spin_threehalf(p, g, e, x, z);
    CHECK(max_abs_diff(expm_antihermitian_generator(v4, -2.0 * kPi), CMatrix::Identity(4, 4)) <
          1e-10);
  }
}

TEST_CASE("floquet_operator: kick absent at lambda = 0") {
  const ModelSpec spec = ModelSpec::kicked_spin_half(1.0, 1);
  const CMatrix u = floquet_operator(spec, ParameterPoint::s2(0.0, 0.7, 0.3));
  CHECK(max_abs_diff(u, expm_antihermitian_generator(pauli(3), 1.0)) < 1e-13);
}

TEST_CASE("floquet_operator: pure kick at T = 0") {
  // p=1, gamma=pi/2, xi=0, lambda=pi: U = e^{-i pi V} with V = (1 + sigma_1)/2,
  // so U = e^{-i pi/2} (cos(pi/2) - i sin(pi/2) sigma_1) = -sigma_1
  const ModelSpec spec = ModelSpec::kicked_spin_half(0.0, 1);
  const CMatrix u = floquet_operator(spec, ParameterPoint::s2(kPi, kPi / 2, 0.0));
  CHECK(max_abs_diff(u, -pauli(1)) < 1e-13);
}

TEST_CASE("floquet_operator: eigenphases match the closed form") {
  const int p = 1;
  const double lam = 1.0, gamma = 0.7, T = 1.0;
  const double mu = 0.5 * (2 - p) * lam;
  const double E =
      std::acos(std::cos(mu) * std::cos(T) - std::sin(mu) * std::sin(T) * std::cos(gamma));
  const CMatrix u = floquet_operator(ModelSpec::kicked_spin_half(T, p),
                                     ParameterPoint::s2(lam, gamma, 0.0));
  const EigenPairs ep = eig_unitary(u);
  const cplx e0 = std::exp(-kI * (0.5 * p * lam + E));
  const cplx e1 = std::exp(-kI * (0.5 * p * lam - E));
  CHECK(std::min(std::abs(ep.values(0) - e0), std::abs(ep.values(1) - e0)) < 1e-12);
  CHECK(std::min(std::abs(ep.values(0) - e1), std::abs(ep.values(1) - e1)) < 1e-12);
}

TEST_CASE("floquet_operator: unitarity") {
  auto rng = testsupport::make_rng(12);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int p = trial % 4;
    const ModelSpec s2m = ModelSpec::kicked_spin_half(ang(rng), p);
    CHECK(unitarity_defect(floquet_operator(
              s2m, ParameterPoint::s2(ang(rng), ang(rng), ang(rng)))) < 1e-12);
    const ModelSpec s4m = ModelSpec::kicked_spin_threehalf(ang(rng), p);
    CHECK(unitarity_defect(floquet_operator(
              s4m, ParameterPoint::s4(ang(rng), ang(rng), ang(rng), ang(rng), ang(rng)))) <
          1e-12);
  }
}

TEST_CASE("kick spectrum: eigenphases of e^{-i lambda V}") {
  auto rng = testsupport::make_rng(13);
  std::uniform_real_distribution<double> ang(0.1, 3.0);
  for (int p = 0; p <= 3; ++p) {
    const double lam = ang(rng), g = ang(rng), x = ang(rng);
    const CMatrix kick = expm_antihermitian_generator(build_V_spin_half(p, g, x), lam);
    const EigenPairs ep = eig_unitary(kick);
    // eigenvalues e^{-i lam p/2} e^{-+ i lam (2-p)/2}
    const cplx a = std::exp(-kI * (0.5 * lam * p + 0.5 * lam * (2 - p)));
    const cplx b = std::exp(-kI * (0.5 * lam * p - 0.5 * lam * (2 - p)));
    CHECK(std::min(std::abs(ep.values(0) - a), std::abs(ep.values(1) - a)) < 1e-12);
    CHECK(std::min(std::abs(ep.values(0) - b), std::abs(ep.values(1) - b)) < 1e-12);
  }
}

TEST_CASE("eta = pi/2 splits the spin-3/2 chain into two kicked spin-1/2 systems") {
  // pairing components {1,3} and {2,4} (1-based): permutation P maps the
  // 4-dim space onto two 2-dim kicked systems with xi_eff = +zeta and -zeta
  auto rng = testsupport::make_rng(14);
  std::uniform_real_distribution<double> ang(0.2, 2.9);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = trial % 4;
    const double lam = ang(rng), g = ang(rng), x = ang(rng), z = ang(rng), T = ang(rng);
    const CMatrix u4 = floquet_operator(ModelSpec::kicked_spin_threehalf(T, p),
                                        ParameterPoint::s4(lam, g, kPi / 2, x, z));

    CMatrix perm = CMatrix::Zero(4, 4);
    perm(0, 0) = 1;  // new order (0, 2, 1, 3)
    perm(2, 1) = 1;
    perm(1, 2) = 1;
    perm(3, 3) = 1;
    const CMatrix split = perm.adjoint() * u4 * perm;

    const ModelSpec half = ModelSpec::kicked_spin_half(T, p);
    const CMatrix ua = floquet_operator(half, ParameterPoint::s2(lam, g, z));
    const CMatrix ub = floquet_operator(half, ParameterPoint::s2(lam, g, -z));
    CHECK(max_abs(split.block(0, 2, 2, 2)) < 1e-12);
    CHECK(max_abs(split.block(2, 0, 2, 2)) < 1e-12);
    CHECK(max_abs_diff(split.block(0, 0, 2, 2), ua) < 1e-12);
    CHECK(max_abs_diff(split.block(2, 2, 2, 2), ub) < 1e-12);
  }
}

TEST_CASE("floquet_operator rejects static models") {
  const ModelSpec spec = ModelSpec::custom_static(
      2, [](const ParameterPoint&) { return CMatrix(pauli(3)); });
  CHECK_THROWS_AS(floquet_operator(spec, ParameterPoint::s2(0, 0, 0)), UnsupportedModel);
}

TEST_CASE("static_hamiltonian: constant and Zeeman examples") {
  const ModelSpec constant = ModelSpec::custom_static(
      2, [](const ParameterPoint&) { return CMatrix(pauli(3)); });
  CHECK(max_abs_diff(static_hamiltonian(constant, ParameterPoint::s2(0, 0, 0)), pauli(3)) == 0.0);

  const ModelSpec zeeman = ModelSpec::custom_static(2, [](const ParameterPoint& a) {
    const double g = a.gamma(), x = a.xi();
    return CMatrix(std::cos(g) * pauli(3) +
                   std::sin(g) * (std::cos(x) * pauli(1) + std::sin(x) * pauli(2)));
  });
  const ParameterPoint at = ParameterPoint::s2(0.0, kPi / 3, kPi / 4);
  const CMatrix h = static_hamiltonian(zeeman, at);
  const HermEigenPairs ep = eig_hermitian(h);
  CHECK(std::abs(ep.values(0) + 1.0) < 1e-14);
  CHECK(std::abs(ep.values(1) - 1.0) < 1e-14);

  // spin-coherent closed form for the upper band
  CVector up(2);
  up << std::cos(kPi / 6), std::exp(kI * kPi / 4) * std::sin(kPi / 6);
  CHECK((h * up - up).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(std::abs((up.adjoint() * ep.vectors.col(1)).value()) - 1.0) < 1e-12);
}

TEST_CASE("static_hamiltonian rejects a misbehaving user function") {
  const ModelSpec bad = ModelSpec::custom_static(2, [](const ParameterPoint&) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
  });
  CHECK_THROWS_AS(static_hamiltonian(bad, ParameterPoint::s2(0, 0, 0)), NotHermitian);
}
