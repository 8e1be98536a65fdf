#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "holo/matrixcore.hpp"
#include "holo/models.hpp"
#include "test_support.hpp"

using namespace holo;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
}  // namespace

TEST_CASE("eig_unitary: identity") {
  const EigenPairs ep = eig_unitary(CMatrix::Identity(2, 2));
  CHECK(std::abs(ep.values(0) - 1.0) < 1e-12);
  CHECK(std::abs(ep.values(1) - 1.0) < 1e-12);
  CHECK(unitarity_defect(ep.vectors) < 1e-12);
}

TEST_CASE("eig_unitary: already diagonal") {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::exp(kI * (kPi / 3));
  u(1, 1) = std::exp(-kI * (kPi / 3));
  const EigenPairs ep = eig_unitary(u);
  // sorted by principal argument: -pi/3 first
  CHECK(std::abs(ep.values(0) - std::exp(-kI * (kPi / 3))) < 1e-12);
  CHECK(std::abs(ep.values(1) - std::exp(kI * (kPi / 3))) < 1e-12);
  CHECK(std::abs(std::abs(ep.vectors(1, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(ep.vectors(0, 1)) - 1.0) < 1e-12);
}

TEST_CASE("eig_unitary: kicked spin-1/2 eigenphases match the closed form") {
  // independent oracle: eps_n = p*l/2 + (-1)^n arccos(cos(mu) cos T - sin(mu) sin T cos g)
  const int p = 1;
  const double lam = kPi / 2, gamma = kPi / 2, xi = 0.0, T = 1.0;
  const double mu = 0.5 * (2 - p) * lam;
  const double E = std::acos(std::cos(mu) * std::cos(T) - std::sin(mu) * std::sin(T) * std::cos(gamma));
  const double eps[2] = {0.5 * p * lam + E, 0.5 * p * lam - E};

  const CMatrix u = floquet_operator(ModelSpec::kicked_spin_half(T, p),
                                     ParameterPoint::s2(lam, gamma, xi));
  const EigenPairs ep = eig_unitary(u);
  for (int n = 0; n < 2; ++n) {
    const cplx expected = std::exp(-kI * eps[n]);
    const bool found = std::abs(ep.values(0) - expected) < 1e-10 ||
                       std::abs(ep.values(1) - expected) < 1e-10;
    CHECK(found);
  }
}

TEST_CASE("eig_unitary: rejects non-unitary input") {
  CMatrix m = 2.0 * CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(eig_unitary(m), NotUnitary);
}

TEST_CASE("eig_unitary: orthonormal basis inside degenerate clusters") {
  auto rng = testsupport::make_rng(1);
  const CMatrix v = testsupport::random_unitary(rng, 4);
  CVector phases(4);
  phases << std::exp(kI * 0.3), std::exp(kI * 0.3), std::exp(kI * 0.3), std::exp(-kI * 1.2);
  const CMatrix u = v * phases.asDiagonal() * v.adjoint();
  const EigenPairs ep = eig_unitary(u);
  CHECK(unitarity_defect(ep.vectors) < 1e-12);
  CHECK(max_abs(u * ep.vectors - ep.vectors * ep.values.asDiagonal().toDenseMatrix()) < 1e-10);
}

TEST_CASE("unitarize: examples") {
  auto rng = testsupport::make_rng(2);
  const CMatrix u = testsupport::random_unitary(rng, 3);
  CHECK(max_abs_diff(unitarize(u), u) < 1e-12);

  CHECK(max_abs_diff(unitarize(0.5 * CMatrix::Identity(2, 2)), CMatrix::Identity(2, 2)) < 1e-12);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = cplx(1.0, 1.0);
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = cplx(1.0, 1.0) / std::sqrt(2.0);
  CHECK(max_abs_diff(unitarize(d), expected) < 1e-12);
}

TEST_CASE("unitarize: singular input is rejected") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  CHECK_THROWS_AS(unitarize(m), SingularOverlap);
}

TEST_CASE("unitarize: recovers the unitary polar factor") {
  auto rng = testsupport::make_rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(trial % 4);
    const CMatrix u = testsupport::random_unitary(rng, n);
    const CMatrix p = testsupport::random_hpd(rng, n, 0.5, 2.0);
    CHECK(max_abs_diff(unitarize(u * p), u) < 1e-10);
  }
}

TEST_CASE("expm: examples") {
  CHECK(max_abs_diff(expm_antihermitian_generator(pauli(3), kPi), -CMatrix::Identity(2, 2)) <
        1e-12);
  auto rng = testsupport::make_rng(4);
  const CMatrix h = testsupport::random_hermitian(rng, 3);
  CHECK(max_abs_diff(expm_antihermitian_generator(h, 0.0), CMatrix::Identity(3, 3)) < 1e-12);
  CHECK(max_abs_diff(expm_antihermitian_generator(pauli(2), kPi / 2), -kI * pauli(2)) < 1e-12);
}

TEST_CASE("expm: rejects non-Hermitian generators") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(expm_antihermitian_generator(m, 1.0), NotHermitian);
}

TEST_CASE("expm: unitary output and one-parameter composition") {
  auto rng = testsupport::make_rng(5);
  std::uniform_real_distribution<double> s(-3.0, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(trial % 3) * 3;  // 2, 5, 8
    const CMatrix h = testsupport::random_hermitian(rng, n);
    const double s1 = s(rng), s2 = s(rng);
    const CMatrix u1 = expm_antihermitian_generator(h, s1);
    CHECK(unitarity_defect(u1) < 1e-12);
    const CMatrix u2 = expm_antihermitian_generator(h, s2);
    const CMatrix u12 = expm_antihermitian_generator(h, s1 + s2);
    CHECK(max_abs_diff(u1 * u2, u12) < 1e-10);
  }
}

TEST_CASE("eig_unitary: reconstructs its input") {
  auto rng = testsupport::make_rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const CMatrix u = testsupport::random_unitary(rng, n);
    const EigenPairs ep = eig_unitary(u);
    CHECK(unitarity_defect(ep.vectors) < 1e-12);
    CHECK(max_abs(u - ep.vectors * ep.values.asDiagonal() * ep.vectors.adjoint()) < 1e-9);
  }
}

TEST_CASE("log_unitary_generator: round trip") {
  auto rng = testsupport::make_rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix u = testsupport::random_unitary(rng, 4);
    const CMatrix g = log_unitary_generator(u);
    CHECK(hermiticity_defect(g) < 1e-12);
    CHECK(max_abs_diff(expm_antihermitian_generator(g, 1.0), u) < 1e-9);
  }
}
