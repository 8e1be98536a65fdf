#include "holo/models.hpp"

#include <cmath>

namespace holo {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::KickedSpinHalf: return "spin_half";
    case ModelKind::KickedSpinThreeHalf: return "spin_threehalf";
    case ModelKind::CustomStatic: return "custom_static";
  }
  return "unknown";
}

double ParameterPoint::gamma() const {
  if (sphere.empty()) throw DimensionMismatch("ParameterPoint: gamma missing");
  return sphere[0];
}

double ParameterPoint::eta() const {
  if (sphere.size() != 4) throw DimensionMismatch("ParameterPoint: eta needs S^4 coordinates");
  return sphere[1];
}

double ParameterPoint::xi() const {
  if (sphere.size() == 2) return sphere[1];
  if (sphere.size() == 4) return sphere[2];
  throw DimensionMismatch("ParameterPoint: xi missing");
}

double ParameterPoint::zeta() const {
  if (sphere.size() != 4) throw DimensionMismatch("ParameterPoint: zeta needs S^4 coordinates");
  return sphere[3];
}

ParameterPoint ParameterPoint::s2(double lambda, double gamma, double xi) {
  ParameterPoint p;
  p.lambda = lambda;
  p.sphere = {gamma, xi};
  return p;
}

ParameterPoint ParameterPoint::s4(double lambda, double gamma, double eta, double xi,
                                  double zeta) {
  ParameterPoint p;
  p.lambda = lambda;
  p.sphere = {gamma, eta, xi, zeta};
  return p;
}

int ModelSpec::dim() const {
  switch (kind) {
    case ModelKind::KickedSpinHalf: return 2;
    case ModelKind::KickedSpinThreeHalf: return 4;
    case ModelKind::CustomStatic: return custom_dim;
  }
  return 0;
}

ModelSpec ModelSpec::kicked_spin_half(double T, int p) {
  ModelSpec s;
  s.kind = ModelKind::KickedSpinHalf;
  s.T = T;
  s.p = p;
  return s;
}

ModelSpec ModelSpec::kicked_spin_threehalf(double T, int p) {
  ModelSpec s;
  s.kind = ModelKind::KickedSpinThreeHalf;
  s.T = T;
  s.p = p;
  return s;
}

ModelSpec ModelSpec::custom_static(int dim, std::function<CMatrix(const ParameterPoint&)> h) {
  ModelSpec s;
  s.kind = ModelKind::CustomStatic;
  s.custom_dim = dim;
  s.custom_h = std::move(h);
  return s;
}

namespace {

const cplx kI(0.0, 1.0);

CMatrix make_pauli(int i) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw DimensionMismatch("pauli: index out of range");
  }
  return m;
}

CMatrix block2(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
  CMatrix m(4, 4);
  m.block(0, 0, 2, 2) = a;
  m.block(0, 2, 2, 2) = b;
  m.block(2, 0, 2, 2) = c;
  m.block(2, 2, 2, 2) = d;
  return m;
}

CMatrix make_tau(int i) {
  const CMatrix Z = CMatrix::Zero(2, 2);
  const CMatrix I = CMatrix::Identity(2, 2);
  switch (i) {
    case 1: return block2(Z, kI * make_pauli(2), -kI * make_pauli(2), Z);
    case 2: return block2(Z, -kI * make_pauli(1), kI * make_pauli(1), Z);
    case 3: return block2(Z, I, I, Z);
    case 4: return block2(Z, -kI * make_pauli(3), kI * make_pauli(3), Z);
    case 5: return block2(I, Z, Z, -I);
    default: throw DimensionMismatch("tau: index out of range");
  }
}

}  // namespace

const CMatrix& pauli(int i) {
  static const CMatrix s[3] = {make_pauli(1), make_pauli(2), make_pauli(3)};
  if (i < 1 || i > 3) throw DimensionMismatch("pauli: index out of range");
  return s[i - 1];
}

const CMatrix& tau(int i) {
  static const CMatrix t[5] = {make_tau(1), make_tau(2), make_tau(3), make_tau(4),
                               make_tau(5)};
  if (i < 1 || i > 5) throw DimensionMismatch("tau: index out of range");
  return t[i - 1];
}

CMatrix build_V_spin_half(int p, double gamma, double xi) {
  const double b1 = std::sin(gamma) * std::cos(xi);
  const double b2 = std::sin(gamma) * std::sin(xi);
  const double b3 = std::cos(gamma);
  return 0.5 * p * CMatrix::Identity(2, 2) +
         0.5 * (2 - p) * (b1 * pauli(1) + b2 * pauli(2) + b3 * pauli(3));
}

CMatrix build_V_spin_threehalf(int p, double gamma, double eta, double xi, double zeta) {
  const double sg = std::sin(gamma);
  const double b[5] = {sg * std::cos(eta) * std::cos(xi), sg * std::cos(eta) * std::sin(xi),
                       sg * std::sin(eta) * std::cos(zeta), sg * std::sin(eta) * std::sin(zeta),
                       std::cos(gamma)};
  CMatrix v = 0.5 * p * CMatrix::Identity(4, 4);
  for (int i = 0; i < 5; ++i) v += 0.5 * (2 - p) * b[i] * tau(i + 1);
  return v;
}

CMatrix floquet_operator(const ModelSpec& spec, const ParameterPoint& alpha) {
  CMatrix V, drift;
  switch (spec.kind) {
    case ModelKind::KickedSpinHalf:
      V = build_V_spin_half(spec.p, alpha.gamma(), alpha.xi());
      drift = pauli(3);
      break;
    case ModelKind::KickedSpinThreeHalf:
      V = build_V_spin_threehalf(spec.p, alpha.gamma(), alpha.eta(), alpha.xi(), alpha.zeta());
      drift = tau(5);
      break;
    case ModelKind::CustomStatic:
      throw UnsupportedModel("floquet_operator: not defined for CustomStatic");
  }
  const CMatrix half_drift = expm_antihermitian_generator(drift, 0.5 * spec.T);
  return half_drift * expm_antihermitian_generator(V, alpha.lambda) * half_drift;
}

CMatrix static_hamiltonian(const ModelSpec& spec, const ParameterPoint& alpha) {
  if (spec.kind != ModelKind::CustomStatic || !spec.custom_h)
    throw UnsupportedModel("static_hamiltonian: needs a CustomStatic model");
  CMatrix h = spec.custom_h(alpha);
  if (h.rows() != spec.custom_dim || h.cols() != spec.custom_dim)
    throw DimensionMismatch("static_hamiltonian: user function returned wrong shape");
  if (hermiticity_defect(h) > 1e-10)
    throw NotHermitian("static_hamiltonian: user function returned a non-Hermitian matrix");
  return h;
}

}  // namespace holo
