#pragma once

#include <functional>
#include <string>
#include <vector>

#include "holo/matrixcore.hpp"

namespace holo {

enum class ModelKind { KickedSpinHalf, KickedSpinThreeHalf, CustomStatic };

std::string to_string(ModelKind kind);

// A point on the parameter manifold. Angles are stored unwrapped on the real
// line; reduction modulo 2*pi happens only where a formula needs it.
struct ParameterPoint {
  double lambda = 0.0;
  std::vector<double> sphere;   // {gamma, xi} on S^2, {gamma, eta, xi, zeta} on S^4
  std::vector<double> generic;  // custom static models

  double gamma() const;
  double eta() const;
  double xi() const;
  double zeta() const;

  static ParameterPoint s2(double lambda, double gamma, double xi);
  static ParameterPoint s4(double lambda, double gamma, double eta, double xi, double zeta);
};

struct ModelSpec {
  ModelKind kind = ModelKind::KickedSpinHalf;
  double T = 1.0;    // constant-field strength
  int p = 1;         // winding integer
  double T_p = 1.0;  // period, fixed to 1 for the kicked models
  int custom_dim = 0;
  std::function<CMatrix(const ParameterPoint&)> custom_h;

  int dim() const;
  bool kicked() const { return kind != ModelKind::CustomStatic; }

  static ModelSpec kicked_spin_half(double T, int p);
  static ModelSpec kicked_spin_threehalf(double T, int p);
  static ModelSpec custom_static(int dim, std::function<CMatrix(const ParameterPoint&)> h);
};

// Pauli matrices, i in 1..3.
const CMatrix& pauli(int i);
// 4x4 Clifford generators, i in 1..5: tau_i tau_j + tau_j tau_i = 2 delta_ij.
const CMatrix& tau(int i);

// V = p/2 + (2-p)/2 * sum_i b_i sigma_i with the spherical map
// b = (sin g cos x, sin g sin x, cos g).
CMatrix build_V_spin_half(int p, double gamma, double xi);

// V = p/2 + (2-p)/2 * sum_i b_i tau_i with
// b = (sin g cos e cos x, sin g cos e sin x, sin g sin e cos z, sin g sin e sin z, cos g).
CMatrix build_V_spin_threehalf(int p, double gamma, double eta, double xi, double zeta);

// One-period evolution operator of a kicked model:
// exp(-i T/2 drift) exp(-i lambda V) exp(-i T/2 drift), drift = sigma_3 or tau_5.
CMatrix floquet_operator(const ModelSpec& spec, const ParameterPoint& alpha);

// H(alpha) from the caller-supplied function of a CustomStatic model.
CMatrix static_hamiltonian(const ModelSpec& spec, const ParameterPoint& alpha);

}  // namespace holo
