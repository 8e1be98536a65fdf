#include "holo/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace holo {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("frobenius_distance: shape mismatch");
  return (a - b).norm();
}

double unitarity_defect(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

double hermiticity_defect(const CMatrix& h) { return max_abs(h - h.adjoint()); }

void fix_column_phases(CMatrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (best > 0.0) v.col(j) *= std::conj(v(imax, j)) / std::abs(v(imax, j));
  }
}

EigenPairs eig_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) throw DimensionMismatch("eig_unitary: not square");
  const double defect = unitarity_defect(u);
  if (defect > tol)
    throw NotUnitary("eig_unitary: ||u^t u - I||_max = " + std::to_string(defect));

  // Schur form of a normal matrix is diagonal, so the Schur vectors are an
  // orthonormal eigenbasis even across degenerate clusters.
  Eigen::ComplexSchur<CMatrix> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw ConvergenceFailure("eig_unitary: Schur iteration failed");

  const Eigen::Index n = u.rows();
  CVector vals(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx v = schur.matrixT()(i, i);
    const double a = std::abs(v);
    vals(i) = (a > 0.0) ? v / a : cplx(1.0, 0.0);
  }
  CMatrix vecs = schur.matrixU();

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::arg(vals(a)) < std::arg(vals(b));
  });

  EigenPairs out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = vals(order[static_cast<size_t>(j)]);
    out.vectors.col(j) = vecs.col(order[static_cast<size_t>(j)]);
  }
  fix_column_phases(out.vectors);

  const double resid =
      max_abs(u * out.vectors - out.vectors * out.values.asDiagonal().toDenseMatrix());
  if (resid > 1e-8)
    throw ConvergenceFailure("eig_unitary: residual " + std::to_string(resid));
  return out;
}

HermEigenPairs eig_hermitian(const CMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw DimensionMismatch("eig_hermitian: not square");
  const double defect = hermiticity_defect(h);
  if (defect > tol)
    throw NotHermitian("eig_hermitian: ||h - h^t||_max = " + std::to_string(defect));

  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("eig_hermitian: solver failed");

  HermEigenPairs out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  fix_column_phases(out.vectors);
  return out;
}

CMatrix unitarize(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("unitarize: not square");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smin = svd.singularValues().minCoeff();
  if (smin <= 1e-12)
    throw SingularOverlap("unitarize: smallest singular value " + std::to_string(smin));
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix expm_antihermitian_generator(const CMatrix& h, double scale) {
  const HermEigenPairs ep = eig_hermitian(h, 1e-10);
  const Eigen::Index n = h.rows();
  CVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i)
    phases(i) = std::exp(cplx(0.0, -scale * ep.values(i)));
  return ep.vectors * phases.asDiagonal() * ep.vectors.adjoint();
}

CMatrix log_unitary_generator(const CMatrix& u, double tol) {
  const EigenPairs ep = eig_unitary(u, tol);
  const Eigen::Index n = u.rows();
  Eigen::VectorXd theta(n);
  for (Eigen::Index i = 0; i < n; ++i) theta(i) = -std::arg(ep.values(i));
  CMatrix g = ep.vectors * theta.cast<cplx>().asDiagonal() * ep.vectors.adjoint();
  return 0.5 * (g + g.adjoint());
}

}  // namespace holo
