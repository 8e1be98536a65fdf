#pragma once

#include <Eigen/Dense>
#include <complex>

#include "holo/errors.hpp"

namespace holo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Dense complex kernel for the small (d <= ~16) matrices this engine works
// with. Equality is always tolerance-based on the max-abs entry difference.

struct EigenPairs {
  CVector values;   // unit-modulus for unitary input
  CMatrix vectors;  // orthonormal columns
};

struct HermEigenPairs {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // orthonormal columns
};

double max_abs(const CMatrix& m);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius_distance(const CMatrix& a, const CMatrix& b);
double unitarity_defect(const CMatrix& u);  // ||u^† u - I||_max
double hermiticity_defect(const CMatrix& h);

// Canonical phase: largest-magnitude component of each column made real
// positive (first maximal index on ties). Keeps solver output reproducible.
void fix_column_phases(CMatrix& v);

// Eigendecomposition of a (near-)unitary matrix via complex Schur form, which
// keeps the eigenvector columns orthonormal even inside degenerate clusters.
// Eigenvalues are normalized to unit modulus and sorted by principal argument.
EigenPairs eig_unitary(const CMatrix& u, double tol = 1e-10);

HermEigenPairs eig_hermitian(const CMatrix& h, double tol = 1e-10);

// Unitary polar factor; minimizes Frobenius distance to m among unitaries.
// Throws SingularOverlap when the smallest singular value is <= 1e-12.
CMatrix unitarize(const CMatrix& m);

// e^{-i scale h} for Hermitian h, via spectral decomposition (exact up to the
// eigensolver for these small matrices, no series truncation).
CMatrix expm_antihermitian_generator(const CMatrix& h, double scale);

// Hermitian generator G with u = e^{-iG}, eigenphases taken in [-pi, pi).
CMatrix log_unitary_generator(const CMatrix& u, double tol = 1e-8);

}  // namespace holo
