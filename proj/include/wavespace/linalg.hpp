#pragma once

#include <Eigen/Dense>

namespace wavespace::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
struct HermitianSpectrum {
  Eigen::VectorXd values;
  Matrix vectors;

  double min() const { return values(0); }
  double max() const { return values(values.size() - 1); }
};

HermitianSpectrum hermitian_spectrum(const Matrix& a);

/// Pseudo-inverse solution of a x = b for Hermitian a, discarding
/// eigenvalues with |lambda| < rel_cutoff * max|lambda|.
Vector pseudo_inverse_solve(const HermitianSpectrum& spectrum, const Vector& b, double rel_cutoff);

/// Largest |a(i,j) - conj(a(j,i))|.
double hermitian_defect(const Matrix& a);

/// Numerical rank: singular values above rel_tol * largest singular value.
Eigen::Index numerical_rank(const Matrix& a, double rel_tol);

}  // namespace wavespace::linalg
