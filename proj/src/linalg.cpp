#include "wavespace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavespace::linalg {

HermitianSpectrum hermitian_spectrum(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("hermitian_spectrum: need a non-empty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolve failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Vector pseudo_inverse_solve(const HermitianSpectrum& spectrum, const Vector& b, double rel_cutoff) {
  const auto& lambda = spectrum.values;
  const double scale = lambda.cwiseAbs().maxCoeff();
  const Vector coords = spectrum.vectors.adjoint() * b;
  Vector scaled = Vector::Zero(coords.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda(k)) >= rel_cutoff * scale && lambda(k) != 0.0) {
      scaled(k) = coords(k) / lambda(k);
    }
  }
  return spectrum.vectors * scaled;
}

double hermitian_defect(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::Index numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return std::count_if(s.begin(), s.end(), [&](double v) { return v > rel_tol * s(0); });
}

}  // namespace wavespace::linalg
