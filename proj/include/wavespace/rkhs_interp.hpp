#pragma once

// Gram matrices of Gabor point kernels, PSD checks, and minimal-norm
// interpolation in the Gabor space V_g(L2(R^n)).

#include <string>
#include <vector>

#include "wavespace/linalg.hpp"
#include "wavespace/tf_gabor.hpp"

namespace wavespace::rkhs {

using tf::complex;
using tf::TFPoint;
using tf::Window;

/// Ordered, pairwise distinct phase-space points of a common dimension.
class PointSet {
 public:
  explicit PointSet(std::vector<TFPoint> points);

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return points_.front().dimension(); }
  const TFPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<TFPoint>& points() const { return points_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<TFPoint> points_;
};

/// Kernel matrix K(i, j) = k_{x_j}(x_i): rows are evaluation points, columns
/// kernel centers. Exactly Hermitian (upper triangle computed, then mirrored).
struct GramMatrix {
  linalg::Matrix entries;
  std::string window_label;
  std::vector<TFPoint> points;

  Eigen::Index size() const { return entries.rows(); }
};

/// Relative threshold below which eigenvalues count as zero when inverting.
inline constexpr double kPseudoInverseCutoff = 1e-12;
/// Relative PSD tolerance: min_eig >= -kPsdTolerance * max_eig.
inline constexpr double kPsdTolerance = 1e-10;
/// Strict positive definiteness: min_eig > kDefiniteTolerance * max_eig.
inline constexpr double kDefiniteTolerance = 1e-10;
/// Residual bound for feasibility, relative to max(1, |lambda|).
inline constexpr double kFeasibilityTolerance = 1e-8;

GramMatrix gram_assemble(const Window& g, const PointSet& omega);

/// Wraps an externally computed kernel matrix (e.g. from a finite group).
/// Throws if the matrix is not square or not Hermitian within 1e-12.
GramMatrix gram_from_matrix(linalg::Matrix entries, std::string label);

struct PsdReport {
  double min_eig;
  double max_eig;
  bool psd;
};

PsdReport psd_check(const GramMatrix& k);

/// min_eig > tol * max_eig. Shared with the HRT verdict so both decide
/// independence by the same rule.
bool strictly_positive_definite(double min_eig, double max_eig, double tol = kDefiniteTolerance);

bool interpolation_feasible(const GramMatrix& k, const linalg::Vector& lambda);

/// F = sum_k alpha_k k_{x_k}, the minimal-norm interpolant.
struct Interpolant {
  linalg::Vector alpha;
  std::vector<TFPoint> points;
  std::string window_label;
  double norm = 0.0;
};

/// Throws InfeasibleError when lambda lies outside the image of K.
Interpolant solve_minimal_norm(const GramMatrix& k, const linalg::Vector& lambda);

/// sqrt(conj(alpha)^T K alpha), clamped at zero.
double interpolant_norm(const GramMatrix& k, const linalg::Vector& alpha);

complex interpolant_eval(const Interpolant& f, const Window& g, const TFPoint& at);

/// Rectangular (x, omega) grid for n = 1. Axis values are min + k * step for
/// k = 0 .. round((max - min) / step).
struct GridSpec {
  double x_min, x_max, omega_min, omega_max, step;

  std::vector<double> x_axis() const;
  std::vector<double> omega_axis() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct GridRow {
  double x, omega;
  complex value;
};

/// Row-major table: x outer, omega inner.
std::vector<GridRow> interpolant_grid(const Interpolant& f, const Window& g, const GridSpec& grid);

}  // namespace wavespace::rkhs
