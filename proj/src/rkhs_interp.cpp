#include "wavespace/rkhs_interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavespace/errors.hpp"

namespace wavespace::rkhs {

PointSet::PointSet(std::vector<TFPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("PointSet: need at least one point");
  const std::size_t n = points_.front().dimension();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dimension() != n) throw DimensionError("PointSet: mixed dimensions");
    for (std::size_t j = 0; j < i; ++j) {
      if (points_[i] == points_[j]) {
        throw std::invalid_argument("PointSet: duplicate point at indices " + std::to_string(j) +
                                    " and " + std::to_string(i));
      }
    }
  }
}

GramMatrix gram_assemble(const Window& g, const PointSet& omega) {
  if (g.dimension() != omega.dimension()) throw DimensionError("gram_assemble: window/point dimension");
  const Window w = tf::require_admissible(g);
  const auto m = static_cast<Eigen::Index>(omega.size());
  linalg::Matrix k(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    k(i, i) = tf::point_kernel_eval(w, omega[i], omega[i]).real();
    for (Eigen::Index j = i + 1; j < m; ++j) {
      k(i, j) = tf::point_kernel_eval(w, omega[j], omega[i]);
      k(j, i) = std::conj(k(i, j));
    }
  }
  return {std::move(k), g.label(), omega.points()};
}

GramMatrix gram_from_matrix(linalg::Matrix entries, std::string label) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw DimensionError("gram_from_matrix: need a non-empty square matrix");
  }
  if (linalg::hermitian_defect(entries) > 1e-12) {
    throw std::invalid_argument("gram_from_matrix: matrix is not Hermitian");
  }
  // Symmetrize exactly.
  linalg::Matrix h = 0.5 * (entries + entries.adjoint());
  return {std::move(h), std::move(label), {}};
}

PsdReport psd_check(const GramMatrix& k) {
  const auto spectrum = linalg::hermitian_spectrum(k.entries);
  const double lo = spectrum.min();
  const double hi = spectrum.max();
  return {lo, hi, lo >= -kPsdTolerance * hi};
}

bool strictly_positive_definite(double min_eig, double max_eig, double tol) {
  return min_eig > tol * max_eig;
}

namespace {

void require_length(const GramMatrix& k, const linalg::Vector& lambda) {
  if (lambda.size() != k.size()) {
    throw DimensionError("interpolation data has length " + std::to_string(lambda.size()) +
                         ", Gram matrix has size " + std::to_string(k.size()));
  }
}

struct MinimalSolution {
  linalg::Vector alpha;
  double residual;
};

MinimalSolution minimal_solution(const GramMatrix& k, const linalg::Vector& lambda) {
  const auto spectrum = linalg::hermitian_spectrum(k.entries);
  linalg::Vector alpha = linalg::pseudo_inverse_solve(spectrum, lambda, kPseudoInverseCutoff);
  const double residual = (k.entries * alpha - lambda).norm();
  return {std::move(alpha), residual};
}

bool residual_ok(double residual, const linalg::Vector& lambda) {
  return residual <= kFeasibilityTolerance * std::max(1.0, lambda.norm());
}

}  // namespace

bool interpolation_feasible(const GramMatrix& k, const linalg::Vector& lambda) {
  require_length(k, lambda);
  return residual_ok(minimal_solution(k, lambda).residual, lambda);
}

double interpolant_norm(const GramMatrix& k, const linalg::Vector& alpha) {
  const double q = alpha.dot(k.entries * alpha).real();
  return std::sqrt(std::max(0.0, q));
}

Interpolant solve_minimal_norm(const GramMatrix& k, const linalg::Vector& lambda) {
  require_length(k, lambda);
  auto sol = minimal_solution(k, lambda);
  if (!residual_ok(sol.residual, lambda)) {
    throw InfeasibleError("interpolation values lie outside the image of the Gram matrix (residual " +
                          std::to_string(sol.residual) + ")");
  }
  Interpolant f;
  f.norm = interpolant_norm(k, sol.alpha);
  f.alpha = std::move(sol.alpha);
  f.points = k.points;
  f.window_label = k.window_label;
  return f;
}

complex interpolant_eval(const Interpolant& f, const Window& g, const TFPoint& at) {
  if (g.label() != f.window_label) {
    throw std::invalid_argument("interpolant was built from " + f.window_label + ", not " + g.label());
  }
  if (f.points.size() != static_cast<std::size_t>(f.alpha.size())) {
    throw DimensionError("interpolant has no point set matching its coefficients");
  }
  const Window w = tf::require_admissible(g);
  complex sum = 0.0;
  for (std::size_t k = 0; k < f.points.size(); ++k) {
    if (f.alpha(Eigen::Index(k)) == complex(0.0)) continue;
    sum += f.alpha(Eigen::Index(k)) * tf::point_kernel_eval(w, f.points[k], at);
  }
  return sum;
}

namespace {

std::vector<double> axis(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("empty grid: need min <= max and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> v(count);
  for (std::size_t k = 0; k < count; ++k) v[k] = lo + double(k) * step;
  return v;
}

}  // namespace

std::vector<double> GridSpec::x_axis() const { return axis(x_min, x_max, step); }
std::vector<double> GridSpec::omega_axis() const { return axis(omega_min, omega_max, step); }

std::vector<GridRow> interpolant_grid(const Interpolant& f, const Window& g, const GridSpec& grid) {
  if (g.dimension() != 1) throw DimensionError("interpolant_grid: phase-plane grids need n = 1");
  const auto xs = grid.x_axis();
  const auto ws = grid.omega_axis();
  std::vector<GridRow> rows;
  rows.reserve(xs.size() * ws.size());
  for (double x : xs) {
    for (double w : ws) rows.push_back({x, w, interpolant_eval(f, g, TFPoint(x, w))});
  }
  return rows;
}

}  // namespace wavespace::rkhs
