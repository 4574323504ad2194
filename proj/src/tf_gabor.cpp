#include "wavespace/tf_gabor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "wavespace/errors.hpp"

namespace wavespace::tf {

namespace {

void require_finite(const RealVector& v, const char* what) {
  for (double c : v) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument(std::string("non-finite coordinate in ") + what);
    }
  }
}

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension " << a << " vs " << b;
    throw DimensionError(os.str());
  }
}

double dot(const RealVector& a, const RealVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(const RealVector& a) { return dot(a, a); }

complex unit_phase(double turns) { return std::polar(1.0, 2.0 * kPi * turns); }

// Orthonormal Hermite function of the given order in the variable
// u = sqrt(pi) t, scaled so that order 0 is e^{-pi t^2 / 2}.
double hermite_function(int order, double t) {
  const double u = std::sqrt(kPi) * t;
  double prev = 0.0;
  double cur = std::exp(-0.5 * u * u);
  for (int k = 0; k < order; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * u * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::string dimension_suffix(std::size_t n) { return "n=" + std::to_string(n); }

}  // namespace

TFPoint::TFPoint(RealVector x, RealVector omega) : x_(std::move(x)), omega_(std::move(omega)) {
  if (x_.empty()) throw DimensionError("TFPoint: dimension must be at least 1");
  require_same_dimension(x_.size(), omega_.size(), "TFPoint x/omega");
  if (x_.size() > kMaxDimension) throw DimensionError("TFPoint: dimension exceeds kMaxDimension");
  require_finite(x_, "TFPoint.x");
  require_finite(omega_, "TFPoint.omega");
}

TFPoint operator-(const TFPoint& a, const TFPoint& b) {
  require_same_dimension(a.dimension(), b.dimension(), "TFPoint difference");
  RealVector x(a.dimension()), w(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    x[i] = a.x()[i] - b.x()[i];
    w[i] = a.omega()[i] - b.omega()[i];
  }
  return TFPoint(std::move(x), std::move(w));
}

double distance(const TFPoint& a, const TFPoint& b) {
  const TFPoint d = a - b;
  return std::sqrt(squared_norm(d.x()) + squared_norm(d.omega()));
}

void QuadratureSpec::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("QuadratureSpec: half_width must be positive");
  }
  if (nodes < 2) throw std::invalid_argument("QuadratureSpec: need at least 2 nodes");
}

QuadratureSpec QuadratureSpec::defaults_for(std::size_t n) {
  switch (n) {
    case 1: return {6.0, 2048};
    case 2: return {6.0, 256};
    default: return {6.0, 64};
  }
}

QuadratureSpec finer(const QuadratureSpec& a, const QuadratureSpec& b) {
  return {std::max(a.half_width, b.half_width), std::max(a.nodes, b.nodes)};
}

complex integrate(std::size_t n, const QuadratureSpec& quad, const Integrand& integrand) {
  quad.validate();
  if (n == 0 || n > kMaxDimension) throw DimensionError("integrate: unsupported dimension");
  const int N = quad.nodes;
  const double h = quad.step();
  const double T = quad.half_width;

  std::array<int, kMaxDimension> idx{};
  std::array<double, kMaxDimension> t{};
  for (std::size_t a = 0; a < n; ++a) t[a] = -T;
  const std::span<const double> point(t.data(), n);

  complex sum = 0.0;
  for (;;) {
    double w = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      if (idx[a] == 0 || idx[a] == N - 1) w *= 0.5;
    }
    sum += w * integrand(point);

    std::size_t axis = n;
    while (axis > 0) {
      --axis;
      if (++idx[axis] < N) {
        t[axis] = -T + idx[axis] * h;
        break;
      }
      idx[axis] = 0;
      t[axis] = -T;
      if (axis == 0) return sum * std::pow(h, double(n));
    }
  }
}

Window::Window(WindowKind kind, std::size_t dimension, int order, std::string label,
               QuadratureSpec quad, Evaluator base)
    : kind_(kind),
      dimension_(dimension),
      order_(order),
      label_(std::move(label)),
      quad_(quad),
      base_(std::move(base)) {
  if (dimension_ == 0 || dimension_ > kMaxDimension) {
    throw DimensionError("Window: unsupported dimension");
  }
  quad_.validate();
  compute_norm();
}

void Window::compute_norm() {
  const complex mass =
      integrate(dimension_, quad_, [this](std::span<const double> t) { return complex(std::norm((*this)(t))); });
  norm_ = std::sqrt(mass.real());
}

Window Window::gaussian(std::size_t n) { return gaussian(n, QuadratureSpec::defaults_for(n)); }

Window Window::gaussian(std::size_t n, QuadratureSpec quad) {
  return Window(WindowKind::gaussian, n, 0, "gaussian(" + dimension_suffix(n) + ")", quad,
                [](std::span<const double> t) {
                  double r2 = 0.0;
                  for (double c : t) r2 += c * c;
                  return complex(std::exp(-0.5 * kPi * r2));
                });
}

Window Window::hermite(int order, std::size_t n) {
  if (order < 0) throw std::invalid_argument("hermite: order must be non-negative");
  std::string label = "hermite(k=" + std::to_string(order) + "," + dimension_suffix(n) + ")";
  return Window(WindowKind::hermite, n, order, std::move(label), QuadratureSpec::defaults_for(n),
                [order](std::span<const double> t) {
                  double v = hermite_function(order, t[0]);
                  double r2 = 0.0;
                  for (std::size_t a = 1; a < t.size(); ++a) r2 += t[a] * t[a];
                  return complex(v * std::exp(-0.5 * kPi * r2));
                });
}

Window Window::tabulated(double t_min, double t_max, std::vector<complex> samples) {
  QuadratureSpec quad = QuadratureSpec::defaults_for(1);
  quad.half_width = std::max({quad.half_width, std::abs(t_min), std::abs(t_max)});
  return tabulated(t_min, t_max, std::move(samples), quad);
}

Window Window::tabulated(double t_min, double t_max, std::vector<complex> samples,
                         QuadratureSpec quad) {
  if (!(t_max > t_min) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw std::invalid_argument("tabulated: need finite t_min < t_max");
  }
  if (samples.size() < 2) throw std::invalid_argument("tabulated: need at least 2 samples");
  for (const complex& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw std::invalid_argument("tabulated: non-finite sample");
    }
  }
  std::ostringstream label;
  label.precision(17);
  label << "tabulated([" << t_min << "," << t_max << "]," << samples.size() << ")";
  const double spacing = (t_max - t_min) / double(samples.size() - 1);
  auto table = std::make_shared<const std::vector<complex>>(std::move(samples));
  return Window(WindowKind::tabulated, 1, 0, label.str(), quad,
                [table, t_min, t_max, spacing](std::span<const double> t) {
                  const double s = t[0];
                  if (s < t_min || s > t_max) return complex(0.0);
                  const double pos = (s - t_min) / spacing;
                  const std::size_t last = table->size() - 1;
                  const std::size_t k = std::min(static_cast<std::size_t>(pos), last - 1);
                  const double frac = pos - double(k);
                  return (1.0 - frac) * (*table)[k] + frac * (*table)[k + 1];
                });
}

complex Window::operator()(std::span<const double> t) const {
  if (!reflected_) return scale_ * base_(t);
  std::array<double, kMaxDimension> r{};
  for (std::size_t a = 0; a < t.size(); ++a) r[a] = -t[a];
  return scale_ * base_(std::span<const double>(r.data(), t.size()));
}

complex Window::operator()(double t) const { return (*this)(std::span<const double>(&t, 1)); }

bool Window::is_standard_gaussian() const {
  return kind_ == WindowKind::gaussian && scale_ == complex(1.0, 0.0);
}

Window Window::scaled(complex factor) const {
  Window w = *this;
  w.scale_ *= factor;
  if (factor != complex(1.0, 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "scaled(" << label_ << "," << factor.real() << "," << factor.imag() << ")";
    w.label_ = os.str();
  }
  w.norm_ = norm_ * std::abs(factor);
  return w;
}

Window Window::reflected() const {
  // Gaussian and Hermite windows have parity (-1)^order.
  if (kind_ == WindowKind::gaussian) return *this;
  if (kind_ == WindowKind::hermite) {
    if (order_ % 2 == 0) return *this;
    Window w = *this;
    w.scale_ = -w.scale_;
    w.label_ = "reflected(" + label_ + ")";
    return w;
  }
  Window w = *this;
  w.reflected_ = !w.reflected_;
  w.label_ = "reflected(" + label_ + ")";
  return w;
}

Window Window::with_quadrature(QuadratureSpec quad) const {
  quad.validate();
  Window w = *this;
  w.quad_ = quad;
  w.compute_norm();
  return w;
}

Window Window::normalized() const {
  if (!(norm_ > 0.0)) throw AdmissibilityError("window has zero norm: " + label_);
  // The standard Gaussian has unit norm analytically; keep its closed forms.
  if (norm_ == 1.0 || is_standard_gaussian()) return *this;
  return scaled(1.0 / norm_);
}

bool is_admissible(const Window& g) { return std::abs(g.norm_l2() - 1.0) <= kAdmissibleTolerance; }

Window require_admissible(const Window& g) {
  if (is_admissible(g)) return g;
  if (std::abs(g.norm_l2() - 1.0) <= kRescaleTolerance) return g.normalized();
  std::ostringstream os;
  os << "window " << g.label() << " has L2 norm " << g.norm_l2() << ", expected 1";
  throw AdmissibilityError(os.str());
}

complex stft_eval(const Window& f, const Window& g, const TFPoint& p) {
  require_same_dimension(f.dimension(), g.dimension(), "stft_eval windows");
  require_same_dimension(f.dimension(), p.dimension(), "stft_eval point");
  const std::size_t n = f.dimension();
  const QuadratureSpec quad = finer(f.quadrature(), g.quadrature());
  const RealVector& x = p.x();
  const RealVector& omega = p.omega();
  return integrate(n, quad, [&](std::span<const double> t) {
    std::array<double, kMaxDimension> shifted{};
    double phase = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      shifted[a] = t[a] - x[a];
      phase += t[a] * omega[a];
    }
    return f(t) * std::conj(g(std::span<const double>(shifted.data(), n))) * unit_phase(-phase);
  });
}

complex gaussian_stft_closed_form(std::size_t n, const TFPoint& p) {
  require_same_dimension(n, p.dimension(), "gaussian_stft_closed_form");
  const double xw = dot(p.x(), p.omega());
  return unit_phase(-0.5 * xw) * std::exp(-0.25 * kPi * squared_norm(p.x()) - kPi * squared_norm(p.omega()));
}

complex point_kernel_eval(const Window& g, const TFPoint& center, const TFPoint& at) {
  require_same_dimension(g.dimension(), center.dimension(), "point_kernel_eval center");
  require_same_dimension(g.dimension(), at.dimension(), "point_kernel_eval at");
  if (!is_admissible(g)) {
    std::ostringstream os;
    os << "point kernel needs a unit-norm window; " << g.label() << " has norm " << g.norm_l2();
    throw AdmissibilityError(os.str());
  }
  const TFPoint diff = at - center;
  const double turns = -dot(center.x(), diff.omega());
  const complex base =
      g.is_standard_gaussian() ? gaussian_stft_closed_form(g.dimension(), diff) : stft_eval(g, g, diff);
  return unit_phase(turns) * base;
}

complex wigner_eval(const Window& g, const TFPoint& p) {
  require_same_dimension(g.dimension(), p.dimension(), "wigner_eval");
  const std::size_t n = g.dimension();
  RealVector x2(n), w2(n);
  for (std::size_t a = 0; a < n; ++a) {
    x2[a] = 2.0 * p.x()[a];
    w2[a] = 2.0 * p.omega()[a];
  }
  const complex v = stft_eval(g, g.reflected(), TFPoint(std::move(x2), std::move(w2)));
  return std::ldexp(1.0, int(n)) * unit_phase(2.0 * dot(p.x(), p.omega())) * v;
}

complex heisenberg_wavelet_eval(const Window& g, const Window& f, const RealVector& x,
                                const RealVector& omega, double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in [0, 1)");
  TFPoint p(x, omega);
  return unit_phase(-tau) * unit_phase(0.5 * dot(x, omega)) * stft_eval(f, g, p);
}

}  // namespace wavespace::tf
