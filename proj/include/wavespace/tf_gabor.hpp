#pragma once

// Time-frequency primitives: phase-space points, evaluable windows, the
// short-time Fourier transform by quadrature, and the closed-form Gaussian
// kernels used as references throughout the library.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wavespace::tf {

using complex = std::complex<double>;
using RealVector = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Largest supported dimension n of the underlying space R^n.
inline constexpr std::size_t kMaxDimension = 4;

/// A point (x, omega) of phase space R^{2n}.
class TFPoint {
 public:
  TFPoint(RealVector x, RealVector omega);
  TFPoint(double x, double omega) : TFPoint(RealVector{x}, RealVector{omega}) {}

  std::size_t dimension() const { return x_.size(); }
  const RealVector& x() const { return x_; }
  const RealVector& omega() const { return omega_; }

  friend bool operator==(const TFPoint&, const TFPoint&) = default;

 private:
  RealVector x_;
  RealVector omega_;
};

/// Componentwise difference a - b. Dimensions must agree.
TFPoint operator-(const TFPoint& a, const TFPoint& b);

double distance(const TFPoint& a, const TFPoint& b);

/// Composite trapezoid rule on [-half_width, half_width]^n, `nodes` per axis.
struct QuadratureSpec {
  double half_width = 6.0;
  int nodes = 2048;

  void validate() const;
  double step() const { return 2.0 * half_width / (nodes - 1); }

  /// T = 6 with N = 2048 (n = 1), 256 per axis (n = 2), 64 per axis beyond.
  static QuadratureSpec defaults_for(std::size_t n);

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

/// The spec with the larger half-width and the larger node count.
QuadratureSpec finer(const QuadratureSpec& a, const QuadratureSpec& b);

using Integrand = std::function<complex(std::span<const double>)>;

/// Trapezoid sum over the n-dimensional grid in fixed lexicographic order
/// (last axis fastest), so results are bit-reproducible.
complex integrate(std::size_t n, const QuadratureSpec& quad, const Integrand& integrand);

enum class WindowKind { gaussian, hermite, tabulated };

/// A square-integrable function on R^n that can be evaluated anywhere.
///
/// Windows are immutable values; `scaled`, `reflected` and `normalized`
/// return new windows. The L2 norm is computed once, by the window's own
/// quadrature rule, at construction.
class Window {
 public:
  /// e^{-(pi/2)|t|^2} on R^n, unit L2 norm.
  static Window gaussian(std::size_t n = 1);
  static Window gaussian(std::size_t n, QuadratureSpec quad);

  /// L2-normalized Hermite function of the given order, dilated so that
  /// order 0 is exactly the Gaussian above. For n > 1 the order applies to
  /// the first axis and the remaining axes carry the Gaussian.
  static Window hermite(int order, std::size_t n = 1);

  /// One-dimensional window sampled uniformly on [t_min, t_max]; linear
  /// interpolation in between and zero outside the table.
  static Window tabulated(double t_min, double t_max, std::vector<complex> samples);
  static Window tabulated(double t_min, double t_max, std::vector<complex> samples,
                          QuadratureSpec quad);

  complex operator()(std::span<const double> t) const;
  complex operator()(double t) const;

  std::size_t dimension() const { return dimension_; }
  WindowKind kind() const { return kind_; }
  int order() const { return order_; }
  const QuadratureSpec& quadrature() const { return quad_; }
  double norm_l2() const { return norm_; }
  const std::string& label() const { return label_; }

  /// True for the unscaled Gaussian, where closed-form kernels apply.
  bool is_standard_gaussian() const;

  Window scaled(complex factor) const;
  /// t -> g(-t).
  Window reflected() const;
  Window with_quadrature(QuadratureSpec quad) const;
  /// Rescaled to unit L2 norm; throws AdmissibilityError for a zero window.
  Window normalized() const;

 private:
  using Evaluator = std::function<complex(std::span<const double>)>;

  Window(WindowKind kind, std::size_t dimension, int order, std::string label,
         QuadratureSpec quad, Evaluator base);
  void compute_norm();

  WindowKind kind_;
  std::size_t dimension_;
  int order_ = 0;
  std::string label_;
  QuadratureSpec quad_;
  Evaluator base_;
  complex scale_{1.0, 0.0};
  bool reflected_ = false;
  double norm_ = 0.0;
};

/// Admissible means |norm_l2 - 1| <= kAdmissibleTolerance.
inline constexpr double kAdmissibleTolerance = 1e-8;
/// Windows this close to unit norm are silently rescaled by require_admissible.
inline constexpr double kRescaleTolerance = 1e-3;

bool is_admissible(const Window& g);

/// Returns g itself when admissible, a rescaled copy when within
/// kRescaleTolerance of unit norm, and throws AdmissibilityError otherwise.
Window require_admissible(const Window& g);

/// V_g f(x, omega) = int f(t) conj(g(t - x)) e^{-2 pi i t.omega} dt, by the
/// finer of the two windows' quadrature rules.
complex stft_eval(const Window& f, const Window& g, const TFPoint& p);

/// V_g g(x, omega) = e^{-pi i x.omega} e^{-(pi/4)|x|^2} e^{-pi|omega|^2} for
/// the standard n-dimensional Gaussian.
complex gaussian_stft_closed_form(std::size_t n, const TFPoint& p);

/// Value at `at` of the point kernel V_g(M_omega T_x g) centered at
/// (x, omega) = center:
///   e^{-2 pi i x_c.(omega_a - omega_c)} V_g g(x_a - x_c, omega_a - omega_c).
/// Closed form for the standard Gaussian, quadrature otherwise. Throws
/// AdmissibilityError unless g is admissible.
complex point_kernel_eval(const Window& g, const TFPoint& center, const TFPoint& at);

/// Wg(x, omega) = 2^n e^{4 pi i x.omega} V_{I(g)} g(2x, 2omega), I(g)(t) = g(-t).
complex wigner_eval(const Window& g, const TFPoint& p);

/// Wavelet transform of the Schroedinger representation of the reduced
/// Heisenberg group: e^{-2 pi i tau} e^{pi i x.omega} V_g f(x, omega).
complex heisenberg_wavelet_eval(const Window& g, const Window& f, const RealVector& x,
                                const RealVector& omega, double tau);

}  // namespace wavespace::tf
