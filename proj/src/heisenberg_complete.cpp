#include "wavespace/heisenberg_complete.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wavespace/errors.hpp"

namespace wavespace::heisenberg {

namespace {

complex unit_phase(double turns) { return std::polar(1.0, 2.0 * tf::kPi * turns); }

double dot(const RealVector& a, const RealVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

DilatedSchrodingerRep::DilatedSchrodingerRep(int m) : m_(m) {
  if (m == 0) throw std::invalid_argument("dilated Schroedinger representation needs m != 0");
}

complex dilated_wavelet_eval(const DilatedSchrodingerRep& rep, const Window& g, const Window& f,
                             const ReducedHeisenbergPoint& p) {
  const std::size_t n = f.dimension();
  if (g.dimension() != n) throw DimensionError("dilated_wavelet_eval: window dimensions differ");
  const tf::TFPoint point(p.x, p.omega);  // validates finiteness
  if (point.dimension() != n) throw DimensionError("dilated_wavelet_eval: point dimension");
  if (!(p.tau >= 0.0 && p.tau < 1.0)) throw std::invalid_argument("tau must lie in [0, 1)");

  const double m = rep.m();
  const complex central = unit_phase(m * p.tau) * unit_phase(0.5 * m * dot(p.x, p.omega));
  const auto quad = tf::finer(f.quadrature(), g.quadrature());
  // (rho_m(p) g)(t) = central * e^{2 pi i (t - m x).omega} g(t - m x)
  const complex pairing = tf::integrate(n, quad, [&](std::span<const double> t) {
    std::array<double, tf::kMaxDimension> s{};
    double turns = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      s[a] = t[a] - m * p.x[a];
      turns += s[a] * p.omega[a];
    }
    const complex represented = unit_phase(turns) * g(std::span<const double>(s.data(), n));
    return f(t) * std::conj(represented);
  });
  return std::conj(central) * pairing;
}

complex tau_character_mean(int m, int nodes) {
  if (nodes < 1) throw std::invalid_argument("tau_character_mean: need at least one node");
  complex sum = 0.0;
  for (int k = 0; k < nodes; ++k) sum += unit_phase(double(m) * k / nodes);
  return sum / double(nodes);
}

OrthogonalityReport tau_independent_orthogonality(const DilatedSchrodingerRep& rep, const PhaseSpaceFunction& h,
                                                  const Window& g, const Window& f,
                                                  OrthogonalityQuadrature quad) {
  const std::size_t n = f.dimension();
  if (g.dimension() != n) throw DimensionError("tau_independent_orthogonality: window dimensions differ");
  if (2 * n > tf::kMaxDimension) throw DimensionError("tau_independent_orthogonality: phase space too large");
  const int minimum = 8 * std::abs(rep.m());
  const int nodes = quad.tau_nodes == 0 ? minimum : quad.tau_nodes;
  if (nodes < minimum) {
    throw std::invalid_argument("tau quadrature needs at least " + std::to_string(minimum) + " nodes");
  }

  // The central variable acts through the character e^{-2 pi i m tau}, so
  // W_g f is evaluated once per phase-space node.
  const complex inner = tf::integrate(2 * n, quad.phase_space, [&](std::span<const double> z) {
    const RealVector x(z.begin(), z.begin() + long(n));
    const RealVector omega(z.begin() + long(n), z.end());
    const complex base = dilated_wavelet_eval(rep, g, f, {x, omega, 0.0});
    complex acc = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double tau = double(k) / nodes;
      acc += h(x, omega, tau) * std::conj(unit_phase(-rep.m() * tau) * base);
    }
    return acc / double(nodes);
  });
  const complex mass = tf::integrate(2 * n, quad.phase_space, [&](std::span<const double> z) {
    const RealVector x(z.begin(), z.begin() + long(n));
    const RealVector omega(z.begin() + long(n), z.end());
    double sq = 0.0;
    for (int k = 0; k < nodes; ++k) sq += std::norm(h(x, omega, double(k) / nodes));
    return complex(sq / nodes);
  });
  OrthogonalityReport r;
  r.tau_nodes = nodes;
  r.magnitude = std::abs(inner);
  r.h_norm = std::sqrt(mass.real());
  const double scale = r.h_norm * f.norm_l2() * g.norm_l2();
  r.relative = scale > 0.0 ? r.magnitude / scale : 0.0;
  return r;
}

}  // namespace wavespace::heisenberg
