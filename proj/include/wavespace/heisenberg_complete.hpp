#pragma once

// The reduced Heisenberg group is not wavelet complete: functions that do
// not depend on the central variable tau are orthogonal to the wavelet
// spaces of every dilated Schroedinger representation.

#include <functional>

#include "wavespace/tf_gabor.hpp"

namespace wavespace::heisenberg {

using tf::complex;
using tf::RealVector;
using tf::Window;

/// (x, omega, e^{2 pi i tau}) with tau in [0, 1).
struct ReducedHeisenbergPoint {
  RealVector x;
  RealVector omega;
  double tau = 0.0;
};

/// rho_m(x, omega, tau) = e^{2 pi i m tau} e^{pi i m x.omega} T_{mx} M_omega, m != 0.
class DilatedSchrodingerRep {
 public:
  explicit DilatedSchrodingerRep(int m);
  int m() const { return m_; }

 private:
  int m_;
};

/// <f, rho_m(p) g>, computed as a direct quadrature of f against the
/// represented window. Equals e^{-2 pi i m tau} e^{pi i m x.omega} V_g f(mx, omega).
complex dilated_wavelet_eval(const DilatedSchrodingerRep& rep, const Window& g, const Window& f,
                             const ReducedHeisenbergPoint& p);

/// Mean of e^{2 pi i m tau_k} over `nodes` equispaced tau_k = k / nodes.
complex tau_character_mean(int m, int nodes);

using PhaseSpaceFunction = std::function<complex(const RealVector& x, const RealVector& omega, double tau)>;

struct OrthogonalityQuadrature {
  /// Trapezoid rule on the phase-space box [-L, L]^{2n}.
  tf::QuadratureSpec phase_space{6.0, 121};
  /// Equispaced nodes on [0, 1); 0 means 8 |m|.
  int tau_nodes = 0;
};

struct OrthogonalityReport {
  /// |<h, W_g f>| over the truncated box times [0, 1).
  double magnitude = 0.0;
  /// L2 norm of h over the same domain.
  double h_norm = 0.0;
  /// magnitude / (|h| |f| |g|).
  double relative = 0.0;
  int tau_nodes = 0;
};

/// Approximates <h, W_g f> in L2 of the truncated reduced Heisenberg group.
/// Throws std::invalid_argument if tau_nodes < 8 |m|.
OrthogonalityReport tau_independent_orthogonality(const DilatedSchrodingerRep& rep, const PhaseSpaceFunction& h,
                                                  const Window& g, const Window& f,
                                                  OrthogonalityQuadrature quad = {});

}  // namespace wavespace::heisenberg
