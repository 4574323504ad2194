#pragma once

// Finite groups with probability Haar measure, their unitary irreducible
// representations, and exact checks of wavelet-space structure:
// orthogonality relations, rigidity of wavelet spaces, positive-type and
// convexity statements, tensor products, and Peter-Weyl completeness.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wavespace/linalg.hpp"

namespace wavespace::finite {

using complex = std::complex<double>;
using linalg::Matrix;
using linalg::Vector;

/// A finite group given by its multiplication table. Element 0 need not be
/// the identity; identity and inverses are derived and validated.
class FiniteGroup {
 public:
  FiniteGroup(std::string name, std::vector<std::vector<int>> table);

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[std::size_t(a)][std::size_t(b)]; }
  int inv(int a) const { return inverse_[std::size_t(a)]; }
  int identity() const { return identity_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

struct GroupSpec {
  enum class Family { cyclic, dihedral, finite_heisenberg };
  Family family;
  int parameter;

  /// "cyclic:6", "dihedral:4", "heisenberg:3" (also "finite_heisenberg:3").
  static GroupSpec parse(std::string_view text);
  std::string to_string() const;
};

FiniteGroup cyclic_group(int n);
/// Symmetries of the regular n-gon, order 2n; element r^k s^e has index k + n e.
FiniteGroup dihedral_group(int n);
/// Upper unitriangular 3x3 matrices over Z/p, order p^3; (a, b, c) has
/// index a p^2 + b p + c and (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
FiniteGroup finite_heisenberg_group(int p);
FiniteGroup build_group(const GroupSpec& spec);
/// G x H with (a, b) at index a |H| + b.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// A homomorphism x -> matrices[x] into d x d unitaries.
class UnitaryRep {
 public:
  UnitaryRep(FiniteGroup group, std::vector<Matrix> matrices);

  const FiniteGroup& group() const { return group_; }
  int dim() const { return static_cast<int>(matrices_.front().rows()); }
  const Matrix& operator()(int x) const { return matrices_[std::size_t(x)]; }

  /// max over pairs of |pi(xy) - pi(x) pi(y)|.
  double homomorphism_defect() const;
  /// max over x of |pi(x)^* pi(x) - I|.
  double unitarity_defect() const;
  /// chi(x) = trace pi(x).
  Vector character() const;

 private:
  FiniteGroup group_;
  std::vector<Matrix> matrices_;
};

/// Dimension of {X : X pi(x) = pi(x) X for all x}; 1 iff pi is irreducible.
int commutant_dimension(const UnitaryRep& rep);

/// One representative per equivalence class of irreducible unitary
/// representations, extracted from the left regular representation.
/// Requires |G| <= 64.
std::vector<UnitaryRep> decompose_regular(const FiniteGroup& g);

/// <F1, F2> = (1/|G|) sum_x F1(x) conj(F2(x)).
complex haar_inner(const Vector& f1, const Vector& f2);
double haar_norm(const Vector& f);

/// (L_y F)(x) = F(y^{-1} x).
Vector left_translate(const FiniteGroup& g, const Vector& f, int y);
/// (F * K)(x) = (1/|G|) sum_y F(y) K(y^{-1} x).
Vector convolve(const FiniteGroup& g, const Vector& f, const Vector& k);

/// Admissible vectors have norm sqrt(d_pi) under probability Haar measure.
Vector admissible_rescale(const UnitaryRep& rep, const Vector& g);
bool is_admissible(const UnitaryRep& rep, const Vector& g, double tol = 1e-10);

struct WaveletVector {
  Vector values;  // values(x) = <f, pi(x) g>
  Vector window;
  Vector analyzed;
};

WaveletVector wavelet_transform(const UnitaryRep& rep, const Vector& g, const Vector& f);

struct WaveletSubspace {
  /// |G| x d, columns orthonormal under the probability-Haar inner product.
  Matrix basis;
  /// The window was not admissible and has been rescaled.
  bool rescaled = false;

  int dim() const { return static_cast<int>(basis.cols()); }
};

WaveletSubspace wavelet_subspace(const UnitaryRep& rep, const Vector& g);

inline constexpr double kAngleTolerance = 1e-9;
inline constexpr double kIntertwinerTolerance = 1e-9;

struct RigidityResult {
  /// Cosines of the principal angles, descending.
  std::vector<double> cosines;
  int intersection_dim = 0;
  bool equal = false;
  /// Unitary T with T pi(x) g = rho(x) h, present when the spaces coincide.
  std::optional<Matrix> intertwiner;
  /// max over x of |T pi(x) - rho(x) T|; zero when no intertwiner.
  double intertwining_residual = 0.0;
};

/// Compares W_g(H_pi) and W_h(H_rho). A nonzero intersection that is not
/// equality, or an intertwiner that fails verification, throws
/// InvariantViolation.
RigidityResult rigidity_check(const UnitaryRep& pi, const UnitaryRep& rho, const Vector& g, const Vector& h);

/// M(i, j) = phi(x_j^{-1} x_i) over all of G.
Matrix positive_type_matrix(const FiniteGroup& g, const Vector& phi);

struct ConvexityResult {
  double second_singular_value = 0.0;
  /// D = t g1 (x) g1 + (1 - t) g2 (x) g2 has rank one.
  bool rank_one = false;
  /// max_x |t W_{g1}g1 + (1-t) W_{g2}g2 - W_g g|.
  double deviation = 0.0;
  /// The combination equals W_g g although D has rank > 1. Never expected.
  bool is_extreme_violation = false;
};

ConvexityResult convexity_check(const UnitaryRep& rep, const Vector& g, const Vector& g1, const Vector& g2,
                                double t);

UnitaryRep tensor_product_rep(const UnitaryRep& pi, const UnitaryRep& rho);

/// max over (x, y) of |W_{g(x)h}(g(x)h)(x, y) - W_g g(x) W_h h(y)|.
/// Requires |G| |H| <= 256.
double tensor_product_check(const UnitaryRep& pi, const UnitaryRep& rho, const Vector& g, const Vector& h);

struct CompletenessResult {
  int span_dim = 0;
  int order = 0;
  bool complete = false;
};

/// Rank of all wavelet vectors W_{e_a} e_b over all irreducibles.
CompletenessResult peter_weyl_completeness(const FiniteGroup& g);

struct InterpolationFailure {
  std::vector<int> elements;
  Matrix gram;  // (i, j) = <pi(x_j) g, pi(x_i) g>
  double min_eig = 0.0;
  double max_eig = 0.0;
  /// m > d_pi, so the Gram matrix has rank at most d_pi < m.
  bool rank_bound_applies = false;
};

InterpolationFailure interpolation_failure_demo(const UnitaryRep& rep, const Vector& g,
                                                const std::vector<int>& elements);
/// Random admissible window and m distinct random elements.
InterpolationFailure interpolation_failure_demo(const UnitaryRep& rep, int m, std::mt19937_64& rng);

/// Standard complex Gaussian entries.
Vector random_vector(int d, std::mt19937_64& rng);

}  // namespace wavespace::finite
