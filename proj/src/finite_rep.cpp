#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wavespace/errors.hpp"
#include "wavespace/finite_rep.hpp"

namespace wavespace::finite {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return k;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector k(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) k.segment(i * b.size(), b.size()) = a(i) * b;
  return k;
}

void require_dim(const UnitaryRep& rep, const Vector& v, const char* what) {
  if (v.size() != rep.dim()) {
    throw DimensionError(std::string(what) + ": vector of length " + std::to_string(v.size()) +
                         " for a representation of dimension " + std::to_string(rep.dim()));
  }
}

}  // namespace

UnitaryRep::UnitaryRep(FiniteGroup group, std::vector<Matrix> matrices)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  if (static_cast<int>(matrices_.size()) != group_.order()) {
    throw DimensionError("UnitaryRep: need one matrix per group element");
  }
  const auto d = matrices_.front().rows();
  for (const auto& m : matrices_) {
    if (m.rows() != d || m.cols() != d || d == 0) throw DimensionError("UnitaryRep: matrices must be d x d");
  }
}

double UnitaryRep::homomorphism_defect() const {
  double worst = 0.0;
  const int n = group_.order();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const Matrix diff = (*this)(group_.mul(x, y)) - (*this)(x) * (*this)(y);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double UnitaryRep::unitarity_defect() const {
  double worst = 0.0;
  const Matrix id = Matrix::Identity(dim(), dim());
  for (const auto& m : matrices_) worst = std::max(worst, (m.adjoint() * m - id).cwiseAbs().maxCoeff());
  return worst;
}

Vector UnitaryRep::character() const {
  Vector chi(group_.order());
  for (int x = 0; x < group_.order(); ++x) chi(x) = (*this)(x).trace();
  return chi;
}

int commutant_dimension(const UnitaryRep& rep) {
  // vec(X pi - pi X) = (pi^T (x) I - I (x) pi) vec(X); accumulate the normal
  // equations so the system stays d^2 x d^2.
  const int d = rep.dim();
  const Matrix id = Matrix::Identity(d, d);
  Matrix normal = Matrix::Zero(d * d, d * d);
  for (int x = 0; x < rep.group().order(); ++x) {
    const Matrix s = kron(rep(x).transpose(), id) - kron(id, rep(x));
    normal += s.adjoint() * s;
  }
  const auto spectrum = linalg::hermitian_spectrum(normal);
  const double cutoff = 1e-9 * std::max(1.0, spectrum.max());
  return static_cast<int>(std::count_if(spectrum.values.begin(), spectrum.values.end(),
                                        [&](double v) { return v < cutoff; }));
}

std::vector<UnitaryRep> decompose_regular(const FiniteGroup& g) {
  const int n = g.order();
  if (n > 64) throw std::invalid_argument("decompose_regular: |G| must be at most 64");

  std::vector<UnitaryRep> irreps;
  std::vector<Vector> characters;
  int accounted = 0;
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> normal;

  for (int attempt = 0; attempt < 16 && accounted < n; ++attempt) {
    // A generic Hermitian element of the right group algebra commutes with the
    // left regular representation; its eigenspaces are irreducible L-invariant
    // subspaces.
    std::vector<complex> c(std::size_t(n), 0.0);
    for (int y = 0; y < n; ++y) {
      const int yi = g.inv(y);
      if (y == yi) {
        c[std::size_t(y)] = normal(rng);
      } else if (y < yi) {
        c[std::size_t(y)] = complex(normal(rng), normal(rng));
        c[std::size_t(yi)] = std::conj(c[std::size_t(y)]);
      }
    }
    Matrix a = Matrix::Zero(n, n);
    for (int y = 0; y < n; ++y) {
      const int yi = g.inv(y);
      for (int j = 0; j < n; ++j) a(g.mul(j, yi), j) += c[std::size_t(y)];
    }
    const auto spectrum = linalg::hermitian_spectrum(a);
    const double scale = std::max(1.0, spectrum.values.cwiseAbs().maxCoeff());

    Eigen::Index start = 0;
    while (start < n) {
      Eigen::Index stop = start + 1;
      while (stop < n && spectrum.values(stop) - spectrum.values(stop - 1) < 1e-8 * scale) ++stop;
      const Matrix q = spectrum.vectors.middleCols(start, stop - start);
      start = stop;

      std::vector<Matrix> mats;
      mats.reserve(std::size_t(n));
      for (int x = 0; x < n; ++x) {
        Matrix lq(n, q.cols());
        for (int i = 0; i < n; ++i) lq.row(i) = q.row(g.mul(g.inv(x), i));
        mats.push_back(q.adjoint() * lq);
      }
      UnitaryRep rep(g, std::move(mats));
      if (commutant_dimension(rep) != 1) continue;
      const Vector chi = rep.character();
      const bool seen = std::any_of(characters.begin(), characters.end(), [&](const Vector& other) {
        return (other - chi).cwiseAbs().maxCoeff() < 1e-6;
      });
      if (seen) continue;
      accounted += rep.dim() * rep.dim();
      characters.push_back(chi);
      irreps.push_back(std::move(rep));
    }
  }
  if (accounted != n) {
    throw std::runtime_error("decompose_regular: failed to separate the irreducibles of " + g.name());
  }
  std::stable_sort(irreps.begin(), irreps.end(), [](const UnitaryRep& a, const UnitaryRep& b) {
    return a.dim() < b.dim();
  });
  return irreps;
}

complex haar_inner(const Vector& f1, const Vector& f2) {
  if (f1.size() != f2.size()) throw DimensionError("haar_inner: length mismatch");
  return f2.dot(f1) / double(f1.size());
}

double haar_norm(const Vector& f) { return std::sqrt(std::max(0.0, haar_inner(f, f).real())); }

Vector left_translate(const FiniteGroup& g, const Vector& f, int y) {
  Vector out(g.order());
  for (int x = 0; x < g.order(); ++x) out(x) = f(g.mul(g.inv(y), x));
  return out;
}

Vector convolve(const FiniteGroup& g, const Vector& f, const Vector& k) {
  const int n = g.order();
  if (f.size() != n || k.size() != n) throw DimensionError("convolve: length mismatch");
  Vector out = Vector::Zero(n);
  for (int x = 0; x < n; ++x) {
    complex s = 0.0;
    for (int y = 0; y < n; ++y) s += f(y) * k(g.mul(g.inv(y), x));
    out(x) = s / double(n);
  }
  return out;
}

Vector admissible_rescale(const UnitaryRep& rep, const Vector& g) {
  require_dim(rep, g, "admissible_rescale");
  const double norm = g.norm();
  if (norm == 0.0) throw AdmissibilityError("admissible_rescale: zero vector");
  return g * (std::sqrt(double(rep.dim())) / norm);
}

bool is_admissible(const UnitaryRep& rep, const Vector& g, double tol) {
  return g.size() == rep.dim() && std::abs(g.norm() - std::sqrt(double(rep.dim()))) <= tol;
}

WaveletVector wavelet_transform(const UnitaryRep& rep, const Vector& g, const Vector& f) {
  require_dim(rep, g, "wavelet_transform window");
  require_dim(rep, f, "wavelet_transform argument");
  Vector values(rep.group().order());
  for (int x = 0; x < rep.group().order(); ++x) values(x) = (rep(x) * g).dot(f);
  return {std::move(values), g, f};
}

WaveletSubspace wavelet_subspace(const UnitaryRep& rep, const Vector& g) {
  require_dim(rep, g, "wavelet_subspace");
  WaveletSubspace out;
  Vector w = g;
  if (!is_admissible(rep, g)) {
    w = admissible_rescale(rep, g);
    out.rescaled = true;
  }
  const int n = rep.group().order();
  const int d = rep.dim();
  Matrix images(n, d);
  for (int k = 0; k < d; ++k) images.col(k) = wavelet_transform(rep, w, Vector::Unit(d, k)).values;
  // Orthonormalize in the probability-Haar inner product.
  const double root = std::sqrt(double(n));
  Eigen::HouseholderQR<Matrix> qr(images / root);
  out.basis = (qr.householderQ() * Matrix::Identity(n, d)) * root;
  return out;
}

RigidityResult rigidity_check(const UnitaryRep& pi, const UnitaryRep& rho, const Vector& g, const Vector& h) {
  if (pi.group().order() != rho.group().order()) throw DimensionError("rigidity_check: different groups");
  const WaveletSubspace u = wavelet_subspace(pi, g);
  const WaveletSubspace v = wavelet_subspace(rho, h);
  const int n = pi.group().order();

  const Matrix overlap = u.basis.adjoint() * v.basis / double(n);
  Eigen::JacobiSVD<Matrix> svd(overlap);
  RigidityResult r;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) r.cosines.push_back(svd.singularValues()(k));
  r.intersection_dim = static_cast<int>(
      std::count_if(r.cosines.begin(), r.cosines.end(), [](double c) { return c >= 1.0 - kAngleTolerance; }));
  r.equal = r.intersection_dim == u.dim() && r.intersection_dim == v.dim();
  if (r.intersection_dim == 0) return r;
  if (!r.equal) {
    throw InvariantViolation("wavelet spaces intersect in dimension " + std::to_string(r.intersection_dim) +
                             " without being equal");
  }

  // T is fixed by T pi(x) g = rho(x) h on the spanning family {pi(x) g}.
  const Vector gw = u.rescaled ? admissible_rescale(pi, g) : g;
  const Vector hw = v.rescaled ? admissible_rescale(rho, h) : h;
  const int d = pi.dim();
  Matrix source(d, n), target(d, n);
  for (int x = 0; x < n; ++x) {
    source.col(x) = pi(x) * gw;
    target.col(x) = rho(x) * hw;
  }
  const Matrix gram = source * source.adjoint();
  const Matrix t = target * source.adjoint() * gram.inverse();

  const double fit = (t * source - target).cwiseAbs().maxCoeff();
  const double unitarity = (t.adjoint() * t - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  double residual = 0.0;
  for (int x = 0; x < n; ++x) residual = std::max(residual, (t * pi(x) - rho(x) * t).cwiseAbs().maxCoeff());
  if (fit > kIntertwinerTolerance || unitarity > kIntertwinerTolerance || residual > kIntertwinerTolerance) {
    throw InvariantViolation("equal wavelet spaces but the constructed map is not a unitary intertwiner");
  }
  r.intertwiner = t;
  r.intertwining_residual = residual;
  return r;
}

Matrix positive_type_matrix(const FiniteGroup& g, const Vector& phi) {
  const int n = g.order();
  if (phi.size() != n) throw DimensionError("positive_type_matrix: phi must be defined on every element");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = phi(g.mul(g.inv(j), i));
  }
  return m;
}

ConvexityResult convexity_check(const UnitaryRep& rep, const Vector& g, const Vector& g1, const Vector& g2,
                                double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("convexity_check: t must lie in [0, 1]");
  require_dim(rep, g, "convexity_check g");
  require_dim(rep, g1, "convexity_check g1");
  require_dim(rep, g2, "convexity_check g2");

  const Matrix d = t * g1 * g1.adjoint() + (1.0 - t) * g2 * g2.adjoint();
  const auto spectrum = linalg::hermitian_spectrum(d);
  const auto k = spectrum.values.size();
  ConvexityResult r;
  // D is positive semi-definite, so its singular values are its eigenvalues.
  r.second_singular_value = k >= 2 ? std::max(0.0, spectrum.values(k - 2)) : 0.0;
  r.rank_one = r.second_singular_value <= 1e-10;

  const Vector mix = t * wavelet_transform(rep, g1, g1).values + (1.0 - t) * wavelet_transform(rep, g2, g2).values;
  r.deviation = (mix - wavelet_transform(rep, g, g).values).cwiseAbs().maxCoeff();
  r.is_extreme_violation = r.deviation <= 1e-10 && !r.rank_one;
  return r;
}

UnitaryRep tensor_product_rep(const UnitaryRep& pi, const UnitaryRep& rho) {
  FiniteGroup product = direct_product(pi.group(), rho.group());
  const int nh = rho.group().order();
  std::vector<Matrix> mats;
  mats.reserve(std::size_t(product.order()));
  for (int x = 0; x < product.order(); ++x) mats.push_back(kron(pi(x / nh), rho(x % nh)));
  return UnitaryRep(std::move(product), std::move(mats));
}

double tensor_product_check(const UnitaryRep& pi, const UnitaryRep& rho, const Vector& g, const Vector& h) {
  if (pi.group().order() * rho.group().order() > 256) {
    throw std::invalid_argument("tensor_product_check: |G||H| must be at most 256");
  }
  const UnitaryRep both = tensor_product_rep(pi, rho);
  const Vector gh = kron(g, h);
  const Vector joint = wavelet_transform(both, gh, gh).values;
  const Vector wg = wavelet_transform(pi, g, g).values;
  const Vector wh = wavelet_transform(rho, h, h).values;
  const int nh = rho.group().order();
  double worst = 0.0;
  for (int x = 0; x < both.group().order(); ++x) {
    worst = std::max(worst, std::abs(joint(x) - wg(x / nh) * wh(x % nh)));
  }
  return worst;
}

CompletenessResult peter_weyl_completeness(const FiniteGroup& g) {
  const auto irreps = decompose_regular(g);
  const int n = g.order();
  std::vector<Vector> columns;
  for (const auto& rep : irreps) {
    const int d = rep.dim();
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        columns.push_back(wavelet_transform(rep, Vector::Unit(d, a), Vector::Unit(d, b)).values);
      }
    }
  }
  Matrix stacked(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) stacked.col(Eigen::Index(k)) = columns[k];
  CompletenessResult r;
  r.order = n;
  r.span_dim = static_cast<int>(linalg::numerical_rank(stacked, 1e-9));
  r.complete = r.span_dim == n;
  return r;
}

InterpolationFailure interpolation_failure_demo(const UnitaryRep& rep, const Vector& g,
                                                const std::vector<int>& elements) {
  const int n = rep.group().order();
  const auto m = static_cast<int>(elements.size());
  if (m < 1) throw std::invalid_argument("interpolation_failure_demo: need at least one element");
  if (m > n) throw std::invalid_argument("interpolation_failure_demo: m exceeds |G|");
  std::vector<int> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 || sorted.back() >= n) {
    throw std::invalid_argument("interpolation_failure_demo: elements must be distinct group elements");
  }
  const Vector w = admissible_rescale(rep, g);
  InterpolationFailure r;
  r.elements = elements;
  r.gram.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const Vector vi = rep(elements[std::size_t(i)]) * w;
    for (int j = 0; j < m; ++j) r.gram(i, j) = vi.dot(rep(elements[std::size_t(j)]) * w);
  }
  const auto spectrum = linalg::hermitian_spectrum(r.gram);
  r.min_eig = spectrum.min();
  r.max_eig = spectrum.max();
  r.rank_bound_applies = m > rep.dim();
  return r;
}

InterpolationFailure interpolation_failure_demo(const UnitaryRep& rep, int m, std::mt19937_64& rng) {
  const int n = rep.group().order();
  if (m > n) throw std::invalid_argument("interpolation_failure_demo: m exceeds |G|");
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::size_t(std::max(m, 0)));
  return interpolation_failure_demo(rep, random_vector(rep.dim(), rng), all);
}

Vector random_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(d);
  for (int k = 0; k < d; ++k) v(k) = complex(normal(rng), normal(rng));
  return v;
}

}  // namespace wavespace::finite
