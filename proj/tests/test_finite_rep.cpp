#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wavespace/errors.hpp"
#include "wavespace/finite_rep.hpp"

using namespace wavespace;
using namespace wavespace::finite;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<int> dims(const std::vector<UnitaryRep>& reps) {
  std::vector<int> d;
  for (const auto& r : reps) d.push_back(r.dim());
  return d;
}

UnitaryRep largest(const std::vector<UnitaryRep>& reps) {
  return *std::max_element(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.dim() < b.dim(); });
}

// Matrix coefficient x -> pi(x)(i, j) as a function on G.
Vector coefficient(const UnitaryRep& pi, int i, int j) {
  Vector f(pi.group().order());
  for (int x = 0; x < pi.group().order(); ++x) f(x) = pi(x)(i, j);
  return f;
}

}  // namespace

TEST_CASE("group construction") {
  CHECK(cyclic_group(1).order() == 1);
  CHECK(dihedral_group(4).order() == 8);
  CHECK(finite_heisenberg_group(3).order() == 27);
  CHECK_THROWS(finite_heisenberg_group(4));
  CHECK_THROWS(FiniteGroup("bad", {{0, 1}, {0, 1}}));

  const auto d4 = dihedral_group(4);
  // r^4 = 1, s^2 = 1, s r s = r^{-1}
  const int r = 1, s = 4;
  CHECK(d4.mul(d4.mul(r, r), d4.mul(r, r)) == d4.identity());
  CHECK(d4.mul(s, s) == d4.identity());
  CHECK(d4.mul(d4.mul(s, r), s) == d4.inv(r));

  const auto h3 = finite_heisenberg_group(3);
  // (1,0,0)(0,1,0) = (1,1,1) but (0,1,0)(1,0,0) = (1,1,0)
  CHECK(h3.mul(9, 3) == 9 + 3 + 1);
  CHECK(h3.mul(3, 9) == 9 + 3);

  CHECK(direct_product(d4, cyclic_group(3)).order() == 24);
}

TEST_CASE("group spec parsing") {
  CHECK(GroupSpec::parse("dihedral:4").to_string() == "dihedral:4");
  CHECK(GroupSpec::parse("heisenberg:3").family == GroupSpec::Family::finite_heisenberg);
  CHECK(GroupSpec::parse("finite_heisenberg:5").parameter == 5);
  CHECK(build_group(GroupSpec::parse("cyclic:6")).order() == 6);
  CHECK_THROWS(GroupSpec::parse("dihedral"));
  CHECK_THROWS(GroupSpec::parse("klein:4"));
  CHECK_THROWS(GroupSpec::parse("cyclic:x"));
}

TEST_CASE("irreducibles of the cyclic group are its characters") {
  const auto reps = decompose_regular(cyclic_group(6));
  REQUIRE(reps.size() == 6);
  std::vector<bool> seen(6, false);
  for (const auto& r : reps) {
    REQUIRE(r.dim() == 1);
    // match against e^{2 pi i k x / 6}
    for (int k = 0; k < 6; ++k) {
      double err = 0.0;
      for (int x = 0; x < 6; ++x) err = std::max(err, std::abs(r(x)(0, 0) - std::polar(1.0, 2 * kPi * k * x / 6)));
      if (err < 1e-12) seen[std::size_t(k)] = true;
    }
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST_CASE("class equation") {
  for (const auto& [spec, expected] :
       {std::pair{"dihedral:4", std::vector<int>{1, 1, 1, 1, 2}},
        {"heisenberg:3", std::vector<int>{1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3}},
        {"dihedral:3", std::vector<int>{1, 1, 2}},
        {"cyclic:1", std::vector<int>{1}}}) {
    const auto g = build_group(GroupSpec::parse(spec));
    const auto reps = decompose_regular(g);
    CHECK(dims(reps) == expected);
    int sum = 0;
    for (const auto& r : reps) {
      sum += r.dim() * r.dim();
      CHECK(r.homomorphism_defect() < 1e-12);
      CHECK(r.unitarity_defect() < 1e-12);
      CHECK(commutant_dimension(r) == 1);
    }
    CHECK(sum == g.order());
  }
}

TEST_CASE("Schur orthogonality of matrix coefficients") {
  const auto reps = decompose_regular(dihedral_group(4));
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = 0; b < reps.size(); ++b) {
      for (int i = 0; i < reps[a].dim(); ++i)
        for (int j = 0; j < reps[a].dim(); ++j)
          for (int k = 0; k < reps[b].dim(); ++k)
            for (int l = 0; l < reps[b].dim(); ++l) {
              const complex ip = haar_inner(coefficient(reps[a], i, j), coefficient(reps[b], k, l));
              const double expected = (a == b && i == k && j == l) ? 1.0 / reps[a].dim() : 0.0;
              CHECK(std::abs(ip - expected) < 1e-12);
            }
    }
  }
}

TEST_CASE("commutant detects reducible representations") {
  const auto reps = decompose_regular(dihedral_group(4));
  std::vector<Matrix> sum;
  const UnitaryRep pi = largest(reps);
  for (int x = 0; x < 8; ++x) {
    Matrix m = Matrix::Zero(3, 3);
    m.topLeftCorner(2, 2) = pi(x);
    m(2, 2) = reps.front()(x)(0, 0);
    sum.push_back(m);
  }
  CHECK(commutant_dimension(UnitaryRep(dihedral_group(4), sum)) == 2);
}

TEST_CASE("admissible vectors") {
  const auto reps = decompose_regular(dihedral_group(4));
  Vector five(1);
  five << 5.0;
  CHECK(std::abs(admissible_rescale(reps.front(), five)(0) - 1.0) < 1e-15);
  std::mt19937_64 rng(1);
  const UnitaryRep pi = largest(reps);
  const Vector g = admissible_rescale(pi, random_vector(2, rng));
  CHECK(std::abs(g.norm() - std::sqrt(2.0)) < 1e-12);
  CHECK(is_admissible(pi, g));
  CHECK_FALSE(is_admissible(pi, g / 2.0));
  CHECK_THROWS(admissible_rescale(pi, Vector::Zero(2)));
}

TEST_CASE("wavelet transform: trivial group, isometry, covariance") {
  const FiniteGroup trivial = cyclic_group(1);
  const UnitaryRep one(trivial, {Matrix::Identity(1, 1)});
  Vector f(1), g(1);
  f << complex(2, 1);
  g << complex(0, 1);
  CHECK(std::abs(wavelet_transform(one, g, f).values(0) - g.dot(f)) < 1e-15);

  std::mt19937_64 rng(7);
  for (const char* spec : {"dihedral:4", "heisenberg:3"}) {
    const auto grp = build_group(GroupSpec::parse(spec));
    const UnitaryRep pi = largest(decompose_regular(grp));
    const int d = pi.dim();
    const Vector w = admissible_rescale(pi, random_vector(d, rng));
    const Vector v = random_vector(d, rng);
    const Vector wf = wavelet_transform(pi, w, v).values;
    // direct definition <v, pi(x) w>
    for (int x = 0; x < grp.order(); ++x) CHECK(std::abs(wf(x) - (pi(x) * w).dot(v)) < 1e-13);
    CHECK(haar_norm(wf) == doctest::Approx(v.norm()).epsilon(1e-12));
    CHECK(wavelet_transform(pi, w, Vector::Zero(d)).values.norm() == 0.0);
    CHECK(wf.norm() > 0.0);
    // W_w(pi(y) v) = L_y W_w v
    for (int y : {1, 5}) {
      const Vector lhs = wavelet_transform(pi, w, pi(y) * v).values;
      CHECK((lhs - left_translate(grp, wf, y)).cwiseAbs().maxCoeff() < 1e-13);
    }
    // reproducing formula: F * W_w w = F on the wavelet space
    const Vector kernel = wavelet_transform(pi, w, w).values;
    CHECK((convolve(grp, wf, kernel) - wf).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("wavelet subspaces") {
  const auto grp = cyclic_group(5);
  for (const auto& chi : decompose_regular(grp)) {
    Vector one(1);
    one << 1.0;
    const auto s = wavelet_subspace(chi, one);
    REQUIRE(s.dim() == 1);
    Vector conj_chi(5);
    for (int x = 0; x < 5; ++x) conj_chi(x) = std::conj(chi(x)(0, 0));
    // spanned by the conjugate character
    CHECK(std::abs(std::abs(haar_inner(s.basis.col(0), conj_chi)) - 1.0) < 1e-12);
  }
  std::mt19937_64 rng(2);
  const UnitaryRep pi = largest(decompose_regular(dihedral_group(4)));
  const auto s = wavelet_subspace(pi, admissible_rescale(pi, random_vector(2, rng)));
  CHECK(s.dim() == 2);
  CHECK_FALSE(s.rescaled);
  const Matrix gram = s.basis.adjoint() * s.basis / 8.0;
  CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(wavelet_subspace(pi, random_vector(2, rng) * 3.0).rescaled);
}

TEST_CASE("rigidity") {
  std::mt19937_64 rng(13);
  const auto grp = dihedral_group(4);
  const auto reps = decompose_regular(grp);
  const UnitaryRep pi = largest(reps);
  const Vector g = admissible_rescale(pi, random_vector(2, rng));

  const complex c = std::polar(1.0, 0.83);
  const auto same = rigidity_check(pi, pi, g, c * g);
  CHECK(same.intersection_dim == 2);
  CHECK(same.equal);
  REQUIRE(same.intertwiner);
  CHECK((*same.intertwiner - c * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(same.intertwining_residual <= kIntertwinerTolerance);

  for (int t = 0; t < 20; ++t) {
    const Vector h = admissible_rescale(pi, random_vector(2, rng));
    const auto r = rigidity_check(pi, pi, g, h);
    CHECK(r.intersection_dim == 0);
    CHECK_FALSE(r.intertwiner);
  }

  // inequivalent: the subspaces are orthogonal
  const auto& chi = reps[1];
  Vector one(1);
  one << 1.0;
  const auto r = rigidity_check(pi, chi, g, one);
  CHECK(r.intersection_dim == 0);
  const auto a = wavelet_subspace(pi, g).basis, b = wavelet_subspace(chi, one).basis;
  CHECK((a.adjoint() * b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("functions of positive type") {
  std::mt19937_64 rng(21);
  const auto grp = finite_heisenberg_group(3);
  const auto reps = decompose_regular(grp);
  const UnitaryRep pi = largest(reps);
  const Vector g = admissible_rescale(pi, random_vector(3, rng));
  const Vector h = admissible_rescale(pi, random_vector(3, rng));
  const Vector wg = wavelet_transform(pi, g, g).values, wh = wavelet_transform(pi, h, h).values;

  const Matrix m = positive_type_matrix(grp, wg);
  CHECK(linalg::hermitian_defect(m) < 1e-13);
  CHECK(linalg::hermitian_spectrum(m).min() > -1e-10);
  // M(i, j) = phi(x_j^{-1} x_i)
  CHECK(std::abs(m(4, 7) - wg(grp.mul(grp.inv(7), 4))) < 1e-15);

  const Vector phi = wg - wh;
  REQUIRE(phi.cwiseAbs().maxCoeff() > 1e-6);
  CHECK(linalg::hermitian_spectrum(positive_type_matrix(grp, phi)).min() <= -1e-8);
  CHECK(positive_type_matrix(grp, Vector::Zero(27)).norm() == 0.0);
}

TEST_CASE("convex combinations") {
  std::mt19937_64 rng(4);
  const UnitaryRep pi = largest(decompose_regular(dihedral_group(4)));
  const Vector g1 = admissible_rescale(pi, random_vector(2, rng));
  Vector g2(2);
  g2 << -std::conj(g1(1)), std::conj(g1(0));  // orthogonal, same norm
  REQUIRE(std::abs(g1.dot(g2)) < 1e-14);

  CHECK(convexity_check(pi, g1, g1, g2, 1.0).second_singular_value < 1e-14);
  const auto orth = convexity_check(pi, g1, g1, g2, 0.5);
  CHECK(orth.second_singular_value == doctest::Approx(0.5 * g2.squaredNorm()).epsilon(1e-12));
  CHECK_FALSE(orth.rank_one);
  CHECK_FALSE(orth.is_extreme_violation);
  CHECK(orth.deviation > 1e-3);

  const auto col = convexity_check(pi, g1, g1, std::polar(1.0, 2.1) * g1, 0.5);
  CHECK(col.second_singular_value <= 1e-10);
  CHECK(col.rank_one);
  CHECK(col.deviation <= 1e-12);
}

TEST_CASE("tensor products") {
  std::mt19937_64 rng(6);
  const UnitaryRep t1(cyclic_group(1), {Matrix::Identity(1, 1)});
  Vector one(1);
  one << 1.0;
  CHECK(tensor_product_check(t1, t1, one, one) == 0.0);

  for (const auto& a : decompose_regular(cyclic_group(3)))
    for (const auto& b : decompose_regular(cyclic_group(2))) CHECK(tensor_product_check(a, b, one, one) <= 1e-14);

  const UnitaryRep pi = largest(decompose_regular(dihedral_group(4)));
  const Vector g = admissible_rescale(pi, random_vector(2, rng));
  for (const auto& chi : decompose_regular(cyclic_group(3))) {
    CHECK(tensor_product_check(pi, chi, g, one) <= 1e-12);
    const auto t = tensor_product_rep(pi, chi);
    CHECK(t.homomorphism_defect() < 1e-13);
    CHECK(commutant_dimension(t) == 1);
  }
}

TEST_CASE("Peter-Weyl completeness") {
  for (const auto& [spec, n] : {std::pair{"cyclic:6", 6}, {"dihedral:4", 8}, {"heisenberg:3", 27}}) {
    const auto r = peter_weyl_completeness(build_group(GroupSpec::parse(spec)));
    CHECK(r.span_dim == n);
    CHECK(r.order == n);
    CHECK(r.complete);
  }
}

TEST_CASE("interpolation fails on finite groups") {
  Vector one(1);
  one << 1.0;
  const auto chi = decompose_regular(cyclic_group(4))[1];
  const auto f1 = interpolation_failure_demo(chi, one, {0, 1});
  CHECK(std::abs(f1.min_eig) < 1e-12);
  CHECK(f1.rank_bound_applies);

  std::mt19937_64 rng(10);
  const UnitaryRep pi = largest(decompose_regular(dihedral_group(4)));
  const auto f = interpolation_failure_demo(pi, 5, rng);
  CHECK(f.elements.size() == 5u);
  CHECK(std::abs(f.min_eig) <= 1e-10);
  CHECK(linalg::numerical_rank(f.gram, 1e-10) <= 2);
  CHECK(linalg::hermitian_defect(f.gram) < 1e-13);

  // m = d: generic elements, reported without a claim
  const auto g2 = interpolation_failure_demo(pi, 2, rng);
  CHECK_FALSE(g2.rank_bound_applies);
}
