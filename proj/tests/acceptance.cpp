// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wavespace/cli.hpp"
#include "wavespace/finite_rep.hpp"
#include "wavespace/heisenberg_complete.hpp"
#include "wavespace/hrt_test.hpp"
#include "wavespace/problem_file.hpp"
#include "wavespace/rkhs_interp.hpp"

using namespace wavespace;
using linalg::Matrix;
using linalg::Vector;
using tf::complex;
using tf::TFPoint;
using tf::Window;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_s <= 0.0 || elapsed < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs", elapsed);
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << o.detail << " (" << timing
            << (in_time ? "" : ", over time limit") << ")" << std::endl;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// Point sets shared by criteria 3, 4 and 12.
std::vector<rkhs::PointSet> random_sets, spaced_sets;

rkhs::PointSet random_set(std::mt19937_64& rng, int m, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  std::vector<TFPoint> pts;
  while (static_cast<int>(pts.size()) < m) {
    TFPoint p(u(rng), u(rng));
    bool fresh = true;
    for (const auto& q : pts) fresh = fresh && !(q == p);
    if (fresh) pts.push_back(std::move(p));
  }
  return rkhs::PointSet(std::move(pts));
}

finite::UnitaryRep largest_irrep(const finite::FiniteGroup& g) {
  auto reps = finite::decompose_regular(g);
  std::size_t best = 0;
  for (std::size_t i = 1; i < reps.size(); ++i)
    if (reps[i].dim() > reps[best].dim()) best = i;
  return reps[best];
}

Outcome three_point_coefficients() {
  std::ostringstream report;
  const int code = cli::cmd_interpolate(problem::template_problem(), std::nullopt, report);
  const double expected[] = {0.6218, 0.7360, 0.9876};
  double alpha[3] = {NAN, NAN, NAN};
  std::istringstream lines(report.str());
  for (std::string line; std::getline(lines, line);) {
    int k;
    double re;
    if (std::sscanf(line.c_str(), "alpha[%d]: %lf", &k, &re) == 2 && k >= 0 && k < 3) alpha[k] = re;
  }
  double err = 0.0;
  for (int k = 0; k < 3; ++k) err = std::isnan(alpha[k]) ? INFINITY : std::max(err, std::abs(alpha[k] - expected[k]));
  return {code == cli::kOk && err <= 5e-4,
          "alpha = (" + num(alpha[0]) + ", " + num(alpha[1]) + ", " + num(alpha[2]) + "), max error " + num(err)};
}

Outcome closed_form_grid() {
  const Window g = Window::gaussian();
  double worst = 0.0;
  for (int i = 0; i < 13; ++i) {
    for (int j = 0; j < 13; ++j) {
      const TFPoint p(-3.0 + 0.5 * i, -3.0 + 0.5 * j);
      worst = std::max(worst, std::abs(tf::stft_eval(g, g, p) - tf::gaussian_stft_closed_form(1, p)));
    }
  }
  return {worst <= 1e-8, "max |quadrature - closed form| = " + num(worst) + " over 13x13"};
}

Outcome gaussian_full_interpolation() {
  std::mt19937_64 rng(3001);
  std::uniform_int_distribution<int> size(1, 8);
  const Window g = Window::gaussian();
  double lowest = INFINITY;
  int bad = 0;
  for (int t = 0; t < 50; ++t) {
    random_sets.push_back(random_set(rng, size(rng), 3.0));
    const auto v = hrt::hrt_verdict(g, random_sets.back());
    lowest = std::min(lowest, v.min_eig);
    if (!v.independent || !(v.min_eig > 1e-6)) ++bad;
  }
  return {bad == 0, "50 sets, " + std::to_string(bad) + " dependent, smallest min_eig " + num(lowest)};
}

Outcome dominance_soundness() {
  std::mt19937_64 rng(3002);
  const Window g = Window::gaussian();
  int bad = 0;
  double margin = INFINITY;
  for (int t = 0; t < 20; ++t) {
    const int m = 2 + t % 7;
    const double r = hrt::spacing_radius(g, m).radius;
    std::uniform_real_distribution<double> u(-3.0 * r, 3.0 * r);
    std::vector<TFPoint> pts;
    while (static_cast<int>(pts.size()) < m) {
      const TFPoint p(u(rng), u(rng));
      bool ok = true;
      for (const auto& q : pts) ok = ok && tf::distance(p, q) >= r;
      if (ok) pts.push_back(p);
    }
    spaced_sets.emplace_back(pts);
    const auto v = hrt::hrt_verdict(g, spaced_sets.back());
    const auto& c = *v.certificate;
    margin = std::min(margin, v.min_eig - (1.0 - c.max_row_sum));
    if (!c.holds || v.min_eig < 1.0 - c.max_row_sum - 1e-9) ++bad;
  }
  return {bad == 0, "20 spaced sets, " + std::to_string(bad) + " violations, min(min_eig - (1 - row sum)) " + num(margin)};
}

Outcome finite_interpolation_failure() {
  const auto pi = largest_irrep(finite::dihedral_group(4));
  std::mt19937_64 rng(3005);
  const auto demo = finite::interpolation_failure_demo(pi, 5, rng);
  const auto spec = linalg::hermitian_spectrum(demo.gram);

  problem::ProblemFile p;
  p.label = "dihedral:4 kernel matrix";
  p.gram = std::vector<std::vector<complex>>(5, std::vector<complex>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) (*p.gram)[std::size_t(i)][std::size_t(j)] = demo.gram(i, j);
  std::vector<complex> lambda;
  for (int i = 0; i < 5; ++i) lambda.push_back(spec.vectors(i, 0));
  p.values = lambda;
  std::ostringstream report;
  const int code = cli::cmd_interpolate(problem::parse_problem(problem::to_json(p)), std::nullopt, report);
  return {pi.dim() == 2 && std::abs(demo.min_eig) <= 1e-10 && code == cli::kInfeasible,
          "d = " + std::to_string(pi.dim()) + ", m = 5, min_eig " + num(demo.min_eig) + ", interpolate exit " +
              std::to_string(code)};
}

Outcome rigidity() {
  std::string detail;
  bool ok = true;
  for (const char* group : {"dihedral:4", "heisenberg:3"}) {
    cli::FiniteOptions o;
    o.group = finite::GroupSpec::parse(group);
    o.demo = "rigidity";
    o.seed = 3006;
    o.trials = 100;
    std::ostringstream report;
    const int code = cli::cmd_finite(o, report);
    ok = ok && code == cli::kOk;
    detail += std::string(detail.empty() ? "" : "; ") + group + " 100 trials exit " + std::to_string(code);
  }
  return {ok, detail};
}

Outcome positive_type() {
  std::mt19937_64 rng(3007);
  int tested = 0, bad = 0;
  double worst = -INFINITY;
  for (const char* group : {"dihedral:4", "heisenberg:3"}) {
    const auto g = finite::build_group(finite::GroupSpec::parse(group));
    const auto reps = finite::decompose_regular(g);
    for (int found = 0; found < 50;) {
      const auto& pi = reps[rng() % reps.size()];
      const auto& rho = reps[rng() % reps.size()];
      const Vector gv = finite::admissible_rescale(pi, finite::random_vector(pi.dim(), rng));
      const Vector hv = finite::admissible_rescale(rho, finite::random_vector(rho.dim(), rng));
      const Vector phi = finite::wavelet_transform(pi, gv, gv).values - finite::wavelet_transform(rho, hv, hv).values;
      if (phi.cwiseAbs().maxCoeff() <= 1e-6) continue;
      ++found;
      ++tested;
      const double low = linalg::hermitian_spectrum(finite::positive_type_matrix(g, phi)).min();
      worst = std::max(worst, low);
      if (low > -1e-8) ++bad;
    }
  }
  return {bad == 0, std::to_string(tested) + " qualifying pairs, largest min eigenvalue " + num(worst)};
}

Outcome convexity() {
  std::mt19937_64 rng(3008);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  double generic = INFINITY, colinear = 0.0;
  int pairs = 0;
  for (const char* group : {"dihedral:4", "heisenberg:3"}) {
    const auto pi = largest_irrep(finite::build_group(finite::GroupSpec::parse(group)));
    const int d = pi.dim();
    for (int t = 0; t < 25; ++t, ++pairs) {
      const Vector g1 = finite::admissible_rescale(pi, finite::random_vector(d, rng));
      Vector g2 = finite::admissible_rescale(pi, finite::random_vector(d, rng));
      while (std::abs(g1.dot(g2)) >= 0.99 * g1.norm() * g2.norm())
        g2 = finite::admissible_rescale(pi, finite::random_vector(d, rng));
      generic = std::min(generic, finite::convexity_check(pi, g1, g1, g2, 0.5).second_singular_value);
      const Vector g3 = std::polar(1.0, angle(rng)) * g1;
      colinear = std::max(colinear, finite::convexity_check(pi, g1, g1, g3, 0.5).second_singular_value);
    }
  }
  return {generic > 1e-6 && colinear <= 1e-10, std::to_string(pairs) + " pairs, generic min sigma_2 " + num(generic) +
                                                   ", colinear max sigma_2 " + num(colinear)};
}

Outcome class_equation() {
  struct Case {
    const char* group;
    std::vector<int> dims;
  };
  const Case cases[] = {{"cyclic:6", {1, 1, 1, 1, 1, 1}},
                        {"dihedral:4", {1, 1, 1, 1, 2}},
                        {"heisenberg:3", {1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3}}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto g = finite::build_group(finite::GroupSpec::parse(c.group));
    std::vector<int> dims;
    int sum = 0;
    for (const auto& r : finite::decompose_regular(g)) {
      dims.push_back(r.dim());
      sum += r.dim() * r.dim();
    }
    const auto span = finite::peter_weyl_completeness(g);
    ok = ok && dims == c.dims && sum == g.order() && span.span_dim == g.order() && span.complete;
    detail += std::string(detail.empty() ? "" : "; ") + c.group + " sum d^2 = " + std::to_string(sum) + ", span " +
              std::to_string(span.span_dim);
  }
  return {ok, detail};
}

Outcome tensor() {
  std::mt19937_64 rng(3010);
  double worst = 0.0;
  for (const auto& pi : finite::decompose_regular(finite::dihedral_group(4))) {
    for (const auto& rho : finite::decompose_regular(finite::cyclic_group(3))) {
      const Vector g = finite::admissible_rescale(pi, finite::random_vector(pi.dim(), rng));
      const Vector h = finite::admissible_rescale(rho, finite::random_vector(rho.dim(), rng));
      worst = std::max(worst, finite::tensor_product_check(pi, rho, g, h));
    }
  }
  return {worst <= 1e-12, "max deviation " + num(worst)};
}

Outcome reduced_heisenberg() {
  const Window g = Window::gaussian(), f = Window::hermite(1);
  const heisenberg::PhaseSpaceFunction one = [](const auto&, const auto&, double) { return complex(1.0); };
  const heisenberg::PhaseSpaceFunction bump = [](const auto& x, const auto& w, double) {
    return complex(std::exp(-x[0] * x[0] - w[0] * w[0]));
  };
  const heisenberg::PhaseSpaceFunction control = [](const auto&, const auto&, double tau) {
    return std::polar(1.0, -2.0 * tf::kPi * tau);
  };
  double worst = 0.0;
  for (int m : {1, 2}) {
    const heisenberg::DilatedSchrodingerRep rep(m);
    for (const auto* h : {&one, &bump}) worst = std::max(worst, heisenberg::tau_independent_orthogonality(rep, *h, g, f).relative);
  }
  const double ctl = heisenberg::tau_independent_orthogonality(heisenberg::DilatedSchrodingerRep(1), control, g, g).magnitude;
  return {worst <= 1e-6 && ctl > 1e-3, "max relative |<h, W_g f>| " + num(worst) + ", control " + num(ctl)};
}

Outcome bridge() {
  const Window g = Window::gaussian();
  int mismatched = 0, total = 0;
  for (const auto* sets : {&random_sets, &spaced_sets}) {
    for (const auto& pts : *sets) {
      ++total;
      const bool hrt_side = hrt::hrt_verdict(g, pts).independent;
      const auto r = rkhs::psd_check(rkhs::gram_assemble(g, pts));
      if (hrt_side != rkhs::strictly_positive_definite(r.min_eig, r.max_eig)) ++mismatched;
    }
  }
  return {total == 70 && mismatched == 0, std::to_string(total) + " sets, " + std::to_string(mismatched) + " disagreements"};
}

}  // namespace

int main() {
  criterion(1, "three-point Gaussian interpolation coefficients", 1.0, three_point_coefficients);
  criterion(2, "closed-form Gaussian STFT vs quadrature", 5.0, closed_form_grid);
  criterion(3, "Gaussian point sets are fully interpolating", 30.0, gaussian_full_interpolation);
  criterion(4, "diagonal-dominance certificate soundness", 30.0, dominance_soundness);
  criterion(5, "interpolation failure on a finite group", 1.0, finite_interpolation_failure);
  criterion(6, "rigidity dichotomy of wavelet spaces", 60.0, rigidity);
  criterion(7, "differences of kernels are never of positive type", 30.0, positive_type);
  criterion(8, "convex combinations of kernels", 10.0, convexity);
  criterion(9, "class equation and completeness", 60.0, class_equation);
  criterion(10, "tensor product identity", 5.0, tensor);
  criterion(11, "reduced Heisenberg group is not wavelet complete", 30.0, reduced_heisenberg);
  criterion(12, "HRT verdict equals strict positive definiteness", 0.0, bridge);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
