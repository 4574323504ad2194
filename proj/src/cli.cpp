#include "wavespace/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wavespace/errors.hpp"
#include "wavespace/heisenberg_complete.hpp"
#include "wavespace/hrt_test.hpp"

namespace wavespace::cli {

namespace {

using finite::Matrix;
using finite::Vector;
using tf::complex;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt(complex c) { return fmt(c.real()) + (c.imag() < 0 ? " - " : " + ") + fmt(std::abs(c.imag())) + "i"; }

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw problem::ProblemError("cannot write " + path);
  return out;
}

}  // namespace

void write_csv_header(std::ostream& out) { out << "x,omega,re,im\n"; }

void write_csv_row(std::ostream& out, double x, double omega, complex value) {
  out << fmt(x) << ',' << fmt(omega) << ',' << fmt(value.real()) << ',' << fmt(value.imag()) << '\n';
}

int cmd_interpolate(const problem::ProblemFile& p, const std::optional<std::string>& csv_path, std::ostream& report) {
  if (!p.values) throw problem::ProblemError("interpolate: problem has no values");
  const rkhs::GramMatrix k = problem::build_gram(p);
  const linalg::Vector lambda = problem::build_values(p);
  const rkhs::PsdReport psd = rkhs::psd_check(k);

  report << "kernel: " << k.window_label << "\n";
  report << "points: " << k.size() << "\n";
  report << "gram_min_eig: " << fmt(psd.min_eig) << "\n";
  report << "gram_max_eig: " << fmt(psd.max_eig) << "\n";

  rkhs::Interpolant f;
  try {
    f = rkhs::solve_minimal_norm(k, lambda);
  } catch (const InfeasibleError& e) {
    report << "status: infeasible\n" << "reason: " << e.what() << "\n";
    return kInfeasible;
  }
  for (Eigen::Index i = 0; i < f.alpha.size(); ++i) report << "alpha[" << i << "]: " << fmt(f.alpha(i)) << "\n";
  report << "norm: " << fmt(f.norm) << "\n";
  report << "status: feasible\n";

  if (p.grid) {
    if (!p.window) {
      report << "grid: skipped (explicit kernel matrix has no phase-space evaluation)\n";
    } else if (!csv_path) {
      report << "grid: skipped (no --out given)\n";
    } else {
      const tf::Window g = problem::build_window(*p.window);
      const auto rows = rkhs::interpolant_grid(f, g, *p.grid);
      std::ofstream csv = open_output(*csv_path);
      write_csv_header(csv);
      for (const auto& r : rows) write_csv_row(csv, r.x, r.omega, r.value);
      report << "grid: " << rows.size() << " rows written to " << *csv_path << "\n";
    }
  }
  return kOk;
}

int cmd_hrt(const problem::ProblemFile& p, double tol, std::ostream& report) {
  const rkhs::GramMatrix gram = p.gram ? problem::build_gram(p)
                                       : hrt::hrt_gram(problem::build_window(*p.window), problem::build_points(p));
  const hrt::HrtVerdict v = hrt::hrt_verdict(gram, tol);
  report << "points: " << gram.size() << "\n";
  report << "min_eig: " << fmt(v.min_eig) << "\n";
  report << "max_eig: " << fmt(v.max_eig) << "\n";
  report << "cond: " << (std::isinf(v.cond) ? std::string("inf") : fmt(v.cond)) << "\n";
  report << "tolerance: " << fmt(tol) << " (relative to max_eig)\n";
  report << "verdict: " << (v.independent ? "independent" : "dependent") << (v.near_threshold ? " (near threshold)" : "")
         << "\n";
  const hrt::DominanceCertificate cert = v.certificate ? *v.certificate : hrt::dominance_check(gram);
  report << "dominance: " << (cert.holds ? "holds" : "fails") << ", max off-diagonal row sum " << fmt(cert.max_row_sum)
         << "\n";
  return v.independent ? kOk : kDependent;
}

int cmd_kernel_grid(const problem::ProblemFile& p, const std::optional<std::string>& csv_path, std::ostream& out) {
  if (!p.window) throw problem::ProblemError("kernel-grid: problem has no window");
  if (!p.grid) throw problem::ProblemError("kernel-grid: problem has no grid");
  const tf::Window g = tf::require_admissible(problem::build_window(*p.window));
  if (g.dimension() != 1) throw problem::ProblemError("kernel-grid: phase-plane grids need dimension 1");
  const tf::TFPoint center = p.points.empty() ? tf::TFPoint(0.0, 0.0) : problem::build_points(p)[0];

  std::ofstream file;
  if (csv_path) file = open_output(*csv_path);
  std::ostream& csv = csv_path ? static_cast<std::ostream&>(file) : out;
  write_csv_header(csv);
  for (double x : p.grid->x_axis()) {
    for (double w : p.grid->omega_axis()) write_csv_row(csv, x, w, tf::point_kernel_eval(g, center, tf::TFPoint(x, w)));
  }
  return kOk;
}

namespace {

Matrix random_unitary(int d, std::mt19937_64& rng) {
  Matrix a(d, d);
  for (int j = 0; j < d; ++j) a.col(j) = finite::random_vector(d, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(d, d);
}

finite::UnitaryRep conjugate(const finite::UnitaryRep& rep, const Matrix& u) {
  std::vector<Matrix> mats;
  for (int x = 0; x < rep.group().order(); ++x) mats.push_back(u * rep(x) * u.adjoint());
  return finite::UnitaryRep(rep.group(), std::move(mats));
}

complex random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * tf::kPi);
  return std::polar(1.0, angle(rng));
}

int demo_class_equation(const finite::FiniteGroup& g, std::ostream& out) {
  const auto irreps = finite::decompose_regular(g);
  int sum = 0;
  double defect = 0.0;
  bool irreducible = true;
  std::string dims;
  for (const auto& rep : irreps) {
    sum += rep.dim() * rep.dim();
    defect = std::max({defect, rep.homomorphism_defect(), rep.unitarity_defect()});
    irreducible = irreducible && finite::commutant_dimension(rep) == 1;
    dims += (dims.empty() ? "" : ",") + std::to_string(rep.dim());
  }
  const bool pass = sum == g.order() && irreducible && defect <= 1e-12;
  out << "irreducible dimensions: " << dims << "\n";
  out << "max homomorphism/unitarity defect: " << fmt(defect) << "\n";
  out << dims << " ; " << sum << " = " << g.order() << " " << verdict(pass) << "\n";
  return pass ? kOk : kViolation;
}

int demo_completeness(const finite::FiniteGroup& g, std::ostream& out) {
  const auto r = finite::peter_weyl_completeness(g);
  out << "span " << r.span_dim << "/" << r.order << " " << verdict(r.complete) << "\n";
  return r.complete ? kOk : kViolation;
}

int demo_rigidity(const finite::FiniteGroup& g, int trials, std::mt19937_64& rng, std::ostream& out) {
  const auto irreps = finite::decompose_regular(g);
  int intermediate = 0, mismatched = 0, full = 0, empty = 0;
  double worst_residual = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto i = static_cast<std::size_t>(rng() % irreps.size());
    const finite::UnitaryRep& pi = irreps[i];
    const int d = pi.dim();
    const Vector gv = finite::admissible_rescale(pi, finite::random_vector(d, rng));
    int scenario = static_cast<int>(rng() % 4);
    if (scenario == 2 && irreps.size() == 1) scenario = 0;

    finite::UnitaryRep rho = pi;
    Vector hv;
    int expected = 0;
    switch (scenario) {
      case 0:  // same representation, colinear window
        hv = random_phase(rng) * gv;
        expected = d;
        break;
      case 1:  // same representation, unrelated window
        hv = finite::admissible_rescale(pi, finite::random_vector(d, rng));
        expected = d == 1 ? d : 0;
        break;
      case 2: {  // inequivalent irreducible
        std::size_t j = static_cast<std::size_t>(rng() % (irreps.size() - 1));
        if (j >= i) ++j;
        rho = irreps[j];
        hv = finite::admissible_rescale(rho, finite::random_vector(rho.dim(), rng));
        expected = 0;
        break;
      }
      default: {  // equivalent copy in a rotated basis, window carried along
        const Matrix u = random_unitary(d, rng);
        rho = conjugate(pi, u);
        hv = random_phase(rng) * (u * gv);
        expected = d;
      }
    }
    const auto r = finite::rigidity_check(pi, rho, gv, hv);
    if (r.intersection_dim != 0 && r.intersection_dim != d) ++intermediate;
    if (r.intersection_dim != expected) ++mismatched;
    if (r.intersection_dim == 0) ++empty;
    if (r.intersection_dim == d) {
      ++full;
      worst_residual = std::max(worst_residual, r.intertwining_residual);
    }
  }
  const bool pass = intermediate == 0 && mismatched == 0 && worst_residual <= finite::kIntertwinerTolerance;
  out << "trials: " << trials << " (intersection 0: " << empty << ", full: " << full << ")\n";
  out << "unexpected intersection dimensions: " << mismatched << "\n";
  out << "max intertwining residual: " << fmt(worst_residual) << "\n";
  out << intermediate << " intermediate intersections " << verdict(pass) << "\n";
  return pass ? kOk : kViolation;
}

int demo_positive_type(const finite::FiniteGroup& g, int trials, std::mt19937_64& rng, std::ostream& out) {
  const auto irreps = finite::decompose_regular(g);
  int tested = 0, skipped = 0, failures = 0;
  double worst_psd = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto& pi = irreps[rng() % irreps.size()];
    const auto& rho = irreps[rng() % irreps.size()];
    const Vector gv = finite::admissible_rescale(pi, finite::random_vector(pi.dim(), rng));
    const Vector hv = finite::admissible_rescale(rho, finite::random_vector(rho.dim(), rng));
    const Vector wg = finite::wavelet_transform(pi, gv, gv).values;
    const Vector wh = finite::wavelet_transform(rho, hv, hv).values;

    const double own_min = linalg::hermitian_spectrum(finite::positive_type_matrix(g, wg)).min();
    worst_psd = std::min(worst_psd, own_min);
    const Vector phi = wg - wh;
    if (phi.cwiseAbs().maxCoeff() <= 1e-6) {
      ++skipped;
      continue;
    }
    ++tested;
    if (linalg::hermitian_spectrum(finite::positive_type_matrix(g, phi)).min() > -1e-8) ++failures;
  }
  const bool psd_ok = worst_psd >= -1e-10 * g.order();
  const bool pass = failures == 0 && psd_ok;
  out << "W_g g positive type: min eigenvalue " << fmt(worst_psd) << " " << verdict(psd_ok) << "\n";
  out << "differences tested: " << tested << " (identical kernels skipped: " << skipped << ")\n";
  out << failures << " differences of positive type " << verdict(pass) << "\n";
  return pass ? kOk : kViolation;
}

int demo_convexity(const finite::FiniteGroup& g, int trials, std::mt19937_64& rng, std::ostream& out) {
  const auto all = finite::decompose_regular(g);
  std::vector<finite::UnitaryRep> irreps;
  std::copy_if(all.begin(), all.end(), std::back_inserter(irreps), [](const auto& r) { return r.dim() >= 2; });
  if (irreps.empty()) {
    out << "no irreducible of dimension >= 2; every convex combination is rank one PASS\n";
    return kOk;
  }
  int failures = 0;
  double min_generic = std::numeric_limits<double>::infinity(), max_colinear = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto& pi = irreps[rng() % irreps.size()];
    const int d = pi.dim();
    const Vector g1 = finite::admissible_rescale(pi, finite::random_vector(d, rng));
    Vector g2 = finite::admissible_rescale(pi, finite::random_vector(d, rng));
    while (std::abs(g1.dot(g2)) >= 0.99 * g1.norm() * g2.norm()) {
      g2 = finite::admissible_rescale(pi, finite::random_vector(d, rng));
    }
    const auto generic = finite::convexity_check(pi, g1, g1, g2, 0.5);
    min_generic = std::min(min_generic, generic.second_singular_value);
    if (generic.second_singular_value <= 1e-6 || generic.is_extreme_violation) ++failures;

    const auto colinear = finite::convexity_check(pi, g1, g1, random_phase(rng) * g1, 0.5);
    max_colinear = std::max(max_colinear, colinear.second_singular_value);
    if (!colinear.rank_one || colinear.deviation > 1e-10) ++failures;
  }
  const bool pass = failures == 0;
  out << "generic pairs: min second singular value " << fmt(min_generic) << "\n";
  out << "colinear pairs: max second singular value " << fmt(max_colinear) << "\n";
  out << failures << " failed combinations " << verdict(pass) << "\n";
  return pass ? kOk : kViolation;
}

int demo_tensor(const finite::FiniteGroup& g, const finite::FiniteGroup& h, std::mt19937_64& rng, std::ostream& out) {
  const auto left = finite::decompose_regular(g);
  const auto right = finite::decompose_regular(h);
  double worst = 0.0;
  for (const auto& pi : left) {
    for (const auto& rho : right) {
      const Vector gv = finite::admissible_rescale(pi, finite::random_vector(pi.dim(), rng));
      const Vector hv = finite::admissible_rescale(rho, finite::random_vector(rho.dim(), rng));
      worst = std::max(worst, finite::tensor_product_check(pi, rho, gv, hv));
    }
  }
  const bool pass = worst <= 1e-12;
  out << "pairs: " << left.size() * right.size() << "\n";
  out << "max deviation " << fmt(worst) << " " << verdict(pass) << "\n";
  return pass ? kOk : kViolation;
}

int demo_interpolation_failure(const finite::FiniteGroup& g, int m, std::mt19937_64& rng,
                               const std::optional<std::string>& out_path, std::ostream& out) {
  const auto irreps = finite::decompose_regular(g);
  const finite::UnitaryRep& pi = irreps.back();  // largest dimension
  const int size = m > 0 ? m : std::min(pi.dim() + 3, g.order());
  const auto demo = finite::interpolation_failure_demo(pi, size, rng);
  out << "irreducible dimension: " << pi.dim() << ", m = " << size << "\n";
  out << "min_eig: " << fmt(demo.min_eig) << "\n";
  out << "max_eig: " << fmt(demo.max_eig) << "\n";
  bool pass = true;
  if (demo.rank_bound_applies) {
    pass = std::abs(demo.min_eig) <= 1e-10;
    out << "singular Gram (rank <= " << pi.dim() << " < " << size << ") " << verdict(pass) << "\n";
  } else {
    out << "m does not exceed the dimension; reported without assertion\n";
  }
  if (out_path) {
    // Values along the bottom eigenvector lie outside the image of the Gram.
    const auto spectrum = linalg::hermitian_spectrum(demo.gram);
    problem::ProblemFile p;
    p.label = "finite " + g.name() + " kernel, m=" + std::to_string(size);
    const auto side = static_cast<std::size_t>(size);
    std::vector<std::vector<complex>> rows(side, std::vector<complex>(side));
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) rows[std::size_t(i)][std::size_t(j)] = demo.gram(i, j);
    }
    p.gram = std::move(rows);
    std::vector<complex> values;
    for (int i = 0; i < size; ++i) values.push_back(spectrum.vectors(i, 0));
    p.values = std::move(values);
    open_output(*out_path) << problem::to_json(p);
    out << "problem written to " << *out_path << "\n";
  }
  return pass ? kOk : kViolation;
}

}  // namespace

int cmd_finite(const FiniteOptions& o, std::ostream& report) {
  const finite::FiniteGroup g = finite::build_group(o.group);
  report << "group: " << g.name() << " (order " << g.order() << ")\n";
  report << "demo: " << o.demo << "\n";
  if (o.demo == "class-equation") return demo_class_equation(g, report);
  if (o.demo == "completeness") return demo_completeness(g, report);

  const bool known = o.demo == "rigidity" || o.demo == "positive-type" || o.demo == "convexity" ||
                     o.demo == "tensor" || o.demo == "interpolation-failure";
  if (!known) throw problem::ProblemError("unknown demo '" + o.demo + "'");
  if (!o.seed) throw problem::ProblemError("demo '" + o.demo + "' is randomized and needs --seed");
  report << "seed: " << *o.seed << "\n";
  std::mt19937_64 rng(*o.seed);

  if (o.demo == "rigidity") return demo_rigidity(g, o.trials > 0 ? o.trials : 100, rng, report);
  if (o.demo == "positive-type") return demo_positive_type(g, o.trials > 0 ? o.trials : 50, rng, report);
  if (o.demo == "convexity") return demo_convexity(g, o.trials > 0 ? o.trials : 50, rng, report);
  if (o.demo == "tensor") {
    const finite::FiniteGroup h = finite::build_group(o.second);
    report << "second group: " << h.name() << "\n";
    return demo_tensor(g, h, rng, report);
  }
  return demo_interpolation_failure(g, o.m, rng, o.out, report);
}

int cmd_heisenberg(int m, const std::string& profile, double tol, std::ostream& report) {
  const heisenberg::DilatedSchrodingerRep rep(m);
  heisenberg::PhaseSpaceFunction h;
  if (profile == "one") {
    h = [](const tf::RealVector&, const tf::RealVector&, double) { return complex(1.0); };
  } else if (profile == "gaussian") {
    h = [](const tf::RealVector& x, const tf::RealVector& w, double) {
      return complex(std::exp(-x[0] * x[0] - w[0] * w[0]));
    };
  } else if (profile == "control") {
    h = [](const tf::RealVector&, const tf::RealVector&, double tau) { return std::polar(1.0, -2.0 * tf::kPi * tau); };
  } else {
    throw problem::ProblemError("unknown profile '" + profile + "' (one, gaussian, control)");
  }
  const tf::Window g = tf::Window::gaussian(1);
  const auto r = heisenberg::tau_independent_orthogonality(rep, h, g, g);
  report << "m: " << m << "\n";
  report << "profile: " << profile << "\n";
  report << "tau nodes: " << r.tau_nodes << "\n";
  report << "magnitude: " << fmt(r.magnitude) << "\n";
  report << "relative: " << fmt(r.relative) << "\n";
  if (profile == "control") {
    const bool sensitive = r.magnitude > 1e-3;
    report << "CONTROL " << (sensitive ? "detected" : "not detected") << "\n";
    return sensitive ? kOk : kViolation;
  }
  const bool pass = r.relative <= tol;
  report << "orthogonal " << verdict(pass) << "\n";
  return pass ? kOk : kViolation;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reproducing-kernel analysis of Gabor and finite-group wavelet spaces"};
  app.require_subcommand(1);

  std::string problem_path, out_path;
  bool emit_template = false;
  double tol = rkhs::kDefiniteTolerance;
  double heisenberg_tol = 1e-6;

  auto add_problem_flags = [&](CLI::App* cmd) {
    cmd->add_option("--problem", problem_path, "problem file (JSON)");
    cmd->add_option("--out", out_path, "output path");
    cmd->add_flag("--emit-template", emit_template, "write a template problem file and exit");
  };
  CLI::App* interpolate = app.add_subcommand("interpolate", "minimal-norm interpolation in a Gabor space");
  add_problem_flags(interpolate);
  CLI::App* hrt_cmd = app.add_subcommand("hrt", "linear independence of time-frequency shifts");
  add_problem_flags(hrt_cmd);
  hrt_cmd->add_option("--tol", tol, "independence tolerance relative to the largest eigenvalue");
  CLI::App* grid = app.add_subcommand("kernel-grid", "tabulate a point kernel over a grid");
  add_problem_flags(grid);

  FiniteOptions finite_options;
  std::string group_text = "dihedral:4", second_text = "cyclic:3";
  std::uint64_t seed = 0;
  CLI::App* finite_cmd = app.add_subcommand("finite", "exact checks on finite groups");
  finite_cmd->add_option("--group", group_text, "cyclic:N, dihedral:N or heisenberg:p");
  finite_cmd->add_option("--demo", finite_options.demo,
                         "rigidity, positive-type, convexity, class-equation, completeness, tensor, "
                         "interpolation-failure")
      ->required();
  auto* seed_opt = finite_cmd->add_option("--seed", seed, "seed for randomized demos");
  finite_cmd->add_option("--trials", finite_options.trials, "number of random trials");
  finite_cmd->add_option("--group2", second_text, "second factor for the tensor demo");
  finite_cmd->add_option("--m", finite_options.m, "sample size for interpolation-failure");
  finite_cmd->add_option("--out", out_path, "write the singular interpolation problem here");

  int m = 1;
  std::string profile = "one";
  CLI::App* heis = app.add_subcommand("heisenberg", "orthogonality of tau-independent functions");
  heis->add_option("--m", m, "dilation index (nonzero integer)")->required();
  heis->add_option("--profile", profile, "one, gaussian or control");
  heis->add_option("--tol", heisenberg_tol, "relative orthogonality tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kMalformed;
  }

  try {
    if (interpolate->parsed() || hrt_cmd->parsed() || grid->parsed()) {
      const std::optional<std::string> out_opt = out_path.empty() ? std::nullopt : std::optional(out_path);
      if (emit_template) {
        const std::string text = problem::to_json(problem::template_problem());
        if (out_opt) {
          open_output(*out_opt) << text;
        } else {
          out << text;
        }
        return kOk;
      }
      if (problem_path.empty()) throw problem::ProblemError("--problem is required");
      const problem::ProblemFile p = problem::load_problem(problem_path);
      if (interpolate->parsed()) return cmd_interpolate(p, out_opt, out);
      if (hrt_cmd->parsed()) return cmd_hrt(p, tol, out);
      return cmd_kernel_grid(p, out_opt, out);
    }
    if (finite_cmd->parsed()) {
      finite_options.group = finite::GroupSpec::parse(group_text);
      finite_options.second = finite::GroupSpec::parse(second_text);
      if (seed_opt->count() > 0) finite_options.seed = seed;
      if (!out_path.empty()) finite_options.out = out_path;
      return cmd_finite(finite_options, out);
    }
    return cmd_heisenberg(m, profile, heisenberg_tol, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
}

}  // namespace wavespace::cli
