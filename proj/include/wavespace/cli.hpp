#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "wavespace/finite_rep.hpp"
#include "wavespace/problem_file.hpp"

namespace wavespace::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformed = 1,
  kInfeasible = 2,
  kDependent = 3,
  kViolation = 4,
};

/// Report to `report`; the grid CSV (when the problem has a grid) to csv_path.
int cmd_interpolate(const problem::ProblemFile& p, const std::optional<std::string>& csv_path, std::ostream& report);

int cmd_hrt(const problem::ProblemFile& p, double tol, std::ostream& report);

/// CSV of the point kernel centered at the first point (origin if none).
int cmd_kernel_grid(const problem::ProblemFile& p, const std::optional<std::string>& csv_path, std::ostream& out);

struct FiniteOptions {
  finite::GroupSpec group{finite::GroupSpec::Family::dihedral, 4};
  std::string demo;
  std::optional<std::uint64_t> seed;
  int trials = 0;  // 0: demo default
  finite::GroupSpec second{finite::GroupSpec::Family::cyclic, 3};
  int m = 0;  // interpolation-failure sample size; 0: d_pi + 3, capped at |G|
  std::optional<std::string> out;
};

int cmd_finite(const FiniteOptions& options, std::ostream& report);

/// profile: "one" (h = 1), "gaussian" (h = e^{-x^2 - omega^2}) or "control"
/// (h = e^{-2 pi i tau}).
int cmd_heisenberg(int m, const std::string& profile, double tol, std::ostream& report);

/// CSV header and row format shared by grid outputs.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, double x, double omega, tf::complex value);

/// Entry point used by the executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wavespace::cli
