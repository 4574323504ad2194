#pragma once

// Problem descriptions for the command-line tool: a small JSON document with
// a window, phase-space points, optional interpolation values, an optional
// plot grid, and optionally an explicit kernel matrix in place of
// window + points.
//
//   {
//     "window": {"kind": "gaussian", "dimension": 1},
//     "points": [[0, 0], [1, 0], [0, 1]],
//     "values": [[1, 0], [1, 0], [1, 0]],
//     "grid": {"xmin": -2, "xmax": 3, "omega_min": -2, "omega_max": 3, "step": 0.05}
//   }
//
// Points are [x_1..x_n, omega_1..omega_n]; complex numbers are [re, im].

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wavespace/rkhs_interp.hpp"

namespace wavespace::problem {

using tf::complex;

class ProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct WindowSpec {
  std::string kind = "gaussian";  // gaussian | hermite | tabulated
  std::size_t dimension = 1;
  int order = 0;                  // hermite
  double t_min = 0.0, t_max = 0.0;  // tabulated
  std::vector<complex> samples;     // tabulated
  std::optional<tf::QuadratureSpec> quadrature;

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

struct ProblemFile {
  std::optional<WindowSpec> window;
  std::vector<std::vector<double>> points;
  std::optional<std::vector<complex>> values;
  std::optional<rkhs::GridSpec> grid;
  /// Explicit Hermitian kernel matrix, row-major.
  std::optional<std::vector<std::vector<complex>>> gram;
  std::string label;

  friend bool operator==(const ProblemFile&, const ProblemFile&);
};

/// Parses and validates; throws ProblemError with a readable message.
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);
std::string to_json(const ProblemFile& problem);

/// The three-point Gaussian interpolation problem with a plot grid.
ProblemFile template_problem();

tf::Window build_window(const WindowSpec& spec);
rkhs::PointSet build_points(const ProblemFile& problem);
rkhs::GramMatrix build_gram(const ProblemFile& problem);
linalg::Vector build_values(const ProblemFile& problem);

}  // namespace wavespace::problem
