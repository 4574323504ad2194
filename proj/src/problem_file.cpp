#include "wavespace/problem_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace wavespace::problem {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ProblemError(what); }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

complex complex_value(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(where + ": expected [re, im]");
  return {number(j[0], where), number(j[1], where)};
}

std::vector<complex> complex_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  std::vector<complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_value(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json to_json(complex c) { return json::array({c.real(), c.imag()}); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) fail(where + ": unknown key '" + item.key() + "'");
  }
}

WindowSpec parse_window(const json& j) {
  if (!j.is_object()) fail("window: expected an object");
  check_keys(j, {"kind", "dimension", "params", "quadrature"}, "window");
  WindowSpec w;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) fail("window.kind: expected a string");
    w.kind = j["kind"].get<std::string>();
  }
  if (j.contains("dimension")) {
    if (!j["dimension"].is_number_unsigned() || j["dimension"].get<std::size_t>() == 0) {
      fail("window.dimension: expected a positive integer");
    }
    w.dimension = j["dimension"].get<std::size_t>();
  }
  const json params = j.value("params", json::object());
  if (!params.is_object()) fail("window.params: expected an object");
  if (w.kind == "gaussian") {
    check_keys(params, {}, "window.params");
  } else if (w.kind == "hermite") {
    check_keys(params, {"order"}, "window.params");
    if (!params.contains("order") || !params["order"].is_number_integer() || params["order"].get<int>() < 0) {
      fail("window.params.order: expected a non-negative integer");
    }
    w.order = params["order"].get<int>();
  } else if (w.kind == "tabulated") {
    check_keys(params, {"t_min", "t_max", "samples"}, "window.params");
    if (!params.contains("t_min") || !params.contains("t_max") || !params.contains("samples")) {
      fail("window.params: tabulated windows need t_min, t_max and samples");
    }
    w.t_min = number(params["t_min"], "window.params.t_min");
    w.t_max = number(params["t_max"], "window.params.t_max");
    w.samples = complex_list(params["samples"], "window.params.samples");
    if (w.dimension != 1) fail("window: tabulated windows are one-dimensional");
  } else {
    fail("window.kind: unknown kind '" + w.kind + "'");
  }
  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    if (!q.is_object()) fail("window.quadrature: expected an object");
    check_keys(q, {"half_width", "nodes"}, "window.quadrature");
    tf::QuadratureSpec spec;
    if (q.contains("half_width")) spec.half_width = number(q["half_width"], "window.quadrature.half_width");
    if (q.contains("nodes")) {
      if (!q["nodes"].is_number_integer()) fail("window.quadrature.nodes: expected an integer");
      spec.nodes = q["nodes"].get<int>();
    }
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      fail(std::string("window.quadrature: ") + e.what());
    }
    w.quadrature = spec;
  }
  return w;
}

json window_json(const WindowSpec& w) {
  json j{{"kind", w.kind}, {"dimension", w.dimension}};
  if (w.kind == "hermite") j["params"] = {{"order", w.order}};
  if (w.kind == "tabulated") {
    json samples = json::array();
    for (complex s : w.samples) samples.push_back(to_json(s));
    j["params"] = {{"t_min", w.t_min}, {"t_max", w.t_max}, {"samples", samples}};
  }
  if (w.quadrature) j["quadrature"] = {{"half_width", w.quadrature->half_width}, {"nodes", w.quadrature->nodes}};
  return j;
}

}  // namespace

bool operator==(const ProblemFile& a, const ProblemFile& b) {
  return a.window == b.window && a.points == b.points && a.values == b.values && a.grid == b.grid &&
         a.gram == b.gram && a.label == b.label;
}

ProblemFile parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("problem: expected a JSON object");
  check_keys(root, {"window", "points", "values", "grid", "gram", "label"}, "problem");

  ProblemFile p;
  if (root.contains("label")) {
    if (!root["label"].is_string()) fail("label: expected a string");
    p.label = root["label"].get<std::string>();
  }
  if (root.contains("window")) p.window = parse_window(root["window"]);
  if (root.contains("points")) {
    const json& pts = root["points"];
    if (!pts.is_array()) fail("points: expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string where = "points[" + std::to_string(i) + "]";
      if (!pts[i].is_array()) fail(where + ": expected [x..., omega...]");
      std::vector<double> row;
      for (const auto& c : pts[i]) row.push_back(number(c, where));
      p.points.push_back(std::move(row));
    }
  }
  if (root.contains("values")) p.values = complex_list(root["values"], "values");
  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) fail("grid: expected an object");
    check_keys(g, {"xmin", "xmax", "omega_min", "omega_max", "step"}, "grid");
    for (const char* key : {"xmin", "xmax", "omega_min", "omega_max", "step"}) {
      if (!g.contains(key)) fail(std::string("grid: missing ") + key);
    }
    p.grid = rkhs::GridSpec{number(g["xmin"], "grid.xmin"), number(g["xmax"], "grid.xmax"),
                            number(g["omega_min"], "grid.omega_min"), number(g["omega_max"], "grid.omega_max"),
                            number(g["step"], "grid.step")};
    try {
      (void)p.grid->x_axis();
      (void)p.grid->omega_axis();
    } catch (const std::invalid_argument& e) {
      fail(std::string("grid: ") + e.what());
    }
  }
  if (root.contains("gram")) {
    const json& g = root["gram"];
    if (!g.is_array() || g.empty()) fail("gram: expected a non-empty array of rows");
    std::vector<std::vector<complex>> rows;
    for (std::size_t i = 0; i < g.size(); ++i) {
      rows.push_back(complex_list(g[i], "gram[" + std::to_string(i) + "]"));
      if (rows.back().size() != g.size()) fail("gram: matrix must be square");
    }
    p.gram = std::move(rows);
  }

  // Cross-field consistency.
  if (!p.gram && !p.window) fail("problem: need a window (or an explicit gram matrix)");
  if (!p.gram && p.points.empty()) fail("problem: need at least one point");
  if (p.window) {
    const std::size_t width = 2 * p.window->dimension;
    for (std::size_t i = 0; i < p.points.size(); ++i) {
      if (p.points[i].size() != width) {
        fail("points[" + std::to_string(i) + "]: expected " + std::to_string(width) + " coordinates");
      }
    }
    std::set<std::vector<double>> seen;
    for (std::size_t i = 0; i < p.points.size(); ++i) {
      if (!seen.insert(p.points[i]).second) fail("points[" + std::to_string(i) + "]: duplicate point");
    }
  }
  const std::size_t m = p.gram ? p.gram->size() : p.points.size();
  if (p.gram && !p.points.empty() && p.points.size() != m) fail("points: length differs from gram size");
  if (p.values && p.values->size() != m) {
    fail("values: expected " + std::to_string(m) + " entries, got " + std::to_string(p.values->size()));
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

std::string to_json(const ProblemFile& p) {
  json root = json::object();
  if (!p.label.empty()) root["label"] = p.label;
  if (p.window) root["window"] = window_json(*p.window);
  if (!p.points.empty() || !p.gram) root["points"] = p.points;
  if (p.values) {
    json v = json::array();
    for (complex c : *p.values) v.push_back(to_json(c));
    root["values"] = v;
  }
  if (p.grid) {
    root["grid"] = {{"xmin", p.grid->x_min},
                    {"xmax", p.grid->x_max},
                    {"omega_min", p.grid->omega_min},
                    {"omega_max", p.grid->omega_max},
                    {"step", p.grid->step}};
  }
  if (p.gram) {
    json rows = json::array();
    for (const auto& row : *p.gram) {
      json r = json::array();
      for (complex c : row) r.push_back(to_json(c));
      rows.push_back(r);
    }
    root["gram"] = rows;
  }
  return root.dump(2) + "\n";
}

ProblemFile template_problem() {
  ProblemFile p;
  p.label = "three-point Gaussian interpolation";
  p.window = WindowSpec{};
  p.points = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  p.values = std::vector<complex>{1.0, 1.0, 1.0};
  p.grid = rkhs::GridSpec{-2.0, 3.0, -2.0, 3.0, 0.05};
  return p;
}

tf::Window build_window(const WindowSpec& spec) {
  if (spec.kind == "gaussian") {
    return spec.quadrature ? tf::Window::gaussian(spec.dimension, *spec.quadrature)
                           : tf::Window::gaussian(spec.dimension);
  }
  if (spec.kind == "hermite") {
    tf::Window w = tf::Window::hermite(spec.order, spec.dimension);
    return spec.quadrature ? w.with_quadrature(*spec.quadrature) : w;
  }
  if (spec.kind == "tabulated") {
    return spec.quadrature ? tf::Window::tabulated(spec.t_min, spec.t_max, spec.samples, *spec.quadrature)
                           : tf::Window::tabulated(spec.t_min, spec.t_max, spec.samples);
  }
  fail("unknown window kind '" + spec.kind + "'");
}

rkhs::PointSet build_points(const ProblemFile& p) {
  if (!p.window) fail("problem has no window");
  const std::size_t n = p.window->dimension;
  std::vector<tf::TFPoint> pts;
  for (const auto& row : p.points) {
    pts.emplace_back(tf::RealVector(row.begin(), row.begin() + long(n)), tf::RealVector(row.begin() + long(n), row.end()));
  }
  return rkhs::PointSet(std::move(pts));
}

rkhs::GramMatrix build_gram(const ProblemFile& p) {
  if (p.gram) {
    const auto m = static_cast<Eigen::Index>(p.gram->size());
    linalg::Matrix k(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) k(i, j) = (*p.gram)[std::size_t(i)][std::size_t(j)];
    }
    try {
      return rkhs::gram_from_matrix(std::move(k), p.label.empty() ? "explicit" : p.label);
    } catch (const std::invalid_argument& e) {
      fail(std::string("gram: ") + e.what());
    }
  }
  return rkhs::gram_assemble(build_window(*p.window), build_points(p));
}

linalg::Vector build_values(const ProblemFile& p) {
  if (!p.values) fail("problem has no values");
  linalg::Vector v(static_cast<Eigen::Index>(p.values->size()));
  for (std::size_t i = 0; i < p.values->size(); ++i) v(Eigen::Index(i)) = (*p.values)[i];
  return v;
}

}  // namespace wavespace::problem
