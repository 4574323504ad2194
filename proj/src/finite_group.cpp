#include <charconv>
#include <stdexcept>

#include "wavespace/finite_rep.hpp"

namespace wavespace::finite {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> table)
    : name_(std::move(name)), table_(std::move(table)) {
  const int n = order();
  if (n == 0) throw std::invalid_argument("FiniteGroup: empty table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("FiniteGroup: table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: table not closed");
    }
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw std::invalid_argument("FiniteGroup: no identity element");
  inverse_.assign(std::size_t(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (mul(a, b) == identity_ && mul(b, a) == identity_) {
        inverse_[std::size_t(a)] = b;
        break;
      }
    }
    if (inverse_[std::size_t(a)] < 0) throw std::invalid_argument("FiniteGroup: element without inverse");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ab = mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c))) throw std::invalid_argument("FiniteGroup: not associative");
      }
    }
  }
}

namespace {

std::vector<std::vector<int>> square(int n) {
  return std::vector<std::vector<int>>(std::size_t(n), std::vector<int>(std::size_t(n)));
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

}  // namespace

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group needs N >= 1");
  auto t = square(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup("cyclic:" + std::to_string(n), std::move(t));
}

FiniteGroup dihedral_group(int n) {
  if (n < 1) throw std::invalid_argument("dihedral group needs N >= 1");
  auto t = square(2 * n);
  for (int x = 0; x < 2 * n; ++x) {
    const int a = x % n, e = x / n;
    for (int y = 0; y < 2 * n; ++y) {
      const int b = y % n, f = y / n;
      // r^a s^e r^b s^f = r^{a + (-1)^e b} s^{e+f}
      const int k = ((a + (e ? -b : b)) % n + n) % n;
      t[x][y] = k + n * ((e + f) % 2);
    }
  }
  return FiniteGroup("dihedral:" + std::to_string(n), std::move(t));
}

FiniteGroup finite_heisenberg_group(int p) {
  if (!is_prime(p)) throw std::invalid_argument("finite Heisenberg group needs a prime p, got " + std::to_string(p));
  const int n = p * p * p;
  auto t = square(n);
  for (int x = 0; x < n; ++x) {
    const int a = x / (p * p), b = (x / p) % p, c = x % p;
    for (int y = 0; y < n; ++y) {
      const int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      t[x][y] = ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
    }
  }
  return FiniteGroup("heisenberg:" + std::to_string(p), std::move(t));
}

FiniteGroup build_group(const GroupSpec& spec) {
  switch (spec.family) {
    case GroupSpec::Family::cyclic: return cyclic_group(spec.parameter);
    case GroupSpec::Family::dihedral: return dihedral_group(spec.parameter);
    case GroupSpec::Family::finite_heisenberg: return finite_heisenberg_group(spec.parameter);
  }
  throw std::invalid_argument("unknown group family");
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int ng = g.order(), nh = h.order();
  auto t = square(ng * nh);
  for (int x = 0; x < ng * nh; ++x) {
    for (int y = 0; y < ng * nh; ++y) {
      t[x][y] = g.mul(x / nh, y / nh) * nh + h.mul(x % nh, y % nh);
    }
  }
  return FiniteGroup(g.name() + "x" + h.name(), std::move(t));
}

GroupSpec GroupSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("group spec must look like family:N, got '" + std::string(text) + "'");
  }
  const std::string_view family = text.substr(0, colon);
  const std::string_view number = text.substr(colon + 1);
  int value = 0;
  const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc() || end != number.data() + number.size()) {
    throw std::invalid_argument("bad group parameter in '" + std::string(text) + "'");
  }
  if (family == "cyclic") return {Family::cyclic, value};
  if (family == "dihedral") return {Family::dihedral, value};
  if (family == "heisenberg" || family == "finite_heisenberg") return {Family::finite_heisenberg, value};
  throw std::invalid_argument("unknown group family '" + std::string(family) + "'");
}

std::string GroupSpec::to_string() const {
  switch (family) {
    case Family::cyclic: return "cyclic:" + std::to_string(parameter);
    case Family::dihedral: return "dihedral:" + std::to_string(parameter);
    case Family::finite_heisenberg: return "heisenberg:" + std::to_string(parameter);
  }
  return "?";
}

}  // namespace wavespace::finite
