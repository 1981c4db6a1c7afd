#include "tpcamg/model_peridynamic.hpp"

#include "tpcamg/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace tpcamg {

namespace {

using index_t = std::ptrdiff_t;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

double at(const std::vector<double>& v, std::size_t k) { return k < v.size() ? v[k] : 0.0; }

} // namespace

Horizon Horizon::parse(const std::string& text) {
  if (text == "sqrt-h" || text == "sqrt(h)" || text == "sqrth") return sqrt_h();
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    // from_chars does not accept fractions like "1/4".
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw ConfigError("horizon: expected a number or sqrt-h, got '" + text + "'");
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    v = num / den;
  }
  if (!(v > 0.0)) throw ConfigError("horizon: must be positive");
  return fixed(v);
}

std::string Horizon::str() const {
  if (kind == Kind::SqrtH) return "sqrt-h";
  std::ostringstream os;
  os << value;
  return os.str();
}

std::size_t PdModelConfig::r() const {
  if (delta.kind == Horizon::Kind::SqrtH) return std::max<std::size_t>(1, isqrt(N));
  const double ratio = delta.value * static_cast<double>(N);
  const auto r = static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12)));
  return std::max<std::size_t>(1, r);
}

double PdModelConfig::scale() const {
  const double d = effective_delta();
  return 2.0 * d * d * d / h();
}

void PdModelConfig::validate() const {
  if (!is_power_of_two(N) || N < 4) throw ConfigError("peridynamic model: N must be a power of two >= 4");
  if (delta.kind == Horizon::Kind::Value && !(delta.value > 0.0))
    throw ConfigError("peridynamic model: horizon must be positive");
  if (r() + 2 > N) throw ConfigError("peridynamic model: stencil does not fit (r + 2 > N)");
}

PdCoefficients pd_coefficients(std::size_t r, bool /*symmetricVariant*/) {
  if (r < 1) throw DomainError("pd_coefficients: r must be >= 1");
  const auto rd = static_cast<double>(r);
  PdCoefficients c;
  c.r = r;
  c.a.assign(r + 1, -2.0);
  c.a[0] = 12.0 * rd - 2.0;
  c.a[r] = -1.0;
  c.a_half.assign(r, -4.0);
  c.c.assign(r + 1, -2.0);
  c.c[r - 1] = -9.0 / 4.0;
  c.c[r] = 1.0 / 4.0;
  c.d.assign(r + 1, -4.0);
  c.d[0] = 12.0 * rd - 4.0;
  c.d[r] = -2.0;
  return c;
}

double pd_weight(const PdCoefficients& c, bool symmetricVariant, std::ptrdiff_t row_pos,
                 std::ptrdiff_t col_pos) {
  const auto dist = static_cast<std::size_t>(std::abs(row_pos - col_pos));
  const std::size_t k = dist / 2;
  const bool even = dist % 2 == 0;
  const bool integer_row = row_pos % 2 == 0;
  if (integer_row || symmetricVariant) return even ? at(c.a, k) : at(c.a_half, k);
  return even ? at(c.d, k) : at(c.c, k);
}

PdSystem assemble_pd_system(const PdModelConfig& cfg) {
  cfg.validate();
  PdSystem sys;
  sys.cfg = cfg;
  sys.r = cfg.r();
  sys.coeffs = pd_coefficients(sys.r, cfg.symmetricVariant);
  sys.scale = cfg.scale();
  const auto& c = sys.coeffs;
  const bool sym = cfg.symmetricVariant;
  const std::size_t m = cfg.N - 1;
  const auto mi = static_cast<index_t>(m);
  const auto reach = static_cast<index_t>(sys.r) + 2;

  // Block coefficient by (column - row); rows and columns of the integer block sit at
  // even positions 2i + 2, the half block at odd positions 2j + 1.
  auto alpha = [&](index_t l) { return pd_weight(c, sym, 0, 2 * l); };
  auto beta = [&](index_t l) { return pd_weight(c, sym, 0, 2 * l - 1); };
  auto gam = [&](index_t l) { return pd_weight(c, sym, 1, 2 * l + 2); };
  auto delta = [&](index_t l) { return pd_weight(c, sym, 1, 2 * l + 1); };

  auto window = [&](auto&& f) {
    std::vector<double> v;
    for (index_t l = -reach; l <= reach; ++l) v.push_back(f(l));
    return Window(-reach, std::move(v)).trim();
  };
  auto cross = [&](auto&& f) {
    std::vector<double> v;
    for (index_t i = 0; i < std::min(mi, reach + 1); ++i) v.push_back(f(i));
    return Window(0, std::move(v)).trim();
  };

  TpcParts parts;
  parts.m = m;
  parts.a = ToeplitzSpec(m, window(alpha));
  parts.bbar = ToeplitzSpec(m, window([&](index_t l) { return beta(l + 1); }));
  parts.cbar = ToeplitzSpec(m, window([&](index_t l) { return gam(l - 1); }));
  parts.dbar = ToeplitzSpec(m, window(delta));
  parts.p = cross([&](index_t i) { return beta(-i); });
  parts.q = cross([&](index_t j) { return gam(j); });
  parts.xi = cross([&](index_t i) { return delta(-i - 1); });
  parts.zeta = cross([&](index_t j) { return delta(j + 1); });
  parts.o = delta(0);
  sys.op = TpcOperator(std::move(parts));

  const std::size_t r = sys.r;
  FoldVectors& f = sys.fold;
  for (std::size_t k = 1; k <= r; ++k) f.wA.push_back(c.a[k]);
  f.wA.push_back(0.0);
  for (std::size_t k = 1; k + 1 <= r; ++k) f.wB.push_back(c.a_half[k]);
  f.wB.push_back(0.0);
  if (sym) {
    for (std::size_t k = 0; k <= r; ++k) f.wC.push_back(at(c.a_half, k));
    for (std::size_t k = 1; k <= r; ++k) f.wD.push_back(c.a[k]);
  } else {
    f.wC = c.c;
    for (std::size_t k = 1; k <= r; ++k) f.wD.push_back(c.d[k]);
  }
  return sys;
}

PdCollar pd_collar_positions(const PdModelConfig& cfg) {
  const auto r = static_cast<index_t>(cfg.r());
  const auto N = static_cast<index_t>(cfg.N);
  const double hh = 0.5 * cfg.h();
  PdCollar x;
  for (index_t k = -2 * r; k <= 0; ++k) x.left.push_back(hh * static_cast<double>(k));
  for (index_t k = 2 * N; k <= 2 * N + 2 * r; ++k) x.right.push_back(hh * static_cast<double>(k));
  return x;
}

PdCollar sample_collar(const PdModelConfig& cfg, const std::function<double(double)>& g) {
  PdCollar x = pd_collar_positions(cfg);
  for (auto& v : x.left) v = g(v);
  for (auto& v : x.right) v = g(v);
  return x;
}

BlockVector fold_boundary_rhs(const PdSystem& sys, const BlockVector& F, const PdCollar& g) {
  const auto r = static_cast<index_t>(sys.r);
  const auto N = static_cast<index_t>(sys.cfg.N);
  const std::size_t width = 2 * sys.r + 1;
  if (g.left.size() != width || g.right.size() != width)
    throw ArgumentError("fold_boundary_rhs: collar must hold 2r+1 samples per side");
  const std::size_t m = sys.cfg.N - 1;
  if (F.v.size() != m || F.w.size() != m + 1) throw ArgumentError("fold_boundary_rhs: F has the wrong size");

  const bool sym = sys.cfg.symmetricVariant;
  const double inv = 1.0 / sys.scale;
  BlockVector out = F;
  auto correction = [&](index_t row_pos) {
    double s = 0.0;
    for (index_t k = 0; k <= 2 * r; ++k) {
      s += pd_weight(sys.coeffs, sym, row_pos, k - 2 * r) * g.left[static_cast<std::size_t>(k)];
      s += pd_weight(sys.coeffs, sym, row_pos, 2 * N + k) * g.right[static_cast<std::size_t>(k)];
    }
    return s;
  };
  // Only rows within one horizon of either end see the collar.
  auto near = [&](index_t pos) { return pos <= 2 * r + 1 || pos >= 2 * N - 2 * r - 1; };
  for (std::size_t i = 0; i < m; ++i) {
    const auto pos = 2 * static_cast<index_t>(i) + 2;
    if (near(pos)) out.v[i] -= inv * correction(pos);
  }
  for (std::size_t j = 0; j <= m; ++j) {
    const auto pos = 2 * static_cast<index_t>(j) + 1;
    if (near(pos)) out.w[j] -= inv * correction(pos);
  }
  return out;
}

double pd_exact_forcing(const PdModelConfig& cfg, const ExpPolySolution& u, double x, double t) {
  const double d = cfg.effective_delta();
  // int_{-d}^{d} (u(x) - u(x+s)) ds = -sum_{k even} u^(k)(x)/k! * 2 d^{k+1}/(k+1).
  double s = 0.0, fact = 1.0;
  for (std::size_t k = 1; k <= u.p.degree(); ++k) {
    fact *= static_cast<double>(k);
    if (k % 2 != 0) continue;
    s -= u.p.derivative(k)(x) / fact * 2.0 * std::pow(d, static_cast<double>(k + 1)) / static_cast<double>(k + 1);
  }
  return u.time_derivative(x, t) + std::exp(t) * 3.0 / (d * d * d) * s;
}

std::vector<double> pd_nodes(const PdModelConfig& cfg) {
  const double h = cfg.h();
  std::vector<double> x;
  x.reserve(2 * cfg.N - 1);
  for (std::size_t i = 1; i < cfg.N; ++i) x.push_back(h * static_cast<double>(i));
  for (std::size_t j = 1; j <= cfg.N; ++j) x.push_back(h * (static_cast<double>(j) - 0.5));
  return x;
}

} // namespace tpcamg
