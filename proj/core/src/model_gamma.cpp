#include "tpcamg/model_gamma.hpp"

#include "tpcamg/errors.hpp"

#include <cmath>

namespace tpcamg {

namespace {

using index_t = std::ptrdiff_t;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

double GammaModelConfig::scale() const {
  const double g = gamma;
  return (3.0 - g) * (2.0 - g) * (1.0 - g) / std::pow(h(), 1.0 - g);
}

void GammaModelConfig::validate() const {
  if (!is_power_of_two(N) || N < 4) throw ConfigError("gamma model: N must be a power of two >= 4");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma model: gamma must lie in [0, 1)");
  if (!(b > a)) throw ConfigError("gamma model: need a < b");
}

GammaCoefficients gamma_coefficients(double gamma, std::size_t count) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma_coefficients: gamma must lie in [0, 1)");
  if (count < 1) throw ArgumentError("gamma_coefficients: count must be positive");
  const double g = gamma, s3 = 3.0 - g, s2 = 2.0 - g, s1 = 1.0 - g;
  auto pw = [](double x, double e) { return x <= 0.0 ? 0.0 : std::pow(x, e); };
  auto mf = [&](double k) {
    return 4.0 * (pw(k + 1, s3) - pw(k - 1, s3)) - s3 * (pw(k + 1, s2) + 6.0 * pw(k, s2) + pw(k - 1, s2));
  };
  auto qf = [&](double k) { return -8.0 * (pw(k + 1, s3) - pw(k, s3)) + 4.0 * s3 * (pw(k + 1, s2) + pw(k, s2)); };

  GammaCoefficients c;
  c.gamma = g;
  c.m.resize(count + 1);
  c.n.resize(count + 1);
  c.p.resize(count + 1);
  c.q.resize(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    const auto kd = static_cast<double>(k);
    c.m[k] = k == 0 ? 2.0 * (1.0 + g) : mf(kd);
    c.q[k] = qf(kd);
    c.p[k] = k == 0 ? 4.0 * (pw(1.5, s3) + pw(0.5, s3)) - s3 * (pw(1.5, s2) + 7.0 * pw(0.5, s2))
                    : mf(kd + 0.5);
    c.n[k] = k == 0 ? s2 * std::pow(2.0, g + 1.0) : qf(kd - 0.5);
  }

  const auto N = static_cast<double>(count);
  c.d.resize(2 * count + 1);
  for (std::size_t i = 0; i <= 2 * count; ++i) {
    const double x = 0.5 * static_cast<double>(i);
    c.d[i] = s3 * s2 * (pw(x, s1) + pw(N - x, s1));
  }
  c.eta.assign(2 * count + 1, 0.0);
  c.eta[1] = s2 * s1 * std::pow(2.0, g - 1.0);
  for (std::size_t i = 2; i <= 2 * count; ++i) {
    const double x = 0.5 * static_cast<double>(i);
    c.eta[i] = 4.0 * (pw(x, s3) - pw(x - 1, s3)) - s3 * (3.0 * pw(x, s2) + pw(x - 1, s2) - s2 * pw(x, s1));
  }
  return c;
}

BlockVector GammaSystem::boundary(double ua, double ub) const {
  BlockVector k(left.m());
  for (std::size_t i = 0; i < k.v.size(); ++i) k.v[i] = left.v[i] * ua + right.v[i] * ub;
  for (std::size_t i = 0; i < k.w.size(); ++i) k.w[i] = left.w[i] * ua + right.w[i] * ub;
  return k;
}

GammaSystem assemble_gamma_system(const GammaModelConfig& cfg, double ua, double ub) {
  cfg.validate();
  const std::size_t N = cfg.N, m = N - 1;
  const auto c = gamma_coefficients(cfg.gamma, N);
  const auto mi = static_cast<index_t>(m);

  // Block coefficients as functions of (column - row) inside each block.
  auto alpha = [&](index_t l) { return -c.m[static_cast<std::size_t>(std::abs(l))]; };
  auto beta = [&](index_t l) { return -(l <= 0 ? c.q[static_cast<std::size_t>(-l)] : c.q[static_cast<std::size_t>(l - 1)]); };
  auto gam = [&](index_t l) { return -(l >= 0 ? c.p[static_cast<std::size_t>(l)] : c.p[static_cast<std::size_t>(-l - 1)]); };
  auto delta = [&](index_t l) { return -c.n[static_cast<std::size_t>(std::abs(l))]; };

  std::vector<double> va, vb, vc, vd;
  for (index_t l = -(mi - 1); l <= mi - 1; ++l) {
    va.push_back(alpha(l));
    vb.push_back(beta(l + 1));
    vc.push_back(gam(l - 1));
    vd.push_back(delta(l));
  }
  std::vector<double> p(m), q(m), xi(m), zeta(m);
  for (index_t i = 0; i < mi; ++i) {
    const auto k = static_cast<std::size_t>(i);
    p[k] = beta(-i);
    q[k] = gam(i);
    xi[k] = delta(-i - 1);
    zeta[k] = delta(i + 1);
  }

  std::vector<double> diag(2 * m + 1);
  for (std::size_t i = 1; i <= m; ++i) diag[i - 1] = c.d[2 * i];
  for (std::size_t j = 1; j <= N; ++j) diag[m + j - 1] = c.d[2 * j - 1];

  TpcParts parts;
  parts.m = m;
  parts.a = ToeplitzSpec(m, Window(-(mi - 1), std::move(va)));
  parts.bbar = ToeplitzSpec(m, Window(-(mi - 1), std::move(vb)));
  parts.cbar = ToeplitzSpec(m, Window(-(mi - 1), std::move(vc)));
  parts.dbar = ToeplitzSpec(m, Window(-(mi - 1), std::move(vd)));
  parts.p = Window::dense(std::move(p));
  parts.q = Window::dense(std::move(q));
  parts.xi = Window::dense(std::move(xi));
  parts.zeta = Window::dense(std::move(zeta));
  parts.o = delta(0);
  parts.banded = BandedCorrection::diagonal(std::move(diag));

  GammaSystem sys;
  sys.cfg = cfg;
  sys.op = TpcOperator(std::move(parts));
  sys.scale = cfg.scale();
  sys.left = BlockVector(m);
  sys.right = BlockVector(m);
  for (std::size_t j = 1; j <= m; ++j) {
    sys.left.v[j - 1] = c.eta[2 * j];
    sys.right.v[j - 1] = c.eta[2 * N - 2 * j];
  }
  for (std::size_t j = 1; j <= N; ++j) {
    sys.left.w[j - 1] = c.eta[2 * j - 1];
    sys.right.w[j - 1] = c.eta[2 * N - 2 * j + 1];
  }
  sys.boundaryK = sys.boundary(ua, ub);
  return sys;
}

double gamma_nonlocal_term(const Polynomial& u, double x, double gamma, double a, double b) {
  if (x < a || x > b) throw ArgumentError("gamma_nonlocal_term: x outside [a, b]");
  // u(y) - u(x) = sum_k u^(k)(x)/k! (y-x)^k; each power integrates against |y-x|^-gamma on both sides.
  double s = 0.0, fact = 1.0;
  for (std::size_t k = 1; k <= u.degree(); ++k) {
    fact *= static_cast<double>(k);
    const double taylor = u.derivative(k)(x) / fact;
    const double e = static_cast<double>(k) + 1.0 - gamma;
    const double right = std::pow(b - x, e);
    const double left = std::pow(x - a, e);
    s -= taylor * (right + (k % 2 == 0 ? left : -left)) / e;
  }
  return s;
}

double gamma_exact_forcing(const ExpPolySolution& u, double x, double t, double gamma, double a, double b) {
  return u.time_derivative(x, t) + std::exp(t) * gamma_nonlocal_term(u.p, x, gamma, a, b);
}

double gamma_exact_forcing(double x, double t, double gamma) {
  static const ExpPolySolution u{};
  return gamma_exact_forcing(u, x, t, gamma, 0.0, 1.0);
}

std::vector<double> gamma_nodes(const GammaModelConfig& cfg) {
  const double h = cfg.h();
  std::vector<double> x;
  x.reserve(2 * cfg.N - 1);
  for (std::size_t i = 1; i < cfg.N; ++i) x.push_back(cfg.a + h * static_cast<double>(i));
  for (std::size_t j = 1; j <= cfg.N; ++j) x.push_back(cfg.a + h * (static_cast<double>(j) - 0.5));
  return x;
}

} // namespace tpcamg
