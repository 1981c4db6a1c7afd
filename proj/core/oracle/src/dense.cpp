#include "tpcamg/oracle.hpp"

#include "tpcamg/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace tpcamg::oracle {

namespace {

using index_t = std::ptrdiff_t;
using EMat = Eigen::MatrixXd;

EMat to_eigen(const DenseMatrix& a) {
  EMat m(static_cast<index_t>(a.rows), static_cast<index_t>(a.cols));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m(static_cast<index_t>(i), static_cast<index_t>(j)) = a(i, j);
  return m;
}

DenseMatrix from_eigen(const EMat& m) {
  DenseMatrix a(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) a(i, j) = m(static_cast<index_t>(i), static_cast<index_t>(j));
  return a;
}

void require_square(const DenseMatrix& a, const char* what) {
  if (a.rows != a.cols) throw ArgumentError(std::string(what) + ": matrix must be square");
}

} // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const {
  double s = 0.0;
  for (double v : data) s = std::max(s, std::abs(v));
  return s;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) throw ArgumentError("DenseMatrix product: inner dimensions differ");
  DenseMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double v = a(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += v * b(k, j);
    }
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw ArgumentError("DenseMatrix sum: shapes differ");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) { return a + (-1.0) * b; }

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (double& v : c.data) v *= s;
  return c;
}

std::vector<double> dense_matvec(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols) throw ArgumentError("dense_matvec: length mismatch");
  std::vector<double> y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw ArgumentError("max_abs_diff: shapes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s = std::max(s, std::abs(a.data[i] - b.data[i]));
  return s;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("max_abs_diff: lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

DenseMatrix dense_expand(const ToeplitzSpec& t) {
  const std::size_t m = t.size();
  DenseMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = t(static_cast<index_t>(j) - static_cast<index_t>(i));
  return a;
}

DenseMatrix dense_expand(const RectToeplitzSpec& t) {
  DenseMatrix a(t.rows(), t.cols());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) a(i, j) = t(static_cast<index_t>(j) - static_cast<index_t>(i));
  return a;
}

DenseMatrix dense_expand(const BandedCorrection& b) {
  const std::size_t n = b.size();
  DenseMatrix a(n, n);
  const auto beta = static_cast<index_t>(b.bandwidth());
  for (index_t l = -beta; l <= beta; ++l) {
    const auto band = b.band(l);
    for (std::size_t k = 0; k < band.size(); ++k) {
      const std::size_t i = l >= 0 ? k : k + static_cast<std::size_t>(-l);
      const std::size_t j = l >= 0 ? k + static_cast<std::size_t>(l) : k;
      a(i, j) = band[k];
    }
  }
  return a;
}

DenseMatrix dense_expand(const TpcOperator& op) {
  const TpcParts& p = op.parts();
  const std::size_t m = p.m, n = 2 * m + 1;
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const index_t l = static_cast<index_t>(j) - static_cast<index_t>(i);
      a(i, j) = p.a(l);
      a(i, m + 1 + j) = p.bbar(l);
      a(m + 1 + i, j) = p.cbar(l);
      a(m + 1 + i, m + 1 + j) = p.dbar(l);
    }
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = static_cast<index_t>(i);
    a(i, m) = p.p(k);
    a(m, i) = p.q(k);
    a(m + 1 + i, m) = p.xi(k);
    a(m, m + 1 + i) = p.zeta(k);
  }
  a(m, m) = p.o;
  if (p.banded) a = a + dense_expand(*p.banded);
  return a;
}

DenseMatrix restriction_matrix(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw ArgumentError("restriction_matrix: size must be odd and >= 3");
  const std::size_t nc = (n - 1) / 2;
  DenseMatrix r(nc, n);
  for (std::size_t i = 0; i < nc; ++i) {
    r(i, 2 * i) = 0.25;
    r(i, 2 * i + 1) = 0.5;
    r(i, 2 * i + 2) = 0.25;
  }
  return r;
}

DenseMatrix prolongation_matrix(std::size_t n) { return 2.0 * restriction_matrix(n).transpose(); }

DenseMatrix dense_galerkin(const DenseMatrix& a) {
  require_square(a, "dense_galerkin");
  return restriction_matrix(a.rows) * a * prolongation_matrix(a.rows);
}

std::vector<double> dense_solve(const DenseMatrix& a, std::span<const double> b) {
  require_square(a, "dense_solve");
  if (b.size() != a.rows) throw ArgumentError("dense_solve: length mismatch");
  const EMat m = to_eigen(a);
  Eigen::PartialPivLU<EMat> lu(m);
  if (!(lu.rcond() > 1e-15)) throw SingularError("dense_solve: matrix is singular to working precision");
  const Eigen::VectorXd x = lu.solve(Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<index_t>(b.size())));
  return {x.data(), x.data() + x.size()};
}

DenseMatrix dense_inverse(const DenseMatrix& a) {
  require_square(a, "dense_inverse");
  Eigen::PartialPivLU<EMat> lu(to_eigen(a));
  if (!(lu.rcond() > 1e-15)) throw SingularError("dense_inverse: matrix is singular to working precision");
  return from_eigen(lu.inverse());
}

std::pair<double, double> sym_eig_extremes(const DenseMatrix& a) {
  require_square(a, "sym_eig_extremes");
  const double scale = std::max(1.0, a.max_abs());
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale) throw ArgumentError("sym_eig_extremes: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(a), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

double generalized_eig_max(const DenseMatrix& m, const DenseMatrix& a) {
  require_square(m, "generalized_eig_max");
  const EMat M = to_eigen(m), A = to_eigen(a);
  Eigen::GeneralizedSelfAdjointEigenSolver<EMat> es(0.5 * (M + M.transpose()), 0.5 * (A + A.transpose()),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ArgumentError("generalized_eig_max: A is not positive definite");
  return es.eigenvalues().maxCoeff();
}

double spectral_radius(const DenseMatrix& a) {
  require_square(a, "spectral_radius");
  Eigen::EigenSolver<EMat> es(to_eigen(a), false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

DenseMatrix two_grid_matrix(const DenseMatrix& a, double omega_pre, double omega_post, int m1, int m2) {
  require_square(a, "two_grid_matrix");
  const std::size_t n = a.rows;
  const DenseMatrix I = DenseMatrix::identity(n);
  DenseMatrix dinv(n, n);
  for (std::size_t i = 0; i < n; ++i) dinv(i, i) = 1.0 / a(i, i);
  const DenseMatrix R = restriction_matrix(n), P = prolongation_matrix(n);
  const DenseMatrix ac = R * a * P;
  const DenseMatrix T = I - P * dense_inverse(ac) * R * a;
  DenseMatrix E = T;
  const DenseMatrix S1 = I - omega_pre * (dinv * a), S2 = I - omega_post * (dinv * a);
  for (int k = 0; k < m1; ++k) E = E * S1;
  for (int k = 0; k < m2; ++k) E = S2 * E;
  return E;
}

double a_norm(const DenseMatrix& e, const DenseMatrix& a) {
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(a));
  const EMat half = es.operatorSqrt();
  const EMat inv_half = es.operatorInverseSqrt();
  const EMat x = half * to_eigen(e) * inv_half;
  Eigen::JacobiSVD<EMat> svd(x);
  return svd.singularValues()(0);
}

PdDense dense_pd_assembly(std::size_t N, std::size_t r, bool symmetric) {
  if (r < 1) throw DomainError("dense_pd_assembly: r must be >= 1");
  // Coefficients by distance in half cells, straight from the lists.
  const double rd = static_cast<double>(r);
  auto coef = [&](index_t row, index_t col) -> double {
    const auto d = static_cast<std::size_t>(std::abs(row - col));
    const std::size_t k = d / 2;
    const bool half_row = row % 2 != 0;
    if (d % 2 == 0) {
      if (k > r) return 0.0;
      if (half_row && !symmetric) return k == 0 ? 12.0 * rd - 4.0 : (k == r ? -2.0 : -4.0);
      return k == 0 ? 12.0 * rd - 2.0 : (k == r ? -1.0 : -2.0);
    }
    if (half_row && !symmetric) {
      if (k > r) return 0.0;
      if (k == r) return 0.25;
      if (k + 1 == r) return -2.25;
      return -2.0;
    }
    return k < r ? -4.0 : 0.0;
  };
  std::vector<index_t> pos, collar;
  for (std::size_t j = 1; j < N; ++j) pos.push_back(2 * static_cast<index_t>(j));
  for (std::size_t j = 1; j <= N; ++j) pos.push_back(2 * static_cast<index_t>(j) - 1);
  const auto w = static_cast<index_t>(2 * r);
  for (index_t k = -w; k <= 0; ++k) collar.push_back(k);
  for (index_t k = 0; k <= w; ++k) collar.push_back(2 * static_cast<index_t>(N) + k);
  PdDense out;
  out.r = r;
  out.a = DenseMatrix(pos.size(), pos.size());
  out.collar = DenseMatrix(pos.size(), collar.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = 0; j < pos.size(); ++j) out.a(i, j) = coef(pos[i], pos[j]);
    for (std::size_t j = 0; j < collar.size(); ++j) out.collar(i, j) = coef(pos[i], collar[j]);
  }
  return out;
}

GammaDense dense_gamma_assembly(std::size_t N, double g) {
  // int_0^1 L(s) |s - s0|^-g ds for the three quadratic Lagrange functions on the unit element.
  auto elem = [g](double s0) {
    auto F = [g](double t, int k) {
      if (t == 0.0) return 0.0;
      const double sgn = (t < 0.0 && (k + 1) % 2 != 0) ? -1.0 : 1.0;
      return sgn * std::pow(std::abs(t), k + 1 - g) / (k + 1 - g);
    };
    std::array<double, 3> res{};
    const double polys[3][3] = {{2, -3, 1}, {-4, 4, 0}, {2, -1, 0}};
    for (int b = 0; b < 3; ++b) {
      const double a2 = polys[b][0], a1 = polys[b][1], a0 = polys[b][2];
      const double c2 = a2, c1 = 2 * a2 * s0 + a1, c0 = a2 * s0 * s0 + a1 * s0 + a0;
      res[static_cast<std::size_t>(b)] = c0 * (F(1 - s0, 0) - F(-s0, 0)) + c1 * (F(1 - s0, 1) - F(-s0, 1)) +
                                         c2 * (F(1 - s0, 2) - F(-s0, 2));
    }
    return res;
  };
  const double factor = (3 - g) * (2 - g) * (1 - g);
  const std::size_t P = 2 * N + 1;
  DenseMatrix W(P, P);
  for (std::size_t i = 1; i + 1 < P; ++i)
    for (std::size_t e = 0; e < N; ++e) {
      const auto v = elem(0.5 * static_cast<double>(i) - static_cast<double>(e));
      for (std::size_t loc = 0; loc < 3; ++loc) W(i, 2 * e + loc) += v[loc] * factor;
    }
  std::vector<std::size_t> order;
  for (std::size_t j = 1; j < N; ++j) order.push_back(2 * j);
  for (std::size_t j = 1; j <= N; ++j) order.push_back(2 * j - 1);
  GammaDense out;
  out.a = DenseMatrix(order.size(), order.size());
  const auto Nd = static_cast<double>(N);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double x = 0.5 * static_cast<double>(order[i]);
    const double d = (3 - g) * (2 - g) * (std::pow(x, 1 - g) + std::pow(Nd - x, 1 - g));
    for (std::size_t j = 0; j < order.size(); ++j) out.a(i, j) = (i == j ? d : 0.0) - W(order[i], order[j]);
    out.left.push_back(W(order[i], 0));
    out.right.push_back(W(order[i], P - 1));
  }
  return out;
}

double quadrature_nonlocal(const std::vector<double>& poly, double x, double gamma, double a, double b) {
  auto u = [&](double y) {
    double s = 0.0;
    for (std::size_t k = poly.size(); k-- > 0;) s = s * y + poly[k];
    return s;
  };
  const double ux = u(x);
  // With d = L s^q, q = 1 / (1 - gamma), the weight d^-gamma cancels the Jacobian.
  const double q = 1.0 / (1.0 - gamma);
  using boost::math::quadrature::gauss_kronrod;
  auto side = [&](double len, double dir) {
    if (len <= 0.0) return 0.0;
    auto f = [&](double s) { return ux - u(x + dir * len * std::pow(s, q)); };
    return q * std::pow(len, 1.0 - gamma) * gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-15);
  };
  const double s = side(x - a, -1.0) + side(b - x, 1.0);
  return s;
}

bool TheoryReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

TheoryReport certify_theory(const DenseMatrix& a, std::span<const double> full_row_sums, double omega_pre,
                                double omega_post) {
  require_square(a, "certify_theory");
  const std::size_t n = a.rows;
  if (full_row_sums.size() != n) throw ArgumentError("certify_theory: row-sum vector has the wrong length");
  TheoryReport rep;
  double dmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) dmax = std::max(dmax, std::abs(a(i, i)));

  double rs = 0.0;
  for (double v : full_row_sums) rs = std::max(rs, std::abs(v));
  rep.checks.push_back({"zero_row_sums", rs, 1e-12 * dmax, rs <= 1e-12 * dmax, "max |row sum| of the full-domain operator"});

  double dom = -1e300;
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) off += std::abs(a(i, j));
    dom = std::max(dom, off - a(i, i));
  }
  rep.checks.push_back({"weak_diagonal_dominance", dom, 1e-12 * dmax, dom <= 1e-12 * dmax, "max_i sum_j!=i |a_ij| - a_ii"});

  const auto [lmin, lmax] = sym_eig_extremes(a);
  rep.checks.push_back({"spd_lambda_min", lmin, 0.0, lmin > 0.0, "smallest eigenvalue of A"});

  DenseMatrix dh(n, n), dinv(n, n), D(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    D(i, i) = a(i, i);
    dinv(i, i) = 1.0 / a(i, i);
    dh(i, i) = 1.0 / std::sqrt(a(i, i));
  }
  const double lj = sym_eig_extremes(dh * a * dh).second;
  rep.checks.push_back({"jacobi_lambda_max", lj, 2.0, lj >= 1.0 - 1e-10 && lj <= 2.0 + 1e-10, "lambda_max(D^-1 A), must lie in [1, 2]"});

  const DenseMatrix I = DenseMatrix::identity(n);
  const DenseMatrix S = I - 0.5 * (dinv * a);
  const DenseMatrix M = a - 0.5 * (a * dinv * a) - S.transpose() * a * S;
  const double psd = sym_eig_extremes(0.5 * (M + M.transpose())).first;
  rep.checks.push_back({"smoothing_psd", psd, -1e-10 * lmax, psd >= -1e-10 * lmax,
                        "lambda_min(A - A D^-1 A / 2 - S^T A S), omega = 1/2"});

  const DenseMatrix P = prolongation_matrix(n), Pt = P.transpose();
  const DenseMatrix proj = D - D * P * dense_inverse(Pt * D * P) * Pt * D;
  const double mu = generalized_eig_max(proj, a);
  rep.checks.push_back({"approximation_mu", mu, 24.0, mu <= 24.0, "max over v of min_vc ||v - P vc||_D^2 / ||v||_A^2"});

  const double bound = std::sqrt(47.0 / 48.0);
  const double rho = spectral_radius(two_grid_matrix(a, omega_pre, omega_post));
  rep.checks.push_back({"tgm_factor", rho, bound, rho <= bound, "spectral radius of the V(1,1) two-grid propagator"});
  const double post = a_norm(two_grid_matrix(a, omega_pre, 0.5, 0, 1), a);
  rep.checks.push_back({"tgm_post_a_norm", post, bound, post <= bound, "||(I - D^-1 A / 2) T||_A"});
  return rep;
}

} // namespace tpcamg::oracle
