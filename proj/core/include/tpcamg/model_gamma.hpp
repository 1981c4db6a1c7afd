#pragma once

#include "tpcamg/manufactured.hpp"
#include "tpcamg/tpc_operator.hpp"

#include <cstddef>
#include <vector>

namespace tpcamg {

/// Nonlocal diffusion with kernel |x - y|^-gamma on (a, b), quadratic collocation
/// at the integer and half nodes of a uniform grid with N cells.
struct GammaModelConfig {
  std::size_t N = 32;
  double gamma = 0.0;
  double a = 0.0;
  double b = 1.0;

  [[nodiscard]] double h() const noexcept { return (b - a) / static_cast<double>(N); }
  /// eta_{h,gamma} = (3-g)(2-g)(1-g) / h^{1-g}.
  [[nodiscard]] double scale() const;
  /// Throws ConfigError or DomainError.
  void validate() const;
};

/// Generating coefficients of the gamma-model stiffness, in grid units.
///
/// Index k is the distance in cells: m_k integer row / integer node, q_k integer
/// row / half node at distance k + 1/2, p_k half row / integer node at distance
/// k + 1/2, n_k half row / half node. d and eta are indexed by the half-unit
/// position i (value at x = i h / 2): d has 2N + 1 entries, eta[i] is the weight
/// of a boundary node at distance i/2 cells (eta[0] unused).
struct GammaCoefficients {
  double gamma = 0.0;
  std::vector<double> m, n, p, q;
  std::vector<double> d;
  std::vector<double> eta;
};

/// Coefficients m, n, p, q for k = 0..count and d, eta for a grid of count cells.
GammaCoefficients gamma_coefficients(double gamma, std::size_t count);

struct GammaSystem {
  GammaModelConfig cfg;
  /// diag(d) minus the Toeplitz collocation weights; m = N - 1.
  TpcOperator op;
  double scale = 1.0;
  /// Boundary weight vectors: K = left * u(a) + right * u(b).
  BlockVector left, right;
  BlockVector boundaryK;

  [[nodiscard]] BlockVector boundary(double ua, double ub) const;
};

GammaSystem assemble_gamma_system(const GammaModelConfig& cfg, double ua = 0.0, double ub = 0.0);

/// int_a^b (u(x) - u(y)) |x - y|^-gamma dy for polynomial u, in closed form.
double gamma_nonlocal_term(const Polynomial& u, double x, double gamma, double a = 0.0, double b = 1.0);

/// f = u_t + int (u(x) - u(y)) |x - y|^-gamma dy for u = e^t p(x).
double gamma_exact_forcing(const ExpPolySolution& u, double x, double t, double gamma,
                           double a = 0.0, double b = 1.0);
/// Same for the default solution e^t (1 + x)^6 on (0, 1).
double gamma_exact_forcing(double x, double t, double gamma);

/// Node coordinates in block order (integer nodes x_1..x_{N-1}, then half nodes).
std::vector<double> gamma_nodes(const GammaModelConfig& cfg);

} // namespace tpcamg
