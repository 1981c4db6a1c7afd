#pragma once

#include "tpcamg/manufactured.hpp"
#include "tpcamg/tpc_operator.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace tpcamg {

/// Horizon: a fixed length, or sqrt(h) tied to the grid.
struct Horizon {
  enum class Kind { Value, SqrtH };
  Kind kind = Kind::Value;
  double value = 0.25;

  static Horizon fixed(double d) { return {Kind::Value, d}; }
  static Horizon sqrt_h() { return {Kind::SqrtH, 0.0}; }
  /// "sqrt-h" or a decimal number.
  static Horizon parse(const std::string& text);
  [[nodiscard]] std::string str() const;
};

/// Constant-kernel peridynamic diffusion on (0, 1) with a collar of width delta
/// on each side.
struct PdModelConfig {
  std::size_t N = 32;
  Horizon delta;
  bool symmetricVariant = true;

  [[nodiscard]] double h() const noexcept { return 1.0 / static_cast<double>(N); }
  /// Cells per horizon, floor(delta / h) and at least 1. For sqrt(h) this is
  /// floor(sqrt(N)) in integer arithmetic.
  [[nodiscard]] std::size_t r() const;
  /// Horizon actually resolved by the stencil, r h.
  [[nodiscard]] double effective_delta() const { return static_cast<double>(r()) * h(); }
  /// eta_h = 2 delta^3 / h.
  [[nodiscard]] double scale() const;
  void validate() const;
};

/// Coefficient lists by distance in cells: a[k] (k = 0..r), a_half[k] = a_{k+1/2}
/// (k = 0..r-1), c[k] and d[k] (k = 0..r) for the half rows of the nonsymmetric system.
struct PdCoefficients {
  std::size_t r = 1;
  std::vector<double> a, a_half, c, d;
};

PdCoefficients pd_coefficients(std::size_t r, bool symmetricVariant);

/// Weight between a row at half-unit position row_pos and a node at col_pos.
/// Integer nodes sit at even positions.
double pd_weight(const PdCoefficients& c, bool symmetricVariant, std::ptrdiff_t row_pos,
                 std::ptrdiff_t col_pos);

/// Boundary vectors of the folding step: wA = (a_1..a_r, 0), wB = (a_{3/2}..a_{r-1/2}, 0),
/// wC = (c_0..c_r), wD = (d_1..d_r). The symmetric variant uses a_{k+1/2} for wC and
/// a_k for wD.
struct FoldVectors {
  std::vector<double> wA, wB, wC, wD;
};

struct PdSystem {
  PdModelConfig cfg;
  std::size_t r = 1;
  PdCoefficients coeffs;
  TpcOperator op;
  double scale = 1.0;
  FoldVectors fold;
};

PdSystem assemble_pd_system(const PdModelConfig& cfg);

/// Samples of the solution on the collars: left at half-unit positions -2r..0,
/// right at 2N..2N+2r (2r + 1 values each, ordered by position).
struct PdCollar {
  std::vector<double> left, right;
};

/// Collar x-coordinates in the same order as PdCollar.
PdCollar pd_collar_positions(const PdModelConfig& cfg);
PdCollar sample_collar(const PdModelConfig& cfg, const std::function<double(double)>& g);

/// F - G / eta_h, where G moves the known collar columns to the right-hand side.
/// The system to solve is then op U = eta_h * result.
BlockVector fold_boundary_rhs(const PdSystem& sys, const BlockVector& F, const PdCollar& g);

/// f = u_t + (3 / delta^3) int_{|s| < delta} (u(x) - u(x + s)) ds for u = e^t p(x),
/// with delta the effective horizon.
double pd_exact_forcing(const PdModelConfig& cfg, const ExpPolySolution& u, double x, double t);

/// Interior node coordinates in block order.
std::vector<double> pd_nodes(const PdModelConfig& cfg);

} // namespace tpcamg
