#pragma once

#include "tpcamg/fft.hpp"
#include "tpcamg/toeplitz.hpp"
#include "tpcamg/window.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tpcamg {

/// Banded n x n matrix with diagonals -beta..beta.
///
/// Band l holds n - |l| values; its k-th value is entry (k, k + l) for l >= 0 and
/// (k - l, k) for l < 0.
class BandedCorrection {
public:
  BandedCorrection() = default;
  BandedCorrection(std::size_t n, std::size_t bandwidth, std::vector<std::vector<double>> bands);

  static BandedCorrection diagonal(std::vector<double> diag);
  static BandedCorrection zero(std::size_t n, std::size_t bandwidth);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t bandwidth() const noexcept { return beta_; }
  [[nodiscard]] std::span<const double> band(std::ptrdiff_t l) const;
  [[nodiscard]] std::span<double> band(std::ptrdiff_t l);
  [[nodiscard]] double entry(std::size_t i, std::size_t j) const noexcept;
  [[nodiscard]] std::size_t stored() const noexcept;
  [[nodiscard]] bool is_symmetric(double tol = 0.0) const;

  /// y += B x.
  void apply_add(std::span<const double> x, std::span<double> y) const;

  /// Sum of two banded matrices of the same size; the result carries the wider band.
  friend BandedCorrection operator+(const BandedCorrection& a, const BandedCorrection& b);
  [[nodiscard]] BandedCorrection scaled(double s) const;

private:
  std::size_t n_ = 0;
  std::size_t beta_ = 0;
  std::vector<std::vector<double>> bands_;
};

/// Grid function in block order: v at the m integer nodes, w at the m+1 half nodes.
struct BlockVector {
  std::vector<double> v;
  std::vector<double> w;

  BlockVector() = default;
  BlockVector(std::vector<double> v_part, std::vector<double> w_part);
  explicit BlockVector(std::size_t m) : v(m, 0.0), w(m + 1, 0.0) {}

  static BlockVector from_flat(std::span<const double> x);
  [[nodiscard]] std::vector<double> flat() const;
  [[nodiscard]] std::size_t m() const noexcept { return v.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return v.size() + w.size(); }
};

/// Coefficients of a Toeplitz-plus-Cross operator of size n = 2m + 1.
///
/// With x = [v; w_o; wbar] (v and wbar of length m):
///   y_v    = A v + p w_o + Bbar wbar
///   y_o    = q.v + o w_o + zeta.wbar
///   y_wbar = Cbar v + xi w_o + Dbar wbar
/// plus an optional banded term over the whole vector. Cross vectors are windows
/// over indices [0, m).
struct TpcParts {
  std::size_t m = 0;
  ToeplitzSpec a, bbar, cbar, dbar;
  Window p, q, xi, zeta;
  double o = 0.0;
  std::optional<BandedCorrection> banded;
};

class TpcOperator {
public:
  TpcOperator() = default;
  explicit TpcOperator(TpcParts parts);

  /// Identity of half-size m.
  static TpcOperator identity(std::size_t m);

  [[nodiscard]] const TpcParts& parts() const noexcept { return parts_; }
  [[nodiscard]] std::size_t half_size() const noexcept { return parts_.m; }
  [[nodiscard]] std::size_t size() const noexcept { return 2 * parts_.m + 1; }

  /// y = op x on the concatenated vector.
  void apply(std::span<const double> x, std::span<double> y) const;
  [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
  /// r = b - op x.
  void residual(std::span<const double> b, std::span<const double> x, std::span<double> r) const;

  /// Entry (i, j) of the operator, read from the coefficients. O(bandwidth).
  [[nodiscard]] double entry(std::size_t i, std::size_t j) const noexcept;
  [[nodiscard]] std::vector<double> diagonal() const;
  [[nodiscard]] bool is_symmetric(double tol = 0.0) const;

  /// s * op + shift * I, with the shift on a_0, o and d_0.
  [[nodiscard]] TpcOperator scaled_shifted(double s, double shift) const;

  /// Number of stored coefficient values (windows, cross, scalar, bands).
  [[nodiscard]] std::size_t stored_coefficients() const noexcept;

private:
  TpcParts parts_;
  std::size_t len_ = 0;
  std::optional<RealFft> fft_;
  std::vector<std::complex<double>> sa_, sb_, sc_, sd_;
};

/// op x on a block vector.
BlockVector tpc_matvec(const TpcOperator& op, const BlockVector& x);

} // namespace tpcamg
