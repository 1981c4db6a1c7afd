#pragma once

#include "tpcamg/tpc_operator.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tpcamg {

/// Full weighting, (Rx)_i = (x_{2i} + 2 x_{2i+1} + x_{2i+2}) / 4 (0-based), on the
/// block-ordered vector as is.
std::vector<double> restrict_vector(std::span<const double> x);
void restrict_vector(std::span<const double> x, std::span<double> out);

/// P = 2 R^T.
std::vector<double> prolong_vector(std::span<const double> xc);
/// fine += P xc.
void prolong_add(std::span<const double> xc, std::span<double> fine);

/// Galerkin coarse operator R A P of the Toeplitz and cross parts, in closed form.
/// The banded part, if any, is ignored. Throws CoarsestLevelReached when m < 3.
TpcOperator coarsen_tpc(const TpcOperator& fine);

/// R B P for a banded matrix of odd size; bandwidth b becomes floor(b/2) + 1.
BandedCorrection coarsen_banded(const BandedCorrection& fine);

/// Toeplitz part and banded part coarsened separately and recombined.
TpcOperator coarsen(const TpcOperator& fine);

/// LU factorization with partial pivoting of a small dense matrix.
class DenseLu {
public:
  DenseLu() = default;
  /// Row-major n x n entries. Throws SingularError on a zero pivot.
  DenseLu(std::size_t n, std::vector<double> entries);
  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  void solve(std::span<const double> b, std::span<double> x) const;

private:
  std::size_t n_ = 0;
  std::vector<double> lu_;
  std::vector<std::size_t> piv_;
};

/// Level stack from finest (index 0) to coarsest, with per-level inverse diagonals
/// and a dense factorization of the coarsest operator.
class Hierarchy {
public:
  Hierarchy() = default;
  Hierarchy(std::vector<TpcOperator> levels);

  [[nodiscard]] std::size_t depth() const noexcept { return levels_.size(); }
  [[nodiscard]] const TpcOperator& level(std::size_t k) const { return levels_.at(k); }
  [[nodiscard]] const std::vector<TpcOperator>& levels() const noexcept { return levels_; }
  [[nodiscard]] std::span<const double> inverse_diagonal(std::size_t k) const { return inv_diag_.at(k); }
  [[nodiscard]] const DenseLu& coarsest() const noexcept { return lu_; }
  [[nodiscard]] std::size_t stored_coefficients() const noexcept;

  /// One JSON object per level with the named coefficient arrays.
  [[nodiscard]] std::string to_json() const;

private:
  std::vector<TpcOperator> levels_;
  std::vector<std::vector<double>> inv_diag_;
  DenseLu lu_;
};

/// Coarsens until the operator size is at most coarsest_size_limit (>= 3).
Hierarchy build_hierarchy(const TpcOperator& finest, std::size_t coarsest_size_limit = 7);

/// At most max_levels levels; the last one is still factored densely.
Hierarchy build_hierarchy_levels(const TpcOperator& finest, std::size_t max_levels);

} // namespace tpcamg
