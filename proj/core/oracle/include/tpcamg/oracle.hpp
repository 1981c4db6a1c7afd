#pragma once

#include "tpcamg/tpc_operator.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

/// Brute-force dense reference implementations. Nothing here calls the fast paths
/// of the core library; operators are only read through their coefficient fields.
namespace tpcamg::oracle {

struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data; // row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  static DenseMatrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  [[nodiscard]] DenseMatrix transpose() const;
  [[nodiscard]] double max_abs() const;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
std::vector<double> dense_matvec(const DenseMatrix& a, std::span<const double> x);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

DenseMatrix dense_expand(const ToeplitzSpec& t);
DenseMatrix dense_expand(const RectToeplitzSpec& t);
DenseMatrix dense_expand(const BandedCorrection& b);
/// The full (2m+1) x (2m+1) matrix from the block coefficients.
DenseMatrix dense_expand(const TpcOperator& op);

/// Full-weighting restriction R (nc x n) and P = 2 R^T.
DenseMatrix restriction_matrix(std::size_t n);
DenseMatrix prolongation_matrix(std::size_t n);
/// R A P. Throws ArgumentError for even or too small sizes.
DenseMatrix dense_galerkin(const DenseMatrix& a);

/// LU with partial pivoting. Throws SingularError when A is singular to working precision.
std::vector<double> dense_solve(const DenseMatrix& a, std::span<const double> b);
DenseMatrix dense_inverse(const DenseMatrix& a);

/// Extreme eigenvalues of a symmetric matrix. Throws ArgumentError on asymmetry > 1e-12 (relative).
std::pair<double, double> sym_eig_extremes(const DenseMatrix& a);
/// Largest eigenvalue of the symmetric-definite pencil M v = mu A v (A SPD).
double generalized_eig_max(const DenseMatrix& m, const DenseMatrix& a);
/// Spectral radius of a general square matrix.
double spectral_radius(const DenseMatrix& a);

/// Two-grid error propagator (I - w2 D^-1 A)^m2 (I - P Ac^-1 R A) (I - w1 D^-1 A)^m1 with Ac = R A P.
DenseMatrix two_grid_matrix(const DenseMatrix& a, double omega_pre, double omega_post, int m1 = 1, int m2 = 1);
/// ||E||_A = ||A^{1/2} E A^{-1/2}||_2 for SPD A.
double a_norm(const DenseMatrix& e, const DenseMatrix& a);

/// Peridynamic stiffness on all interior nodes in block order, assembled entry by entry
/// from the coefficient lists; `collar` holds the columns of the 2(2r+1) collar nodes
/// (left collar positions -2r..0 first, then 2N..2N+2r).
struct PdDense {
  DenseMatrix a;
  DenseMatrix collar;
  std::size_t r = 1;
};
PdDense dense_pd_assembly(std::size_t N, std::size_t r, bool symmetric);

/// Gamma-model stiffness by direct integration of the quadratic Lagrange basis against
/// |x - y|^-gamma (element by element), plus the boundary weight columns; all in grid
/// units times eta_{h,gamma} h^{1-gamma}.
struct GammaDense {
  DenseMatrix a;
  std::vector<double> left, right;
};
GammaDense dense_gamma_assembly(std::size_t N, double gamma);

/// int_a^b (u(x) - u(y)) |x - y|^-gamma dy by adaptive Gauss-Kronrod quadrature split at y = x.
double quadrature_nonlocal(const std::vector<double>& poly, double x, double gamma, double a = 0.0,
                           double b = 1.0);

struct CheckLine {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string detail;
};

struct TheoryReport {
  std::vector<CheckLine> checks;
  [[nodiscard]] bool all_pass() const;
};

/// Dense certification of the SPD convergence-theory inequalities for a symmetric operator:
/// zero interior row sums (given the row-sum vector of the full-domain operator), weak
/// diagonal dominance, lambda_min(A) > 0, lambda_max(D^-1 A) in [1, 2], the smoothing PSD
/// condition at omega = 1/2, the approximation constant mu* <= 24, and the two-grid factor
/// <= sqrt(47/48).
TheoryReport certify_theory(const DenseMatrix& a, std::span<const double> full_row_sums,
                                double omega_pre = 1.0, double omega_post = 0.5);

} // namespace tpcamg::oracle
