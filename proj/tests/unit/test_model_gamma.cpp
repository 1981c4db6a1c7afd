#include "tpcamg/errors.hpp"
#include "tpcamg/model_gamma.hpp"
#include "tpcamg/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tpcamg;
namespace orc = tpcamg::oracle;

TEST(GammaCoefficients, ClosedFormsAtZero) {
  const auto c = gamma_coefficients(0.0, 8);
  EXPECT_DOUBLE_EQ(c.m[0], 2.0);
  EXPECT_DOUBLE_EQ(c.n[0], 4.0);
  EXPECT_DOUBLE_EQ(c.q[0], 4.0);
  EXPECT_DOUBLE_EQ(c.m[1], 2.0);
  EXPECT_DOUBLE_EQ(c.eta[1], 1.0);
}

TEST(GammaCoefficients, HalfIndexRelations) {
  const double g = 0.3;
  const auto c = gamma_coefficients(g, 6);
  const double s3 = 3 - g, s2 = 2 - g;
  auto mf = [&](double k) {
    return 4 * (std::pow(k + 1, s3) - std::pow(k - 1, s3)) - s3 * (std::pow(k + 1, s2) + 6 * std::pow(k, s2) + std::pow(k - 1, s2));
  };
  auto qf = [&](double k) { return -8 * (std::pow(k + 1, s3) - std::pow(k, s3)) + 4 * s3 * (std::pow(k + 1, s2) + std::pow(k, s2)); };
  for (int k = 1; k <= 6; ++k) {
    EXPECT_NEAR(c.p[k], mf(k + 0.5), 1e-12);
    EXPECT_NEAR(c.n[k], qf(k - 0.5), 1e-12);
  }
}

TEST(GammaCoefficients, HalfColumnWeightMatchesBasisIntegral) {
  // p_0 is the half-row weight of the nearest integer node; compare with direct integration.
  const auto c = gamma_coefficients(0.5, 8);
  const auto d = orc::dense_gamma_assembly(8, 0.5);
  const std::size_t m = 7;
  EXPECT_NEAR(c.p[0], 0.94983, 5e-6);
  EXPECT_NEAR(-d.a(m + 1, 0), c.p[0], 1e-12);
}

TEST(GammaCoefficients, DomainErrors) {
  EXPECT_THROW(gamma_coefficients(1.0, 4), DomainError);
  EXPECT_THROW(gamma_coefficients(-0.1, 4), DomainError);
  EXPECT_THROW(gamma_coefficients(0.5, 0), ArgumentError);
}

TEST(GammaCoefficients, DiagonalPositive) {
  for (double g : {0.0, 0.25, 0.5, 0.75, 0.99}) {
    const auto c = gamma_coefficients(g, 32);
    for (std::size_t i = 1; i < c.d.size(); ++i) EXPECT_GT(c.d[i], 0.0) << g << " " << i;
  }
}

TEST(GammaSystem, ConstantDiagonalAtZero) {
  const auto sys = assemble_gamma_system({4, 0.0});
  const auto& b = *sys.op.parts().banded;
  EXPECT_EQ(b.bandwidth(), 0u);
  for (double v : b.band(0)) EXPECT_NEAR(v, 24.0, 1e-13);
}

TEST(GammaSystem, ZeroBoundaryData) {
  const auto sys = assemble_gamma_system({8, 0.5}, 0.0, 0.0);
  for (double v : sys.boundaryK.flat()) EXPECT_EQ(v, 0.0);
}

TEST(GammaSystem, ScaleFormula) {
  const GammaModelConfig cfg{16, 0.5};
  EXPECT_NEAR(cfg.scale(), 2.5 * 1.5 * 0.5 / std::sqrt(1.0 / 16), 1e-12);
}

TEST(GammaSystem, MatchesDirectIntegration) {
  for (std::size_t N : {4u, 8u, 16u})
    for (double g : {0.0, 0.5, 0.9}) {
      const auto sys = assemble_gamma_system({N, g}, 1.0, 1.0);
      const auto ref = orc::dense_gamma_assembly(N, g);
      const auto dense = orc::dense_expand(sys.op);
      const double tol = 1e-12 * std::max(1.0, ref.a.max_abs());
      EXPECT_LE(orc::max_abs_diff(dense, ref.a), tol) << "N=" << N << " g=" << g;
      EXPECT_LE(orc::max_abs_diff(sys.left.flat(), ref.left), tol);
      EXPECT_LE(orc::max_abs_diff(sys.right.flat(), ref.right), tol);
    }
}

TEST(GammaSystem, AnnihilatesConstants) {
  for (double g : {0.0, 0.5, 0.9}) {
    const auto sys = assemble_gamma_system({16, g}, 1.0, 1.0);
    const auto ones = std::vector<double>(sys.op.size(), 1.0);
    const auto a1 = sys.op.apply(ones);
    const auto k = sys.boundaryK.flat();
    const double scale = sys.op.parts().banded->band(0)[0];
    for (std::size_t i = 0; i < a1.size(); ++i) EXPECT_NEAR(a1[i], k[i], 1e-10 * scale) << g << " " << i;
  }
}

TEST(GammaSystem, ConfigValidation) {
  EXPECT_THROW(assemble_gamma_system({12, 0.5}), ConfigError);
  EXPECT_THROW(assemble_gamma_system({2, 0.5}), ConfigError);
  EXPECT_THROW(assemble_gamma_system({8, 1.5}), DomainError);
}

TEST(GammaForcing, ConstantSolution) {
  const ExpPolySolution u{Polynomial({3.0})};
  for (double x : {0.0, 0.3, 1.0}) EXPECT_NEAR(gamma_exact_forcing(u, x, 0.5, 0.5), 3.0 * std::exp(0.5), 1e-14);
}

TEST(GammaForcing, QuadraticAtLeftEnd) {
  const ExpPolySolution u{Polynomial::one_plus_x_pow(2)};
  const double t = 0.25;
  EXPECT_NEAR(gamma_exact_forcing(u, 0.0, t, 0.0), std::exp(t) * (1.0 - 4.0 / 3.0), 1e-14);
  EXPECT_NEAR(gamma_nonlocal_term(u.p, 0.0, 0.0), -4.0 / 3.0, 1e-14);
}

TEST(GammaForcing, MatchesQuadrature) {
  const auto p = Polynomial::one_plus_x_pow(6);
  for (double g : {0.0, 0.5, 0.9})
    for (double x : {0.0, 0.1, 0.37, 0.5, 0.86, 1.0})
      EXPECT_NEAR(gamma_nonlocal_term(p, x, g), orc::quadrature_nonlocal(p.coefficients(), x, g), 1e-10)
          << "g=" << g << " x=" << x;
}

TEST(GammaForcing, DefaultSolutionOverload) {
  const ExpPolySolution u{};
  EXPECT_DOUBLE_EQ(gamma_exact_forcing(0.4, 0.7, 0.5), gamma_exact_forcing(u, 0.4, 0.7, 0.5));
  EXPECT_THROW(gamma_nonlocal_term(u.p, 1.5, 0.5), ArgumentError);
}

TEST(GammaNodes, BlockOrder) {
  const auto x = gamma_nodes({4, 0.0});
  const std::vector<double> want{0.25, 0.5, 0.75, 0.125, 0.375, 0.625, 0.875};
  ASSERT_EQ(x.size(), want.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_DOUBLE_EQ(x[i], want[i]);
}
