#include "tpcamg/errors.hpp"
#include "tpcamg/model_peridynamic.hpp"
#include "tpcamg/oracle.hpp"
#include "random_ops.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tpcamg;
namespace orc = tpcamg::oracle;

namespace {

PdModelConfig cfg_of(std::size_t N, double delta, bool sym) { return {N, Horizon::fixed(delta), sym}; }

std::vector<double> full_row_sums(const orc::PdDense& d) {
  std::vector<double> s(d.a.rows, 0.0);
  for (std::size_t i = 0; i < d.a.rows; ++i) {
    for (std::size_t j = 0; j < d.a.cols; ++j) s[i] += d.a(i, j);
    for (std::size_t j = 0; j < d.collar.cols; ++j) s[i] += d.collar(i, j);
  }
  return s;
}

} // namespace

TEST(PdCoefficients, RadiusOne) {
  const auto c = pd_coefficients(1, false);
  EXPECT_EQ(c.a[0], 10);
  EXPECT_EQ(c.a[1], -1);
  EXPECT_EQ(c.a_half[0], -4);
  EXPECT_EQ(c.c[0], -9.0 / 4.0);
  EXPECT_EQ(c.c[1], 1.0 / 4.0);
  EXPECT_EQ(c.d[0], 8);
  EXPECT_EQ(c.d[1], -2);
}

TEST(PdCoefficients, RadiusTwo) {
  const auto c = pd_coefficients(2, true);
  EXPECT_EQ(c.a[0], 22);
  EXPECT_EQ(c.a[1], -2);
  EXPECT_EQ(c.a[2], -1);
  EXPECT_EQ(c.a_half[0], -4);
  EXPECT_EQ(c.a_half[1], -4);
  EXPECT_EQ(c.c[0], -2);
  EXPECT_EQ(c.c[1], -9.0 / 4.0);
}

TEST(PdCoefficients, RowSumIdentity) {
  for (std::size_t r = 1; r <= 12; ++r) {
    const auto c = pd_coefficients(r, false);
    double s = c.a[0];
    for (std::size_t k = 1; k <= r; ++k) s += 2 * c.a[k];
    for (std::size_t k = 0; k < r; ++k) s += 2 * c.a_half[k];
    EXPECT_EQ(s, 0.0) << r;
    double h = c.d[0];
    for (std::size_t k = 1; k <= r; ++k) h += 2 * c.d[k];
    for (std::size_t k = 0; k <= r; ++k) h += 2 * c.c[k];
    EXPECT_EQ(h, 0.0) << r;
  }
  EXPECT_THROW(pd_coefficients(0, true), DomainError);
}

TEST(PdConfig, RadiusAndScale) {
  EXPECT_EQ(cfg_of(32, 0.25, true).r(), 8u);
  EXPECT_EQ(cfg_of(4, 0.1, true).r(), 1u);
  EXPECT_EQ(cfg_of(64, 0.3, true).r(), 19u);
  PdModelConfig s{64, Horizon::sqrt_h(), true};
  EXPECT_EQ(s.r(), 8u);
  s.N = 32;
  EXPECT_EQ(s.r(), 5u);
  EXPECT_NEAR(s.effective_delta(), 5.0 / 32, 1e-15);
  EXPECT_NEAR(cfg_of(32, 0.25, true).scale(), 2 * std::pow(0.25, 3) * 32, 1e-13);
}

TEST(PdConfig, Validation) {
  EXPECT_THROW(assemble_pd_system(cfg_of(4, 1.0, true)), ConfigError);
  EXPECT_THROW(assemble_pd_system(cfg_of(24, 0.25, true)), ConfigError);
  EXPECT_THROW(assemble_pd_system(cfg_of(16, -0.25, true)), ConfigError);
}

TEST(Horizon, Parse) {
  EXPECT_EQ(Horizon::parse("sqrt-h").kind, Horizon::Kind::SqrtH);
  EXPECT_DOUBLE_EQ(Horizon::parse("0.25").value, 0.25);
  EXPECT_DOUBLE_EQ(Horizon::parse("1/4").value, 0.25);
  EXPECT_THROW(Horizon::parse("abc"), ConfigError);
  EXPECT_THROW(Horizon::parse("0"), ConfigError);
  EXPECT_EQ(Horizon::sqrt_h().str(), "sqrt-h");
}

TEST(PdSystem, SymmetricFirstRow) {
  const auto sys = assemble_pd_system(cfg_of(4, 0.25, true));
  ASSERT_EQ(sys.r, 1u);
  const auto d = orc::dense_expand(sys.op);
  const std::vector<double> want{10, -1, 0, -4, -4, 0, 0};
  for (std::size_t j = 0; j < want.size(); ++j) EXPECT_EQ(d(0, j), want[j]) << j;
  EXPECT_EQ(orc::max_abs_diff(d, d.transpose()), 0.0);
  EXPECT_TRUE(sys.op.is_symmetric());
}

TEST(PdSystem, NonsymmetricCrossEntries) {
  const auto sys = assemble_pd_system(cfg_of(8, 0.125, false));
  ASSERT_EQ(sys.r, 1u);
  const auto& p = sys.op.parts();
  EXPECT_EQ(p.o, 8);
  EXPECT_EQ(p.zeta(0), -2);
  EXPECT_EQ(p.q(0), -9.0 / 4.0);
  EXPECT_FALSE(sys.op.is_symmetric());
}

TEST(PdSystem, MatchesDenseAssembly) {
  for (bool sym : {true, false})
    for (std::size_t N : {4u, 8u, 16u, 32u, 64u})
      for (double delta : {0.1, 0.25, 0.5}) {
        const auto cfg = cfg_of(N, delta, sym);
        if (cfg.r() + 2 > N) continue;
        const auto sys = assemble_pd_system(cfg);
        const auto ref = orc::dense_pd_assembly(N, cfg.r(), sym);
        EXPECT_LE(orc::max_abs_diff(orc::dense_expand(sys.op), ref.a), 1e-12) << N << " " << delta << " " << sym;
      }
}

TEST(PdSystem, WindowsAreTruncatedToSupport) {
  const auto sys = assemble_pd_system(cfg_of(256, 0.25, true));
  // the horizon spans r = 64 cells; stored windows are O(r), not O(N)
  EXPECT_LE(sys.op.parts().a.coefficients().stored(), 2 * 64 + 1u);
  EXPECT_LE(sys.op.stored_coefficients(), 8 * sys.op.size());
}

TEST(PdSystem, FoldVectorsShape) {
  const auto s1 = assemble_pd_system(cfg_of(8, 0.125, false));
  EXPECT_EQ(s1.fold.wA, (std::vector<double>{-1, 0}));
  EXPECT_EQ(s1.fold.wB, (std::vector<double>{0}));
  EXPECT_EQ(s1.fold.wC, (std::vector<double>{-9.0 / 4, 1.0 / 4}));
  EXPECT_EQ(s1.fold.wD, (std::vector<double>{-2}));
  const auto s3 = assemble_pd_system(cfg_of(16, 3.0 / 16, true));
  EXPECT_EQ(s3.fold.wA.size(), 4u);
  EXPECT_EQ(s3.fold.wB.size(), 3u);
  EXPECT_EQ(s3.fold.wC.size(), 4u);
  EXPECT_EQ(s3.fold.wD.size(), 3u);
}

TEST(PdFold, ZeroCollarLeavesRhs) {
  const auto sys = assemble_pd_system(cfg_of(16, 0.25, false));
  std::mt19937_64 rng(1);
  const auto F = BlockVector::from_flat(testkit::random_vector(rng, sys.op.size()));
  const auto g = sample_collar(sys.cfg, [](double) { return 0.0; });
  EXPECT_EQ(fold_boundary_rhs(sys, F, g).flat(), F.flat());
}

TEST(PdFold, ConstantsAreExact) {
  for (bool sym : {true, false}) {
    const auto sys = assemble_pd_system(cfg_of(16, 0.25, sym));
    const auto g = sample_collar(sys.cfg, [](double) { return 1.0; });
    const auto folded = fold_boundary_rhs(sys, BlockVector(sys.op.half_size()), g).flat();
    const auto a1 = sys.op.apply(std::vector<double>(sys.op.size(), 1.0));
    for (std::size_t i = 0; i < a1.size(); ++i) EXPECT_NEAR(a1[i], sys.scale * folded[i], 1e-12) << sym << " " << i;
  }
}

TEST(PdFold, MatchesDenseElimination) {
  for (bool sym : {true, false}) {
    const auto cfg = cfg_of(8, 0.25, sym);
    const auto sys = assemble_pd_system(cfg);
    ASSERT_EQ(sys.r, 2u);
    const auto ref = orc::dense_pd_assembly(8, 2, sym);
    std::mt19937_64 rng(8);
    PdCollar g{testkit::random_vector(rng, 5), testkit::random_vector(rng, 5)};
    const auto F = testkit::random_vector(rng, sys.op.size());
    std::vector<double> gall(g.left);
    gall.insert(gall.end(), g.right.begin(), g.right.end());
    const auto Gd = orc::dense_matvec(ref.collar, gall);
    const auto folded = fold_boundary_rhs(sys, BlockVector::from_flat(F), g).flat();
    for (std::size_t i = 0; i < F.size(); ++i) EXPECT_NEAR(folded[i], F[i] - Gd[i] / sys.scale, 1e-12) << i;
  }
}

TEST(PdFold, CollarLengthChecked) {
  const auto sys = assemble_pd_system(cfg_of(8, 0.25, true));
  PdCollar g{{0, 0, 0}, {0, 0, 0, 0, 0}};
  EXPECT_THROW(fold_boundary_rhs(sys, BlockVector(7), g), ArgumentError);
  const auto pos = pd_collar_positions(sys.cfg);
  EXPECT_DOUBLE_EQ(pos.left.front(), -0.25);
  EXPECT_DOUBLE_EQ(pos.left.back(), 0.0);
  EXPECT_DOUBLE_EQ(pos.right.front(), 1.0);
  EXPECT_DOUBLE_EQ(pos.right.back(), 1.25);
}

TEST(PdSymmetric, SpdWithJacobiBound) {
  for (std::size_t r : {1u, 2u, 3u, 4u})
    for (std::size_t N : {16u, 32u, 64u}) {
      if (r + 2 > N) continue;
      const auto cfg = cfg_of(N, static_cast<double>(r) / static_cast<double>(N), true);
      ASSERT_EQ(cfg.r(), r);
      const auto d = orc::dense_expand(assemble_pd_system(cfg).op);
      EXPECT_GT(orc::sym_eig_extremes(d).first, 0.0);
      orc::DenseMatrix dh(d.rows, d.cols);
      for (std::size_t i = 0; i < d.rows; ++i) dh(i, i) = 1 / std::sqrt(d(i, i));
      const double lj = orc::sym_eig_extremes(dh * d * dh).second;
      EXPECT_GE(lj, 1.0 - 1e-10);
      EXPECT_LE(lj, 2.0 + 1e-10);
    }
}

TEST(PdSymmetric, WeakDominanceAndZeroFullRowSums) {
  for (std::size_t r : {1u, 3u}) {
    const auto ref = orc::dense_pd_assembly(32, r, true);
    for (double s : full_row_sums(ref)) EXPECT_EQ(s, 0.0);
    for (std::size_t i = 0; i < ref.a.rows; ++i) {
      double off = 0;
      for (std::size_t j = 0; j < ref.a.cols; ++j)
        if (i != j) off += std::abs(ref.a(i, j));
      EXPECT_LE(off, ref.a(i, i));
    }
  }
}

TEST(PdForcing, PolynomialCases) {
  const auto cfg = cfg_of(32, 0.25, true);
  const ExpPolySolution c{Polynomial({2.0})};
  EXPECT_NEAR(pd_exact_forcing(cfg, c, 0.3, 0.1), 2 * std::exp(0.1), 1e-14);
  const ExpPolySolution q{Polynomial::one_plus_x_pow(2)};
  EXPECT_NEAR(pd_exact_forcing(cfg, q, 0.3, 0.1), std::exp(0.1) * (1.69 - 2.0), 1e-13);
}

TEST(PdNodes, BlockOrder) {
  const auto x = pd_nodes(cfg_of(4, 0.25, true));
  ASSERT_EQ(x.size(), 7u);
  EXPECT_DOUBLE_EQ(x[2], 0.75);
  EXPECT_DOUBLE_EQ(x[3], 0.125);
}
