#include "tpcamg/errors.hpp"
#include "tpcamg/oracle.hpp"
#include "tpcamg/toeplitz.hpp"
#include "random_ops.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

using namespace tpcamg;
using tpcamg::oracle::dense_expand;
using tpcamg::oracle::dense_matvec;
using tpcamg::oracle::max_abs_diff;

TEST(ToeplitzSpec, FullLayoutAndEntries) {
  const auto t = ToeplitzSpec::from_full(3, std::vector<double>{-1, 2, -1, 5, 7});
  // coefficients t_{-2}, ..., t_2
  EXPECT_EQ(t(-2), -1);
  EXPECT_EQ(t(2), 7);
  EXPECT_EQ(t.entry(0, 2), 7);
  EXPECT_EQ(t.entry(2, 0), -1);
  EXPECT_EQ(t.full().size(), 5u);
  EXPECT_THROW(ToeplitzSpec::from_full(3, std::vector<double>{1, 2}), ArgumentError);
}

TEST(ToeplitzSpec, WindowIsClippedAndTrimmed) {
  const ToeplitzSpec t(3, Window(-5, {9, 0, 0, 1, 2, 0, 0}));
  EXPECT_EQ(t.coefficients().first, -2);
  EXPECT_EQ(t.coefficients().stored(), 2u);
  EXPECT_EQ(t(-2), 1);
  EXPECT_EQ(t(-1), 2);
  EXPECT_EQ(t(-3), 0);
}

TEST(ToeplitzSpec, SymmetryScan) {
  EXPECT_TRUE(ToeplitzSpec::symmetric(4, std::vector<double>{2, -1}).is_symmetric());
  EXPECT_FALSE(ToeplitzSpec::from_full(2, std::vector<double>{1, 2, 3}).is_symmetric());
}

TEST(ToeplitzSpec, ScaledShifted) {
  const auto t = ToeplitzSpec(4, Window(1, {3.0})).scaled_shifted(2.0, 0.5);
  EXPECT_EQ(t(0), 0.5);
  EXPECT_EQ(t(1), 6.0);
}

TEST(ToeplitzMatvec, LaplacianOnConstants) {
  const auto t = ToeplitzSpec::symmetric(3, std::vector<double>{2, -1});
  const auto y = toeplitz_matvec(t, std::vector<double>{1, 1, 1});
  EXPECT_NEAR(y[0], 1, 1e-14);
  EXPECT_NEAR(y[1], 0, 1e-14);
  EXPECT_NEAR(y[2], 1, 1e-14);
}

TEST(ToeplitzMatvec, IdentityAndZero) {
  std::mt19937_64 rng(1);
  const auto x = testkit::random_vector(rng, 17);
  EXPECT_LE(max_abs_diff(toeplitz_matvec(ToeplitzSpec::identity(17), x), x), 1e-15);
  for (double v : toeplitz_matvec(ToeplitzSpec::zero(17), x)) EXPECT_EQ(v, 0.0);
}

TEST(ToeplitzMatvec, SizeOne) {
  const auto y = toeplitz_matvec(ToeplitzSpec(1, Window(0, {3.0})), std::vector<double>{2.0});
  EXPECT_NEAR(y[0], 6.0, 1e-15);
}

TEST(ToeplitzMatvec, LengthMismatchThrows) {
  EXPECT_THROW(toeplitz_matvec(ToeplitzSpec::identity(3), std::vector<double>{1, 2}), ArgumentError);
}

TEST(ToeplitzMatvec, MatchesDenseAt257) {
  std::mt19937_64 rng(257);
  const auto t = testkit::random_toeplitz(rng, 257);
  const auto x = testkit::random_vector(rng, 257);
  EXPECT_LE(max_abs_diff(toeplitz_matvec(t, x), dense_matvec(dense_expand(t), x)), 1e-12);
}

TEST(ToeplitzMatvec, NarrowWindowsAtManySizes) {
  std::mt19937_64 rng(5);
  for (std::size_t m : {2u, 3u, 10u, 63u, 100u, 511u}) {
    const auto v = testkit::random_vector(rng, 5);
    const ToeplitzSpec t(m, Window(-3, v));
    const auto x = testkit::random_vector(rng, m);
    EXPECT_LE(max_abs_diff(toeplitz_matvec(t, x), dense_matvec(dense_expand(t), x)), 1e-12) << m;
  }
}

TEST(ToeplitzMatvec, OneSidedWindow) {
  std::mt19937_64 rng(9);
  const std::size_t m = 40;
  const ToeplitzSpec t(m, Window(30, testkit::random_vector(rng, 9)));
  const auto x = testkit::random_vector(rng, m);
  EXPECT_LE(max_abs_diff(toeplitz_matvec(t, x), dense_matvec(dense_expand(t), x)), 1e-12);
}

TEST(ToeplitzMatvec, RandomTrialsRelativeBound) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 1200);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = size(rng);
    const auto t = testkit::random_toeplitz(rng, m);
    const auto x = testkit::random_vector(rng, m);
    double l1 = 0.0, xinf = 0.0;
    for (double v : t.full()) l1 += std::abs(v);
    for (double v : x) xinf = std::max(xinf, std::abs(v));
    EXPECT_LE(max_abs_diff(toeplitz_matvec(t, x), dense_matvec(dense_expand(t), x)), 1e-11 * (1 + xinf * l1)) << m;
  }
}

TEST(ToeplitzKernel, AccumulateAndScale) {
  std::mt19937_64 rng(4);
  const auto t = testkit::random_toeplitz(rng, 31);
  const auto x = testkit::random_vector(rng, 31);
  ToeplitzKernel k(t);
  EXPECT_GE(k.transform_length(), embedding_length(t));
  std::vector<double> y(31, 1.0);
  k.apply(x, y, -2.0, true);
  const auto ref = dense_matvec(dense_expand(t), x);
  for (std::size_t i = 0; i < 31; ++i) EXPECT_NEAR(y[i], 1.0 - 2.0 * ref[i], 1e-12);
}

TEST(RectToeplitz, WideAllOnes) {
  const RectToeplitzSpec b(2, 3, Window(-1, {1, 1, 1, 1}));
  const auto y = rect_toeplitz_matvec_wide(b, std::vector<double>{1, 1, 1});
  ASSERT_EQ(y.size(), 2u);
  EXPECT_NEAR(y[0], 3, 1e-14);
  EXPECT_NEAR(y[1], 3, 1e-14);
}

TEST(RectToeplitz, WideBasisVectorGivesFirstColumn) {
  // b_l = l for l in [-(M-1), N-1]
  const std::size_t M = 4, N = 6;
  std::vector<double> c;
  for (int l = -static_cast<int>(M - 1); l <= static_cast<int>(N - 1); ++l) c.push_back(l);
  const auto b = RectToeplitzSpec::from_full(M, N, c);
  std::vector<double> e1(N, 0.0);
  e1[0] = 1.0;
  const auto y = rect_toeplitz_matvec_wide(b, e1);
  for (std::size_t i = 0; i < M; ++i) EXPECT_NEAR(y[i], -static_cast<double>(i), 1e-13);
}

TEST(RectToeplitz, WideRandomMatchesDense) {
  std::mt19937_64 rng(63);
  const auto b = RectToeplitzSpec::from_full(63, 64, testkit::random_vector(rng, 126));
  const auto w = testkit::random_vector(rng, 64);
  EXPECT_LE(max_abs_diff(rect_toeplitz_matvec_wide(b, w), dense_matvec(dense_expand(b), w)), 1e-12);
}

TEST(RectToeplitz, TallAllOnes) {
  const RectToeplitzSpec c(3, 2, Window(-2, {1, 1, 1, 1}));
  const auto y = rect_toeplitz_matvec_tall(c, std::vector<double>{1, 1});
  ASSERT_EQ(y.size(), 3u);
  for (double v : y) EXPECT_NEAR(v, 2, 1e-14);
}

TEST(RectToeplitz, TallIdentityColumns) {
  const RectToeplitzSpec c(5, 3, Window(0, {1.0}));
  const auto y = rect_toeplitz_matvec_tall(c, std::vector<double>{4, 5, 6});
  const std::vector<double> want{4, 5, 6, 0, 0};
  EXPECT_LE(max_abs_diff(y, want), 1e-14);
}

TEST(RectToeplitz, TallRandomMatchesDense) {
  std::mt19937_64 rng(64);
  const auto c = RectToeplitzSpec::from_full(64, 63, testkit::random_vector(rng, 126));
  const auto v = testkit::random_vector(rng, 63);
  EXPECT_LE(max_abs_diff(rect_toeplitz_matvec_tall(c, v), dense_matvec(dense_expand(c), v)), 1e-12);
}

TEST(RectToeplitz, ShapeErrors) {
  const RectToeplitzSpec wide(2, 3, Window(0, {1.0}));
  const RectToeplitzSpec tall(3, 2, Window(0, {1.0}));
  EXPECT_THROW(rect_toeplitz_matvec_wide(tall, std::vector<double>{1, 1}), ArgumentError);
  EXPECT_THROW(rect_toeplitz_matvec_tall(wide, std::vector<double>{1, 1, 1}), ArgumentError);
  EXPECT_THROW(rect_toeplitz_matvec_wide(wide, std::vector<double>{1, 1}), ArgumentError);
  EXPECT_THROW(rect_toeplitz_matvec_tall(tall, std::vector<double>{1, 1, 1}), ArgumentError);
  EXPECT_THROW(RectToeplitzSpec::from_full(2, 3, std::vector<double>{1, 2}), ArgumentError);
}

TEST(ToeplitzMatvec, GrowthIsNearLinearithmic) {
  auto time_at = [](std::size_t n) {
    std::mt19937_64 rng(n);
    const ToeplitzKernel k(testkit::random_toeplitz(rng, n));
    const auto x = testkit::random_vector(rng, n);
    std::vector<double> y(n);
    std::vector<double> samples;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int i = 0; i < 20; ++i) k.apply(x, y);
      samples.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    return samples[2];
  };
  for (std::size_t n : {std::size_t{1} << 12, std::size_t{1} << 14}) {
    const double ratio = time_at(4 * n) / time_at(n);
    EXPECT_LE(ratio, 5.5) << "n = " << n;
  }
}
