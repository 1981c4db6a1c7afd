#include "tpcamg/errors.hpp"
#include "tpcamg/fft.hpp"
#include "random_ops.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace tpcamg;

namespace {

std::vector<double> dense_circulant(const std::vector<double>& c, const std::vector<double>& x) {
  const std::size_t n = c.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += c[(i + n - j) % n] * x[j];
  return y;
}

void expect_near(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

} // namespace

TEST(FastLength, SmoothNumbers) {
  EXPECT_EQ(fast_fft_length(1), 1u);
  EXPECT_EQ(fast_fft_length(11), 12u);
  EXPECT_EQ(fast_fft_length(64), 64u);
  EXPECT_EQ(fast_fft_length(127), 128u);
  EXPECT_EQ(fast_fft_length(4097), 4116u);
}

TEST(Circulant, IdentityColumn) {
  expect_near(circulant_matvec(std::vector<double>{1, 0, 0}, std::vector<double>{3, 7, 2}), {3, 7, 2}, 1e-14);
}

TEST(Circulant, CyclicShift) {
  expect_near(circulant_matvec(std::vector<double>{0, 1, 0}, std::vector<double>{1, 2, 3}), {3, 1, 2}, 1e-14);
}

TEST(Circulant, LaplacianAnnihilatesConstants) {
  expect_near(circulant_matvec(std::vector<double>{2, -1, -1}, std::vector<double>{1, 1, 1}), {0, 0, 0}, 1e-14);
}

TEST(Circulant, SingleEntry) {
  expect_near(circulant_matvec(std::vector<double>{2.5}, std::vector<double>{4.0}), {10.0}, 1e-14);
}

TEST(Circulant, LengthMismatchThrows) {
  EXPECT_THROW(circulant_matvec(std::vector<double>{1, 0}, std::vector<double>{1, 2, 3}), ArgumentError);
  EXPECT_THROW(circulant_matvec(std::vector<double>{}, std::vector<double>{}), ArgumentError);
}

TEST(Circulant, MatchesDenseForAwkwardLengths) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {2u, 5u, 13u, 97u, 210u, 1001u}) {
    const auto c = testkit::random_vector(rng, n), x = testkit::random_vector(rng, n);
    expect_near(circulant_matvec(c, x), dense_circulant(c, x), 1e-11);
  }
}

TEST(Circulant, IdentityNeutrality) {
  std::mt19937_64 rng(3);
  const std::size_t n = 64;
  const auto c = testkit::random_vector(rng, n), x = testkit::random_vector(rng, n);
  std::vector<double> e1(n, 0.0);
  e1[0] = 1.0;
  expect_near(circulant_matvec(c, circulant_matvec(e1, x)), circulant_matvec(c, x), 1e-13);
}

TEST(RealFft, RoundTripScalesByLength) {
  std::mt19937_64 rng(11);
  const std::size_t n = 48;
  RealFft fft(n);
  EXPECT_EQ(fft.spectrum_size(), 25u);
  const auto x = testkit::random_vector(rng, n);
  std::vector<std::complex<double>> s(fft.spectrum_size());
  std::vector<double> y(n);
  fft.forward(x, s);
  EXPECT_NEAR(s[0].real(), std::accumulate(x.begin(), x.end(), 0.0), 1e-12);
  fft.inverse(s, y);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i] / n, x[i], 1e-14);
}

TEST(RealFft, BufferMismatchThrows) {
  RealFft fft(8);
  std::vector<double> x(7);
  std::vector<std::complex<double>> s(5);
  EXPECT_THROW(fft.forward(x, s), ArgumentError);
  EXPECT_THROW(RealFft(0), ArgumentError);
}
