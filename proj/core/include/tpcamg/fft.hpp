#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tpcamg {

namespace detail {
struct FftPlans;
}

/// Smallest length >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t fast_fft_length(std::size_t n);

/// Real-to-complex DFT of one fixed length.
///
/// Plans are created once per length and shared process-wide; executing a
/// plan is reentrant, so one RealFft may be used from several threads.
class RealFft {
public:
  explicit RealFft(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

  /// out[k] = sum_j in[j] exp(-2 pi i jk/n), k = 0..n/2.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;

  /// Unnormalized inverse: the result is n times the inverse DFT.
  /// `in` is used as scratch and overwritten.
  void inverse(std::span<std::complex<double>> in, std::span<double> out) const;

private:
  std::size_t n_;
  const detail::FftPlans* plans_;
};

/// C x for the circulant C with the given first column, via forward
/// transforms of both inputs, a pointwise product and one inverse transform.
std::vector<double> circulant_matvec(std::span<const double> first_col,
                                     std::span<const double> x);

} // namespace tpcamg
