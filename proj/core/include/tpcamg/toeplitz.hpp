#pragma once

#include "tpcamg/fft.hpp"
#include "tpcamg/window.hpp"

#include <complex>
#include <optional>
#include <cstddef>
#include <span>
#include <vector>

namespace tpcamg {

/// Square m x m Toeplitz matrix with entry (i, j) = t_{j-i}.
///
/// Coefficients are held as a Window over l in [-(m-1), m-1]; indices outside
/// the stored window are zero.
class ToeplitzSpec {
public:
  ToeplitzSpec() = default;
  ToeplitzSpec(std::size_t m, Window coeffs);

  /// From the full list t_{-(m-1)}, ..., t_{m-1} (length 2m-1).
  static ToeplitzSpec from_full(std::size_t m, std::span<const double> coeffs);
  /// Symmetric matrix with t_l = t_{-l} = first_row[l], l < first_row.size() <= m.
  static ToeplitzSpec symmetric(std::size_t m, std::span<const double> first_row);
  static ToeplitzSpec identity(std::size_t m) { return ToeplitzSpec(m, Window(0, {1.0})); }
  static ToeplitzSpec zero(std::size_t m) { return ToeplitzSpec(m, Window{}); }

  [[nodiscard]] std::size_t size() const noexcept { return m_; }
  [[nodiscard]] double operator()(std::ptrdiff_t l) const noexcept { return coeffs_(l); }
  [[nodiscard]] double entry(std::size_t i, std::size_t j) const noexcept {
    return coeffs_(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i));
  }
  [[nodiscard]] const Window& coefficients() const noexcept { return coeffs_; }
  /// Coefficients t_{-(m-1)}, ..., t_{m-1} with zeros filled in.
  [[nodiscard]] std::vector<double> full() const;
  /// Direct scan of t_l == t_{-l}.
  [[nodiscard]] bool is_symmetric(double tol = 0.0) const;

  /// s * this + shift * I.
  [[nodiscard]] ToeplitzSpec scaled_shifted(double s, double shift) const;

private:
  std::size_t m_ = 0;
  Window coeffs_;
};

/// Rectangular rows x cols Toeplitz matrix, entry (i, j) = b_{j-i},
/// l in [-(rows-1), cols-1].
class RectToeplitzSpec {
public:
  RectToeplitzSpec() = default;
  RectToeplitzSpec(std::size_t rows, std::size_t cols, Window coeffs);
  /// From the full list b_{-(rows-1)}, ..., b_{cols-1} (length rows+cols-1).
  static RectToeplitzSpec from_full(std::size_t rows, std::size_t cols,
                                    std::span<const double> coeffs);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] double operator()(std::ptrdiff_t l) const noexcept { return coeffs_(l); }
  [[nodiscard]] double entry(std::size_t i, std::size_t j) const noexcept {
    return coeffs_(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i));
  }
  [[nodiscard]] const Window& coefficients() const noexcept { return coeffs_; }

  /// The max(rows, cols) square Toeplitz completion with zero-filled triangles.
  [[nodiscard]] ToeplitzSpec completion() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  Window coeffs_;
};

/// Smallest circulant length that embeds t without wrap-around pollution:
/// m + max |l| over the stored support.
std::size_t embedding_length(const ToeplitzSpec& t);

/// DFT of the embedding circulant's first column at the transform's length,
/// which must be at least embedding_length(t).
std::vector<std::complex<double>> embedding_symbol(const ToeplitzSpec& t, const RealFft& fft);

/// A ToeplitzSpec prepared for repeated FFT matvecs: the embedding circulant's
/// spectrum is computed once at construction.
///
/// The circulant has length L >= m + max|l| over the stored support (2m - 1 for
/// a full generating sequence), rounded up to a fast transform length. Its first
/// column is t_0, t_{-1}, ..., zeros, ..., t_1 (wrap-around completion).
class ToeplitzKernel {
public:
  ToeplitzKernel() = default;
  explicit ToeplitzKernel(const ToeplitzSpec& t);

  [[nodiscard]] std::size_t size() const noexcept { return m_; }
  [[nodiscard]] std::size_t transform_length() const noexcept { return len_; }

  /// y = alpha * T x, or y += alpha * T x when accumulate is set.
  void apply(std::span<const double> x, std::span<double> y, double alpha = 1.0,
             bool accumulate = false) const;

private:
  std::size_t m_ = 0;
  std::size_t len_ = 0;
  bool zero_ = true;
  std::optional<RealFft> fft_;
  std::vector<std::complex<double>> symbol_;
};

/// T x via circulant embedding.
std::vector<double> toeplitz_matvec(const ToeplitzSpec& t, std::span<const double> x);

/// B w for a wide B (rows < cols): first rows of the square completion times w.
std::vector<double> rect_toeplitz_matvec_wide(const RectToeplitzSpec& b,
                                              std::span<const double> w);

/// C v for a tall C (rows > cols): the square completion times [v; 0].
std::vector<double> rect_toeplitz_matvec_tall(const RectToeplitzSpec& c,
                                              std::span<const double> v);

} // namespace tpcamg
