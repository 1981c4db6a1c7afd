#include "tpcamg/toeplitz.hpp"

#include "tpcamg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace tpcamg {

namespace {

using index_t = std::ptrdiff_t;

// Restricts a window to [lo, hi] and trims zeros.
Window clip(Window w, index_t lo, index_t hi) {
  if (w.empty()) return w;
  const index_t a = std::max(w.first, lo);
  const index_t b = std::min(w.end() - 1, hi);
  if (a > b) return Window{};
  if (a != w.first || b != w.end() - 1) {
    std::vector<double> v(w.values.begin() + (a - w.first), w.values.begin() + (b - w.first) + 1);
    w = Window(a, std::move(v));
  }
  return w.trim();
}

struct Scratch {
  std::vector<double> real;
  std::vector<std::complex<double>> spectrum;
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

} // namespace

ToeplitzSpec::ToeplitzSpec(std::size_t m, Window coeffs) : m_(m) {
  if (m == 0) throw ArgumentError("ToeplitzSpec: size must be positive");
  const auto hi = static_cast<index_t>(m) - 1;
  coeffs_ = clip(std::move(coeffs), -hi, hi);
}

ToeplitzSpec ToeplitzSpec::from_full(std::size_t m, std::span<const double> coeffs) {
  if (m == 0 || coeffs.size() != 2 * m - 1)
    throw ArgumentError("ToeplitzSpec::from_full: need 2m-1 coefficients");
  return ToeplitzSpec(m, Window(-(static_cast<index_t>(m) - 1),
                                std::vector<double>(coeffs.begin(), coeffs.end())));
}

ToeplitzSpec ToeplitzSpec::symmetric(std::size_t m, std::span<const double> first_row) {
  if (first_row.empty() || first_row.size() > m)
    throw ArgumentError("ToeplitzSpec::symmetric: first row longer than m");
  const auto k = static_cast<index_t>(first_row.size()) - 1;
  std::vector<double> v(2 * first_row.size() - 1);
  for (index_t l = -k; l <= k; ++l) v[static_cast<std::size_t>(l + k)] = first_row[static_cast<std::size_t>(std::abs(l))];
  return ToeplitzSpec(m, Window(-k, std::move(v)));
}

std::vector<double> ToeplitzSpec::full() const {
  const auto hi = static_cast<index_t>(m_) - 1;
  std::vector<double> v(2 * m_ - 1);
  for (index_t l = -hi; l <= hi; ++l) v[static_cast<std::size_t>(l + hi)] = coeffs_(l);
  return v;
}

bool ToeplitzSpec::is_symmetric(double tol) const {
  const index_t reach = std::max(std::abs(coeffs_.first), std::abs(coeffs_.end() - 1));
  for (index_t l = 1; l <= reach; ++l)
    if (std::abs(coeffs_(l) - coeffs_(-l)) > tol) return false;
  return true;
}

ToeplitzSpec ToeplitzSpec::scaled_shifted(double s, double shift) const {
  Window w = coeffs_;
  for (auto& v : w.values) v *= s;
  if (shift != 0.0) {
    if (w.empty()) w = Window(0, {0.0});
    if (w.first > 0) {
      w.values.insert(w.values.begin(), static_cast<std::size_t>(w.first), 0.0);
      w.first = 0;
    }
    if (w.end() <= 0) w.values.resize(static_cast<std::size_t>(1 - w.first), 0.0);
    w.values[static_cast<std::size_t>(-w.first)] += shift;
  }
  return ToeplitzSpec(m_, std::move(w));
}

RectToeplitzSpec::RectToeplitzSpec(std::size_t rows, std::size_t cols, Window coeffs)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw ArgumentError("RectToeplitzSpec: empty shape");
  coeffs_ = clip(std::move(coeffs), -(static_cast<index_t>(rows) - 1), static_cast<index_t>(cols) - 1);
}

RectToeplitzSpec RectToeplitzSpec::from_full(std::size_t rows, std::size_t cols,
                                             std::span<const double> coeffs) {
  if (coeffs.size() != rows + cols - 1)
    throw ArgumentError("RectToeplitzSpec::from_full: need rows+cols-1 coefficients");
  return RectToeplitzSpec(rows, cols, Window(-(static_cast<index_t>(rows) - 1),
                                             std::vector<double>(coeffs.begin(), coeffs.end())));
}

ToeplitzSpec RectToeplitzSpec::completion() const {
  return ToeplitzSpec(std::max(rows_, cols_), coeffs_);
}

std::size_t embedding_length(const ToeplitzSpec& t) {
  const Window& w = t.coefficients();
  if (w.empty()) return t.size();
  return t.size() + static_cast<std::size_t>(std::max(std::abs(w.first), std::abs(w.end() - 1)));
}

std::vector<std::complex<double>> embedding_symbol(const ToeplitzSpec& t, const RealFft& fft) {
  if (fft.size() < embedding_length(t)) throw ArgumentError("embedding_symbol: transform too short");
  // y_i = sum_l t_l x_{i+l} is the circular convolution with c_{(-l) mod L} = t_l.
  const Window& w = t.coefficients();
  std::vector<double> col(fft.size(), 0.0);
  const auto L = static_cast<index_t>(fft.size());
  for (index_t l = w.first; l < w.end(); ++l) col[static_cast<std::size_t>(((-l) % L + L) % L)] = w(l);
  std::vector<std::complex<double>> symbol(fft.spectrum_size());
  fft.forward(col, symbol);
  return symbol;
}

ToeplitzKernel::ToeplitzKernel(const ToeplitzSpec& t) : m_(t.size()) {
  zero_ = t.coefficients().empty();
  if (zero_) return;
  len_ = fast_fft_length(embedding_length(t));
  fft_.emplace(len_);
  symbol_ = embedding_symbol(t, *fft_);
}

void ToeplitzKernel::apply(std::span<const double> x, std::span<double> y, double alpha,
                           bool accumulate) const {
  if (x.size() != m_ || y.size() != m_) throw ArgumentError("ToeplitzKernel::apply: length mismatch");
  if (zero_) {
    if (!accumulate) std::fill(y.begin(), y.end(), 0.0);
    return;
  }
  auto& s = scratch();
  s.real.assign(len_, 0.0);
  std::copy(x.begin(), x.end(), s.real.begin());
  s.spectrum.resize(symbol_.size());
  const RealFft& fft = (*fft_);
  fft.forward(s.real, s.spectrum);
  for (std::size_t k = 0; k < symbol_.size(); ++k) s.spectrum[k] *= symbol_[k];
  fft.inverse(s.spectrum, s.real);
  const double scale = alpha / static_cast<double>(len_);
  if (accumulate)
    for (std::size_t i = 0; i < m_; ++i) y[i] += scale * s.real[i];
  else
    for (std::size_t i = 0; i < m_; ++i) y[i] = scale * s.real[i];
}

std::vector<double> toeplitz_matvec(const ToeplitzSpec& t, std::span<const double> x) {
  if (x.size() != t.size()) throw ArgumentError("toeplitz_matvec: length mismatch");
  std::vector<double> y(t.size());
  ToeplitzKernel(t).apply(x, y);
  return y;
}

std::vector<double> rect_toeplitz_matvec_wide(const RectToeplitzSpec& b,
                                              std::span<const double> w) {
  if (b.rows() >= b.cols()) throw ArgumentError("rect_toeplitz_matvec_wide: need rows < cols");
  if (w.size() != b.cols()) throw ArgumentError("rect_toeplitz_matvec_wide: length mismatch");
  auto full = toeplitz_matvec(b.completion(), w);
  full.resize(b.rows());
  return full;
}

std::vector<double> rect_toeplitz_matvec_tall(const RectToeplitzSpec& c,
                                              std::span<const double> v) {
  if (c.rows() <= c.cols()) throw ArgumentError("rect_toeplitz_matvec_tall: need rows > cols");
  if (v.size() != c.cols()) throw ArgumentError("rect_toeplitz_matvec_tall: length mismatch");
  std::vector<double> padded(c.rows(), 0.0);
  std::copy(v.begin(), v.end(), padded.begin());
  return toeplitz_matvec(c.completion(), padded);
}

} // namespace tpcamg
