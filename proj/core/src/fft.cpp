#include "tpcamg/fft.hpp"

#include "tpcamg/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace tpcamg {

namespace detail {

struct FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

namespace {

// The FFTW planner is not reentrant; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const FftPlans* plans_for(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<FftPlans>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[n];
  if (!slot) {
    std::vector<double> re(n);
    std::vector<std::complex<double>> sp(n / 2 + 1);
    auto* c = reinterpret_cast<fftw_complex*>(sp.data());
    const int len = static_cast<int>(n);
    auto plans = std::make_unique<FftPlans>();
    plans->forward = fftw_plan_dft_r2c_1d(len, re.data(), c, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans->inverse = fftw_plan_dft_c2r_1d(len, c, re.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    slot = std::move(plans);
  }
  return slot.get();
}

} // namespace
} // namespace detail

std::size_t fast_fft_length(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t len = n;; ++len) {
    std::size_t r = len;
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (r % p == 0) r /= p;
    if (r == 1) return len;
  }
}

RealFft::RealFft(std::size_t n) : n_(n), plans_(nullptr) {
  if (n == 0) throw ArgumentError("RealFft: length must be positive");
  plans_ = detail::plans_for(n);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != spectrum_size())
    throw ArgumentError("RealFft::forward: buffer size mismatch");
  // r2c plans leave their input untouched.
  fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::inverse(std::span<std::complex<double>> in, std::span<double> out) const {
  if (in.size() != spectrum_size() || out.size() != n_)
    throw ArgumentError("RealFft::inverse: buffer size mismatch");
  fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

std::vector<double> circulant_matvec(std::span<const double> first_col,
                                     std::span<const double> x) {
  const std::size_t n = first_col.size();
  if (n == 0) throw ArgumentError("circulant_matvec: empty input");
  if (x.size() != n) throw ArgumentError("circulant_matvec: length mismatch");
  RealFft fft(n);
  std::vector<std::complex<double>> fc(fft.spectrum_size()), fx(fft.spectrum_size());
  fft.forward(first_col, fc);
  fft.forward(x, fx);
  for (std::size_t k = 0; k < fc.size(); ++k) fx[k] *= fc[k];
  std::vector<double> y(n);
  fft.inverse(fx, y);
  const double scale = 1.0 / static_cast<double>(n);
  std::transform(y.begin(), y.end(), y.begin(), [scale](double v) { return v * scale; });
  return y;
}

} // namespace tpcamg
