#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace tpcamg {

/// Real polynomial sum_k c_k x^k.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  /// (1 + x)^n expanded.
  static Polynomial one_plus_x_pow(unsigned n) {
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    for (unsigned k = 1; k <= n; ++k) c[k] = c[k - 1] * static_cast<double>(n - k + 1) / static_cast<double>(k);
    return Polynomial(std::move(c));
  }

  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return c_; }
  [[nodiscard]] std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }

  [[nodiscard]] double operator()(double x) const noexcept {
    double s = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) s = s * x + c_[k];
    return s;
  }

  /// k-th derivative.
  [[nodiscard]] Polynomial derivative(std::size_t k = 1) const {
    if (k >= c_.size()) return Polynomial({0.0});
    std::vector<double> d(c_.size() - k);
    for (std::size_t j = 0; j < d.size(); ++j) {
      double f = 1.0;
      for (std::size_t i = 0; i < k; ++i) f *= static_cast<double>(j + k - i);
      d[j] = f * c_[j + k];
    }
    return Polynomial(std::move(d));
  }

private:
  std::vector<double> c_;
};

/// Separable manufactured solution u(x, t) = e^t p(x).
struct ExpPolySolution {
  Polynomial p = Polynomial::one_plus_x_pow(6);

  [[nodiscard]] double operator()(double x, double t) const { return std::exp(t) * p(x); }
  /// u_t, equal to u for this family.
  [[nodiscard]] double time_derivative(double x, double t) const { return (*this)(x, t); }
};

} // namespace tpcamg
