#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace tpcamg {

/// A sequence that is zero outside the index range [first, first + values.size()).
///
/// Generating sequences of Toeplitz blocks and the cross vectors of coarse
/// operators are stored this way so that only their actual support costs memory.
struct Window {
  std::ptrdiff_t first = 0;
  std::vector<double> values;

  Window() = default;
  Window(std::ptrdiff_t first_index, std::vector<double> vals)
      : first(first_index), values(std::move(vals)) {}

  [[nodiscard]] std::ptrdiff_t end() const noexcept {
    return first + static_cast<std::ptrdiff_t>(values.size());
  }
  [[nodiscard]] bool empty() const noexcept { return values.empty(); }
  [[nodiscard]] std::size_t stored() const noexcept { return values.size(); }

  [[nodiscard]] double operator()(std::ptrdiff_t i) const noexcept {
    return (i < first || i >= end()) ? 0.0 : values[static_cast<std::size_t>(i - first)];
  }

  /// Drops leading and trailing exact zeros.
  Window& trim() {
    std::size_t lo = 0, hi = values.size();
    while (lo < hi && values[lo] == 0.0) ++lo;
    while (hi > lo && values[hi - 1] == 0.0) --hi;
    if (lo == hi) {
      first = 0;
      values.clear();
      return *this;
    }
    first += static_cast<std::ptrdiff_t>(lo);
    values = std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(lo),
                                 values.begin() + static_cast<std::ptrdiff_t>(hi));
    return *this;
  }

  /// Dense window holding every entry of a vector indexed from 0.
  static Window dense(std::vector<double> vals) { return Window(0, std::move(vals)); }
};

} // namespace tpcamg
