#pragma once

#include <algorithm>
#include <chrono>
#include <vector>

namespace tpcamg::bench {

template <class Fn>
double median_time(Fn&& fn, int repeats, double min_sample) {
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::duration d) { return std::chrono::duration<double>(d).count(); };
  // Calibrate the inner count on one warm call.
  auto t0 = clock::now();
  fn();
  const double once = std::max(seconds(clock::now() - t0), 1e-9);
  const int inner = std::max(1, static_cast<int>(min_sample / once));
  std::vector<double> samples;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    t0 = clock::now();
    for (int i = 0; i < inner; ++i) fn();
    samples.push_back(seconds(clock::now() - t0) / inner);
  }
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  return samples[samples.size() / 2];
}

} // namespace tpcamg::bench
