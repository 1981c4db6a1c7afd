#pragma once

#include "tpcamg/hierarchy.hpp"
#include "tpcamg/tpc_operator.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tpcamg {

struct SmootherConfig {
  double omegaPre = 1.0;
  double omegaPost = 0.5;
  int m1 = 1;
  int m2 = 1;

  void validate() const;
};

struct SolveOptions {
  double tol = 1e-15;
  int maxIter = 200;
};

struct SolveReport {
  int iterations = 0;
  /// ||r_i|| / ||r_0|| after each cycle.
  std::vector<double> relativeResiduals;
  double wallTime = 0.0;
  /// Geometric mean of the per-cycle residual reduction.
  double contractionEstimate = 0.0;
  bool converged = false;
  /// Three successive reduction ratios above 0.99; counted as converged.
  bool stagnated = false;
};

/// x <- x + omega D^-1 (b - op x).
void jacobi_sweep(const TpcOperator& op, std::span<double> x, std::span<const double> b, double omega);
BlockVector jacobi_sweep(const TpcOperator& op, const BlockVector& x, const BlockVector& b, double omega);

/// Per-level buffers of a V-cycle, reusable for any number of cycles on one hierarchy.
struct CycleWorkspace {
  struct Level {
    std::vector<double> x, r, bc;
  };
  std::vector<Level> levels;

  CycleWorkspace() = default;
  explicit CycleWorkspace(const Hierarchy& hier);
};

/// One V(m1, m2) cycle for op_0 x = b from the zero initial guess.
void vcycle(const Hierarchy& hier, std::span<const double> b, std::span<double> x, const SmootherConfig& cfg,
            CycleWorkspace& ws);
std::vector<double> vcycle(const Hierarchy& hier, std::span<const double> b, const SmootherConfig& cfg);
BlockVector vcycle(const Hierarchy& hier, const BlockVector& b, const SmootherConfig& cfg);

/// x <- x + vcycle(b - A x) from x = 0 until ||r|| / ||r_0|| < tol, stagnation or maxIter.
std::pair<std::vector<double>, SolveReport> solve(const Hierarchy& hier, std::span<const double> b,
                                                  const SmootherConfig& cfg, const SolveOptions& opts = {});
std::pair<BlockVector, SolveReport> solve(const Hierarchy& hier, const BlockVector& b,
                                          const SmootherConfig& cfg, const SolveOptions& opts = {});

/// Asymptotic A-norm contraction of the two-grid method (the first two levels of
/// hier, coarse level solved exactly), by power iteration on the error propagator
/// from random starts. Returns the largest estimate over the trials.
double tgm_factor_estimate(const Hierarchy& hier, const SmootherConfig& cfg, int trials = 3,
                           int iterations = 200, std::uint64_t seed = 1);

} // namespace tpcamg
