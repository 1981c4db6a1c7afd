#pragma once

#include "tpcamg/manufactured.hpp"
#include "tpcamg/model_gamma.hpp"
#include "tpcamg/model_peridynamic.hpp"
#include "tpcamg/solver.hpp"

#include <cstddef>
#include <vector>

namespace tpcamg {

/// A semi-discrete problem U_t + (1/eta) A U = load(t) with a known exact solution.
class TransientProblem {
public:
  virtual ~TransientProblem() = default;
  [[nodiscard]] virtual const TpcOperator& stiffness() const = 0;
  [[nodiscard]] virtual double scale() const = 0;
  /// Node coordinates in block order.
  [[nodiscard]] virtual const std::vector<double>& nodes() const = 0;
  /// Forcing plus boundary contributions at time t, already divided by eta.
  [[nodiscard]] virtual std::vector<double> load(double t) const = 0;
  [[nodiscard]] virtual double exact(double x, double t) const = 0;
};

class GammaTransient final : public TransientProblem {
public:
  explicit GammaTransient(const GammaModelConfig& cfg, ExpPolySolution u = {});
  [[nodiscard]] const TpcOperator& stiffness() const override { return sys_.op; }
  [[nodiscard]] double scale() const override { return sys_.scale; }
  [[nodiscard]] const std::vector<double>& nodes() const override { return nodes_; }
  [[nodiscard]] std::vector<double> load(double t) const override;
  [[nodiscard]] double exact(double x, double t) const override { return u_(x, t); }
  [[nodiscard]] const GammaSystem& system() const noexcept { return sys_; }

private:
  GammaSystem sys_;
  ExpPolySolution u_;
  std::vector<double> nodes_;
};

class PdTransient final : public TransientProblem {
public:
  explicit PdTransient(const PdModelConfig& cfg, ExpPolySolution u = {});
  [[nodiscard]] const TpcOperator& stiffness() const override { return sys_.op; }
  [[nodiscard]] double scale() const override { return sys_.scale; }
  [[nodiscard]] const std::vector<double>& nodes() const override { return nodes_; }
  [[nodiscard]] std::vector<double> load(double t) const override;
  [[nodiscard]] double exact(double x, double t) const override { return u_(x, t); }
  [[nodiscard]] const PdSystem& system() const noexcept { return sys_; }

private:
  PdSystem sys_;
  ExpPolySolution u_;
  std::vector<double> nodes_;
};

enum class Startup {
  /// U^0..U^3 sampled from the exact solution.
  Exact,
  /// U^0 exact, then BDF1, BDF2, BDF3 on substeps of tau / bootstrapSubsteps.
  Bootstrap,
};

struct TransientConfig {
  double tau = 1.0 / 32.0;
  double finalTime = 1.0;
  Startup startup = Startup::Exact;
  int bootstrapSubsteps = 4;
};

/// lead * I + (tau / eta) A, with the shift on the diagonal coefficients.
TpcOperator build_step_operator(const TpcOperator& stiffness, double eta, double tau, double lead = 25.0 / 12.0);

struct MarchReport {
  std::vector<double> solution;
  double maxError = 0.0;
  double avgIterations = 0.0;
  /// Wall time of the BDF4 solves only.
  double solveSeconds = 0.0;
  int steps = 0;
  bool allConverged = true;
  int stagnatedSolves = 0;
  int hierarchyBuilds = 0;
};

struct MarchOptions {
  SmootherConfig smoother;
  SolveOptions solve;
  std::size_t coarsestSize = 7;
};

/// BDF4 from t = 0 to finalTime; one hierarchy serves every BDF4 step.
MarchReport bdf4_march(const TransientProblem& problem, const TransientConfig& cfg, const MarchOptions& opts = {});

} // namespace tpcamg
