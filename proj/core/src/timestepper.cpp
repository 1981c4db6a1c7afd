#include "tpcamg/timestepper.hpp"

#include "tpcamg/errors.hpp"

#include <array>
#include <cmath>
#include <deque>

namespace tpcamg {

GammaTransient::GammaTransient(const GammaModelConfig& cfg, ExpPolySolution u)
    : sys_(assemble_gamma_system(cfg)), u_(std::move(u)), nodes_(gamma_nodes(cfg)) {}

std::vector<double> GammaTransient::load(double t) const {
  const auto& c = sys_.cfg;
  const double inv = 1.0 / sys_.scale;
  const BlockVector K = sys_.boundary(u_(c.a, t), u_(c.b, t));
  const auto kf = K.flat();
  std::vector<double> f(nodes_.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = gamma_exact_forcing(u_, nodes_[i], t, c.gamma, c.a, c.b) + inv * kf[i];
  return f;
}

PdTransient::PdTransient(const PdModelConfig& cfg, ExpPolySolution u)
    : sys_(assemble_pd_system(cfg)), u_(std::move(u)), nodes_(pd_nodes(cfg)) {}

std::vector<double> PdTransient::load(double t) const {
  std::vector<double> f(nodes_.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = pd_exact_forcing(sys_.cfg, u_, nodes_[i], t);
  const PdCollar g = sample_collar(sys_.cfg, [&](double x) { return u_(x, t); });
  return fold_boundary_rhs(sys_, BlockVector::from_flat(f), g).flat();
}

TpcOperator build_step_operator(const TpcOperator& stiffness, double eta, double tau, double lead) {
  if (!(eta > 0.0)) throw ArgumentError("build_step_operator: scale must be positive");
  if (tau < 0.0) throw ArgumentError("build_step_operator: time step must be non-negative");
  return stiffness.scaled_shifted(tau / eta, lead);
}

namespace {

// Backward differentiation: lead * U^k = sum_i hist[i] U^{k-1-i} + tau * load.
struct BdfCoefficients {
  double lead;
  std::vector<double> hist;
};

const std::array<BdfCoefficients, 4>& bdf_table() {
  static const std::array<BdfCoefficients, 4> t{{
      {1.0, {1.0}},
      {1.5, {2.0, -0.5}},
      {11.0 / 6.0, {3.0, -1.5, 1.0 / 3.0}},
      {25.0 / 12.0, {4.0, -3.0, 4.0 / 3.0, -0.25}},
  }};
  return t;
}

void record(MarchReport& rep, const SolveReport& s) {
  if (!s.converged) rep.allConverged = false;
  if (s.stagnated) ++rep.stagnatedSolves;
}

} // namespace

MarchReport bdf4_march(const TransientProblem& problem, const TransientConfig& cfg, const MarchOptions& opts) {
  if (!(cfg.tau > 0.0) || !(cfg.finalTime > 0.0)) throw ArgumentError("bdf4_march: tau and final time must be positive");
  const long steps = std::lround(cfg.finalTime / cfg.tau);
  if (steps < 4 || std::abs(static_cast<double>(steps) * cfg.tau - cfg.finalTime) > 1e-9 * cfg.finalTime)
    throw ArgumentError("bdf4_march: final time must be a multiple (>= 4) of tau");
  const auto& x = problem.nodes();
  const std::size_t n = x.size();
  MarchReport rep;

  auto sample = [&](double t) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = problem.exact(x[i], t);
    return u;
  };
  // history.front() is the newest level.
  std::deque<std::vector<double>> history;
  auto step = [&](const Hierarchy& hier, const BdfCoefficients& c, double tau, double t,
                  std::deque<std::vector<double>>& hist, bool timed) {
    auto rhs = problem.load(t);
    for (double& v : rhs) v *= tau;
    for (std::size_t i = 0; i < c.hist.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) rhs[j] += c.hist[i] * hist[i][j];
    auto [u, s] = solve(hier, rhs, opts.smoother, opts.solve);
    record(rep, s);
    if (timed) rep.solveSeconds += s.wallTime;
    hist.push_front(std::move(u));
    if (hist.size() > 4) hist.pop_back();
    return s.iterations;
  };

  if (cfg.startup == Startup::Exact) {
    for (int k = 3; k >= 0; --k) history.push_back(sample(k * cfg.tau));
  } else {
    if (cfg.bootstrapSubsteps < 1) throw ArgumentError("bdf4_march: bootstrap needs at least one substep");
    const double ts = cfg.tau / cfg.bootstrapSubsteps;
    std::deque<std::vector<double>> sub{sample(0.0)};
    history.push_front(sub.front());
    std::array<Hierarchy, 3> boot;
    for (int q = 0; q < 3; ++q) {
      boot[q] = build_hierarchy(build_step_operator(problem.stiffness(), problem.scale(), ts, bdf_table()[q].lead),
                                opts.coarsestSize);
      ++rep.hierarchyBuilds;
    }
    for (int j = 1; j <= 3 * cfg.bootstrapSubsteps; ++j) {
      const auto q = static_cast<std::size_t>(std::min(j, 3) - 1);
      step(boot[q], bdf_table()[q], ts, j * ts, sub, false);
      if (j % cfg.bootstrapSubsteps == 0) history.push_front(sub.front());
    }
  }

  const Hierarchy hier =
      build_hierarchy(build_step_operator(problem.stiffness(), problem.scale(), cfg.tau), opts.coarsestSize);
  ++rep.hierarchyBuilds;
  long total_iter = 0;
  for (long k = 4; k <= steps; ++k) {
    total_iter += step(hier, bdf_table()[3], cfg.tau, static_cast<double>(k) * cfg.tau, history, true);
    ++rep.steps;
  }
  rep.avgIterations = rep.steps > 0 ? static_cast<double>(total_iter) / rep.steps : 0.0;
  rep.solution = history.front();
  const auto ex = sample(static_cast<double>(steps) * cfg.tau);
  for (std::size_t i = 0; i < n; ++i) rep.maxError = std::max(rep.maxError, std::abs(rep.solution[i] - ex[i]));
  return rep;
}

} // namespace tpcamg
