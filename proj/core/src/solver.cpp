#include "tpcamg/solver.hpp"

#include "tpcamg/errors.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

namespace tpcamg {

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

void smooth(const TpcOperator& op, std::span<const double> inv_diag, std::span<double> x,
            std::span<const double> b, std::span<double> r, double omega) {
  op.residual(b, x, r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += omega * inv_diag[i] * r[i];
}

// Result left in ws.levels[k].x.
void cycle(const Hierarchy& h, std::size_t k, std::span<const double> b, const SmootherConfig& cfg,
           CycleWorkspace& ws) {
  CycleWorkspace::Level& w = ws.levels[k];
  if (k + 1 == h.depth()) {
    h.coarsest().solve(b, w.x);
    return;
  }
  const TpcOperator& op = h.level(k);
  const auto inv = h.inverse_diagonal(k);
  auto& x = w.x;
  int pre = cfg.m1;
  if (pre > 0) {
    // First sweep from x = 0 needs no matvec.
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = cfg.omegaPre * inv[i] * b[i];
    --pre;
  } else {
    std::fill(x.begin(), x.end(), 0.0);
  }
  for (; pre > 0; --pre) smooth(op, inv, x, b, w.r, cfg.omegaPre);
  op.residual(b, x, w.r);
  restrict_vector(w.r, w.bc);
  cycle(h, k + 1, w.bc, cfg, ws);
  prolong_add(ws.levels[k + 1].x, x);
  for (int s = 0; s < cfg.m2; ++s) smooth(op, inv, x, b, w.r, cfg.omegaPost);
}

} // namespace

CycleWorkspace::CycleWorkspace(const Hierarchy& h) : levels(h.depth()) {
  for (std::size_t k = 0; k < h.depth(); ++k) {
    levels[k].x.resize(h.level(k).size());
    levels[k].r.resize(h.level(k).size());
    if (k + 1 < h.depth()) levels[k].bc.resize(h.level(k + 1).size());
  }
}

void SmootherConfig::validate() const {
  if (!(omegaPre > 0.0) || !(omegaPost > 0.0)) throw ArgumentError("smoother: relaxation weights must be positive");
  if (m1 < 0 || m2 < 0) throw ArgumentError("smoother: sweep counts must be non-negative");
}

void jacobi_sweep(const TpcOperator& op, std::span<double> x, std::span<const double> b, double omega) {
  auto d = op.diagonal();
  for (double v : d)
    if (v == 0.0) throw SingularError("jacobi_sweep: zero diagonal entry");
  std::vector<double> r(x.size());
  op.residual(b, x, r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += omega * r[i] / d[i];
}

BlockVector jacobi_sweep(const TpcOperator& op, const BlockVector& x, const BlockVector& b, double omega) {
  auto xf = x.flat();
  const auto bf = b.flat();
  jacobi_sweep(op, xf, bf, omega);
  return BlockVector::from_flat(xf);
}

void vcycle(const Hierarchy& hier, std::span<const double> b, std::span<double> x, const SmootherConfig& cfg,
            CycleWorkspace& ws) {
  const std::size_t n = hier.level(0).size();
  if (b.size() != n || x.size() != n) throw ArgumentError("vcycle: vector length mismatch");
  if (ws.levels.size() != hier.depth() || ws.levels[0].x.size() != n)
    throw ArgumentError("vcycle: workspace belongs to a different hierarchy");
  cycle(hier, 0, b, cfg, ws);
  std::copy(ws.levels[0].x.begin(), ws.levels[0].x.end(), x.begin());
}

std::vector<double> vcycle(const Hierarchy& hier, std::span<const double> b, const SmootherConfig& cfg) {
  CycleWorkspace ws(hier);
  std::vector<double> x(hier.level(0).size());
  vcycle(hier, b, x, cfg, ws);
  return x;
}

BlockVector vcycle(const Hierarchy& hier, const BlockVector& b, const SmootherConfig& cfg) {
  const auto bf = b.flat();
  return BlockVector::from_flat(vcycle(hier, std::span<const double>(bf), cfg));
}

std::pair<std::vector<double>, SolveReport> solve(const Hierarchy& hier, std::span<const double> b,
                                                  const SmootherConfig& cfg, const SolveOptions& opts) {
  cfg.validate();
  const TpcOperator& op = hier.level(0);
  const std::size_t n = op.size();
  if (b.size() != n) throw ArgumentError("solve: right-hand side has the wrong length");
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  std::vector<double> x(n, 0.0), r(b.begin(), b.end());
  const double r0 = norm2(r);
  if (r0 == 0.0) {
    rep.converged = true;
    return {x, rep};
  }
  CycleWorkspace ws(hier);
  int high_ratio_run = 0;
  double prev = 1.0;
  while (rep.iterations < opts.maxIter) {
    cycle(hier, 0, r, cfg, ws);
    const auto& e = ws.levels[0].x;
    for (std::size_t i = 0; i < n; ++i) x[i] += e[i];
    op.residual(b, x, r);
    ++rep.iterations;
    const double rel = norm2(r) / r0;
    rep.relativeResiduals.push_back(rel);
    if (rel < opts.tol) {
      rep.converged = true;
      break;
    }
    high_ratio_run = rel / prev > 0.99 ? high_ratio_run + 1 : 0;
    prev = rel;
    if (high_ratio_run >= 3) {
      rep.converged = true;
      rep.stagnated = true;
      break;
    }
  }
  rep.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double last = rep.relativeResiduals.empty() ? 1.0 : rep.relativeResiduals.back();
  rep.contractionEstimate = rep.iterations > 0 && last > 0.0 ? std::pow(last, 1.0 / rep.iterations) : 0.0;
  return {x, rep};
}

std::pair<BlockVector, SolveReport> solve(const Hierarchy& hier, const BlockVector& b,
                                          const SmootherConfig& cfg, const SolveOptions& opts) {
  const auto bf = b.flat();
  auto [x, rep] = solve(hier, std::span<const double>(bf), cfg, opts);
  return {BlockVector::from_flat(x), std::move(rep)};
}

double tgm_factor_estimate(const Hierarchy& hier, const SmootherConfig& cfg, int trials, int iterations,
                           std::uint64_t seed) {
  cfg.validate();
  const TpcOperator& op = hier.level(0);
  if (!op.is_symmetric(1e-12 * std::abs(op.diagonal()[0]))) throw UnsupportedVariant("tgm_factor_estimate: operator is not symmetric");
  if (hier.depth() < 2) return 0.0;
  // Two-grid: the second level is solved directly.
  const Hierarchy tg = hier.depth() == 2 ? hier : Hierarchy({hier.level(0), hier.level(1)});
  const std::size_t n = op.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> e(n), Ae(n);
  auto anorm = [&](const std::vector<double>& v) {
    op.apply(v, Ae);
    const double s = dot(v, Ae);
    if (s < 0.0) throw UnsupportedVariant("tgm_factor_estimate: operator is not positive definite");
    return std::sqrt(s);
  };
  double best = 0.0;
  CycleWorkspace ws(tg);
  for (int t = 0; t < trials; ++t) {
    for (double& v : e) v = dist(rng);
    double nrm = anorm(e);
    double ratio = 0.0;
    for (int it = 0; it < iterations && nrm > 0.0; ++it) {
      for (double& v : e) v /= nrm;
      // Error propagation on A x = 0: e <- e - B A e.
      op.apply(e, Ae);
      cycle(tg, 0, Ae, cfg, ws);
      const auto& c = ws.levels[0].x;
      for (std::size_t i = 0; i < n; ++i) e[i] -= c[i];
      const double next = anorm(e);
      ratio = next;
      nrm = next;
      if (nrm < 1e-300) {
        ratio = 0.0;
        break;
      }
    }
    best = std::max(best, ratio);
  }
  return best;
}

} // namespace tpcamg
