#include "tpcamg/bench.hpp"

#include "tpcamg/errors.hpp"
#include "tpcamg/oracle.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <sstream>

namespace tpcamg::bench {

namespace orc = tpcamg::oracle;
using nlohmann::json;

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::unique_ptr<TransientProblem> make_problem(Model model, std::size_t N, double gamma, const Horizon& delta) {
  switch (model) {
  case Model::Gamma:
    return std::make_unique<GammaTransient>(GammaModelConfig{N, gamma});
  case Model::PdNonsym:
    return std::make_unique<PdTransient>(PdModelConfig{N, delta, false});
  case Model::PdSym:
    return std::make_unique<PdTransient>(PdModelConfig{N, delta, true});
  }
  throw ConfigError("unknown model");
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

json params_json(Model model, double gamma, const Horizon& delta) {
  if (model == Model::Gamma) return json{{"gamma", gamma}};
  return json{{"delta", delta.str()}};
}

std::string params_text(Model model, double gamma, const Horizon& delta) {
  return model == Model::Gamma ? "gamma=" + fmt("%g", gamma) : "delta=" + delta.str();
}

} // namespace

Model parse_model(std::string_view name) {
  if (name == "gamma") return Model::Gamma;
  if (name == "pd-nonsym") return Model::PdNonsym;
  if (name == "pd-sym") return Model::PdSym;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected gamma, pd-nonsym or pd-sym)");
}

std::string model_name(Model m) {
  switch (m) {
  case Model::Gamma: return "gamma";
  case Model::PdNonsym: return "pd-nonsym";
  case Model::PdSym: return "pd-sym";
  }
  return "?";
}

bool TableResult::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.converged; });
}

TableResult run_table(const TableRequest& req) {
  if (req.sizes.empty()) throw ConfigError("run_table: no sizes given");
  for (std::size_t N : req.sizes)
    if (!is_pow2(N) || N < 16) throw ConfigError("run_table: N must be a power of two >= 16");
  TableResult out{req, {}};
  for (std::size_t N : req.sizes) {
    const auto pb = make_problem(req.model, N, req.gamma, req.delta);
    TransientConfig tc;
    tc.tau = 1.0 / static_cast<double>(N);
    tc.startup = req.startup;
    const MarchReport rep = bdf4_march(*pb, tc, req.march);
    BenchRow row;
    row.N = N;
    row.error = rep.maxError;
    row.cpuSeconds = rep.solveSeconds;
    row.avgIterations = rep.avgIterations;
    row.converged = rep.allConverged;
    row.stagnatedSolves = rep.stagnatedSolves;
    if (!out.rows.empty() && out.rows.back().N * 2 == N && row.error > 0.0)
      row.rate = std::log2(out.rows.back().error / row.error);
    out.rows.push_back(row);
  }
  return out;
}

std::string to_csv(const TableResult& t) {
  std::ostringstream os;
  os << "N,error,rate,cpu,iter\n";
  for (const auto& r : t.rows) {
    os << r.N << ',' << fmt("%.4e", r.error) << ',' << (r.rate ? fmt("%.2f", *r.rate) : "") << ','
       << fmt("%.4f", r.cpuSeconds) << ',' << fmt("%.2f", r.avgIterations) << '\n';
  }
  return os.str();
}

std::string to_json(const TableResult& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"N", r.N},
                    {"error", r.error},
                    {"rate", r.rate ? json(*r.rate) : json(nullptr)},
                    {"cpu", r.cpuSeconds},
                    {"iter", r.avgIterations},
                    {"converged", r.converged}});
  }
  json j{{"model", model_name(t.request.model)},
         {"params", params_json(t.request.model, t.request.gamma, t.request.delta)},
         {"rows", rows}};
  return j.dump(2) + "\n";
}

std::string to_pretty(const TableResult& t) {
  std::ostringstream os;
  os << "model " << model_name(t.request.model) << ", " << params_text(t.request.model, t.request.gamma, t.request.delta)
     << ", tau = h\n";
  os << "      N       error    rate      cpu(s)   iter\n";
  for (const auto& r : t.rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%7zu  %10.4e  %6s  %10.4f  %5.2f%s\n", r.N, r.error,
                  r.rate ? fmt("%.2f", *r.rate).c_str() : "", r.cpuSeconds, r.avgIterations,
                  r.converged ? "" : "  (not converged)");
    os << buf;
  }
  return os.str();
}

bool VerifyReport::all_pass() const {
  return std::all_of(lines.begin(), lines.end(), [](const VerifyLine& l) { return !l.applicable || l.pass; });
}

VerifyReport run_verify(const VerifyRequest& req) {
  if (!is_pow2(req.N) || req.N < 4 || req.N > 512) throw ConfigError("run_verify: N must be a power of two in [4, 512]");
  VerifyReport rep;
  rep.model = req.model;
  rep.N = req.N;
  TpcOperator op;
  orc::DenseMatrix ref;
  std::vector<double> row_sums;
  double row_sum_scale = 1.0;
  if (req.model == Model::Gamma) {
    const auto sys = assemble_gamma_system({req.N, req.gamma});
    op = sys.op;
    const auto d = orc::dense_gamma_assembly(req.N, req.gamma);
    ref = d.a;
    // With u = 1 on the boundary the interior rows must sum to the boundary weights.
    row_sums.assign(ref.rows, 0.0);
    for (std::size_t i = 0; i < ref.rows; ++i) {
      for (std::size_t j = 0; j < ref.cols; ++j) row_sums[i] += ref(i, j);
      row_sums[i] -= d.left[i] + d.right[i];
    }
  } else {
    const PdModelConfig cfg{req.N, req.delta, req.model == Model::PdSym};
    const auto sys = assemble_pd_system(cfg);
    op = sys.op;
    rep.r = sys.r;
    const auto d = orc::dense_pd_assembly(req.N, sys.r, cfg.symmetricVariant);
    ref = d.a;
    row_sums.assign(ref.rows, 0.0);
    for (std::size_t i = 0; i < ref.rows; ++i) {
      for (std::size_t j = 0; j < ref.cols; ++j) row_sums[i] += ref(i, j);
      for (std::size_t j = 0; j < d.collar.cols; ++j) row_sums[i] += d.collar(i, j);
    }
  }
  const auto dense = orc::dense_expand(op);
  const double amax = std::max(1.0, ref.max_abs());
  for (std::size_t i = 0; i < ref.rows; ++i) row_sum_scale = std::max(row_sum_scale, std::abs(ref(i, i)));

  const double asm_err = orc::max_abs_diff(dense, ref);
  rep.lines.push_back({"assembly_matches_oracle", asm_err, 1e-12 * amax, asm_err <= 1e-12 * amax, true,
                       "fast coefficients vs independent dense assembly"});

  const auto hier = build_hierarchy(op);
  double gal = 0.0;
  for (std::size_t k = 1; k < hier.depth(); ++k) {
    const auto want = orc::dense_galerkin(orc::dense_expand(hier.level(k - 1)));
    gal = std::max(gal, orc::max_abs_diff(orc::dense_expand(hier.level(k)), want) / std::max(1.0, want.max_abs()));
  }
  rep.lines.push_back({"galerkin_exact", gal, 1e-12, gal <= 1e-12, true, "every coarse level vs dense R A P (relative)"});

  if (req.model != Model::PdSym) {
    double rs = 0.0;
    for (double v : row_sums) rs = std::max(rs, std::abs(v));
    rep.lines.push_back({"zero_row_sums", rs, 1e-12 * row_sum_scale, rs <= 1e-12 * row_sum_scale, true,
                         req.model == Model::Gamma ? "A 1 minus boundary weights" : "full-domain row sums"});
    for (const char* name : {"weak_diagonal_dominance", "spd_lambda_min", "jacobi_lambda_max", "smoothing_psd",
                             "approximation_mu", "tgm_factor", "tgm_post_a_norm", "tgm_power_iteration"})
      rep.lines.push_back({name, 0.0, 0.0, false, false, "nonsymmetric: not applicable"});
    return rep;
  }

  const auto th = orc::certify_theory(ref, row_sums, req.smoother.omegaPre, req.smoother.omegaPost);
  for (const auto& c : th.checks) rep.lines.push_back({c.name, c.value, c.bound, c.pass, true, c.detail});
  const double bound = std::sqrt(47.0 / 48.0);
  const double est = tgm_factor_estimate(hier, req.smoother, 3, 200, req.seed);
  rep.lines.push_back({"tgm_power_iteration", est, bound, est <= bound, true, "A-norm factor by power iteration on the fast path"});
  return rep;
}

std::string to_pretty(const VerifyReport& r) {
  std::ostringstream os;
  os << "model " << model_name(r.model) << ", N = " << r.N;
  if (r.model != Model::Gamma) os << ", r = " << r.r;
  os << "\n";
  for (const auto& l : r.lines) {
    char buf[256];
    if (!l.applicable) {
      std::snprintf(buf, sizeof buf, "  n/a   %-26s %s\n", l.name.c_str(), l.detail.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "  %-4s  %-26s value %-12.5e bound %-12.5e %s\n", l.pass ? "PASS" : "FAIL",
                    l.name.c_str(), l.value, l.bound, l.detail.c_str());
    }
    os << buf;
  }
  os << (r.all_pass() ? "all checks pass\n" : "some checks FAIL\n");
  return os.str();
}

std::string to_json(const VerifyReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines) {
    json e{{"name", l.name}, {"applicable", l.applicable}, {"detail", l.detail}};
    if (l.applicable) {
      e["value"] = l.value;
      e["bound"] = l.bound;
      e["pass"] = l.pass;
    }
    lines.push_back(e);
  }
  json j{{"model", model_name(r.model)}, {"N", r.N}, {"r", r.r}, {"pass", r.all_pass()}, {"checks", lines}};
  return j.dump(2) + "\n";
}

bool ScalingResult::growth_ok() const {
  for (const auto& r : rows)
    if (r.vcycleRatio && r.N / 2 >= request.assertFrom && *r.vcycleRatio > request.ratioBound) return false;
  return true;
}

ScalingResult run_scaling(const ScalingRequest& req) {
  if (req.sizes.empty()) throw ConfigError("run_scaling: no sizes given");
  for (std::size_t N : req.sizes)
    if (!is_pow2(N) || N < 16) throw ConfigError("run_scaling: N must be a power of two >= 16");
  ScalingResult out{req, {}, std::nullopt};
  std::mt19937_64 rng(req.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
  };
  auto step_op = [&](std::size_t N) {
    const auto pb = make_problem(req.model, N, req.gamma, req.delta);
    return build_step_operator(pb->stiffness(), pb->scale(), 1.0 / static_cast<double>(N));
  };
  struct Case {
    TpcOperator op;
    Hierarchy hier;
    CycleWorkspace ws;
    std::vector<double> x, y;
    std::vector<double> mv, vc;
  };
  std::vector<Case> cases;
  for (std::size_t N : req.sizes) {
    TpcOperator s = step_op(N);
    Hierarchy hier = build_hierarchy(s);
    CycleWorkspace ws(hier);
    auto x = random(s.size());
    std::vector<double> y(s.size());
    cases.push_back({std::move(s), std::move(hier), std::move(ws), std::move(x), std::move(y), {}, {}});
  }
  // Samples are taken round-robin over the sizes so that load changes on the
  // machine hit every size alike.
  for (int rep = 0; rep < std::max(1, req.repeats); ++rep) {
    for (auto& c : cases) {
      c.mv.push_back(median_time([&] { c.op.apply(c.x, c.y); }, 1, req.sampleSeconds / 4));
      c.vc.push_back(median_time([&] { vcycle(c.hier, c.x, c.y, req.smoother, c.ws); }, 1, req.sampleSeconds));
    }
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    ScalingRow row;
    row.N = req.sizes[i];
    row.n = cases[i].op.size();
    row.storedCoefficients = cases[i].hier.stored_coefficients();
    row.matvecSeconds = median(cases[i].mv);
    row.vcycleSeconds = median(cases[i].vc);
    if (!out.rows.empty() && out.rows.back().N * 2 == row.N) {
      row.matvecRatio = row.matvecSeconds / out.rows.back().matvecSeconds;
      row.vcycleRatio = row.vcycleSeconds / out.rows.back().vcycleSeconds;
    }
    out.rows.push_back(row);
  }
  if (req.denseComparison) {
    const TpcOperator s = step_op(256);
    const auto d = orc::dense_expand(s);
    const auto x = random(s.size());
    std::vector<double> y(s.size());
    const double fast = median_time([&] { s.apply(x, y); }, req.repeats);
    const double slow = median_time([&] { y = orc::dense_matvec(d, x); }, req.repeats);
    out.denseSpeedup = slow / fast;
  }
  return out;
}

std::string to_csv(const ScalingResult& s) {
  std::ostringstream os;
  os << "N,n,matvec,vcycle,matvec_ratio,vcycle_ratio,stored\n";
  for (const auto& r : s.rows) {
    os << r.N << ',' << r.n << ',' << fmt("%.4e", r.matvecSeconds) << ',' << fmt("%.4e", r.vcycleSeconds) << ','
       << (r.matvecRatio ? fmt("%.3f", *r.matvecRatio) : "") << ',' << (r.vcycleRatio ? fmt("%.3f", *r.vcycleRatio) : "")
       << ',' << r.storedCoefficients << '\n';
  }
  return os.str();
}

std::string to_json(const ScalingResult& s) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"N", r.N},
                    {"n", r.n},
                    {"matvec", r.matvecSeconds},
                    {"vcycle", r.vcycleSeconds},
                    {"matvec_ratio", r.matvecRatio ? json(*r.matvecRatio) : json(nullptr)},
                    {"vcycle_ratio", r.vcycleRatio ? json(*r.vcycleRatio) : json(nullptr)},
                    {"stored", r.storedCoefficients}});
  }
  json j{{"model", model_name(s.request.model)},
         {"params", params_json(s.request.model, s.request.gamma, s.request.delta)},
         {"rows", rows},
         {"dense_speedup", s.denseSpeedup ? json(*s.denseSpeedup) : json(nullptr)},
         {"growth_ok", s.growth_ok()}};
  return j.dump(2) + "\n";
}

std::string to_pretty(const ScalingResult& s) {
  std::ostringstream os;
  os << "model " << model_name(s.request.model) << ", " << params_text(s.request.model, s.request.gamma, s.request.delta)
     << ", median of " << s.request.repeats << "\n";
  os << "      N   matvec(s)   ratio   vcycle(s)   ratio   stored/n\n";
  for (const auto& r : s.rows) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%7zu  %10.3e  %6s  %10.3e  %6s  %8.2f\n", r.N, r.matvecSeconds,
                  r.matvecRatio ? fmt("%.2f", *r.matvecRatio).c_str() : "", r.vcycleSeconds,
                  r.vcycleRatio ? fmt("%.2f", *r.vcycleRatio).c_str() : "",
                  static_cast<double>(r.storedCoefficients) / static_cast<double>(r.n));
    os << buf;
  }
  if (s.denseSpeedup) os << "fast matvec vs dense at N = 256: " << fmt("%.1f", *s.denseSpeedup) << "x\n";
  os << (s.growth_ok() ? "growth within bound\n" : "growth exceeds bound\n");
  return os.str();
}

} // namespace tpcamg::bench
