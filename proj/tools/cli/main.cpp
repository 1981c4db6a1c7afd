#include "tpcamg/bench.hpp"
#include "tpcamg/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace bench = tpcamg::bench;

namespace {

enum Exit { Ok = 0, CriteriaFailed = 1, Usage = 2 };

struct Common {
  std::string model = "pd-sym";
  std::vector<std::size_t> sizes;
  double gamma = 0.0;
  std::string delta = "1/4";
  double tol = 1e-15;
  int maxIter = 200;
  double omegaPre = 1.0, omegaPost = 0.5;
  int m1 = 1, m2 = 1;
  std::size_t coarsest = 7;
  std::string out = "pretty";
  std::uint64_t seed = 1;
  std::string file;
};

void add_common(CLI::App* sub, Common& c, bool multiN) {
  sub->add_option("--model", c.model, "gamma, pd-nonsym or pd-sym")
      ->check(CLI::IsMember({"gamma", "pd-nonsym", "pd-sym"}))
      ->capture_default_str();
  if (multiN)
    sub->add_option("--N", c.sizes, "grid size, repeatable")->check(CLI::PositiveNumber);
  sub->add_option("--gamma", c.gamma, "kernel exponent of the gamma model")->capture_default_str();
  sub->add_option("--delta", c.delta, "horizon: a number, a/b, or sqrt-h")->capture_default_str();
  sub->add_option("--tol", c.tol, "relative residual tolerance")->capture_default_str();
  sub->add_option("--max-iter", c.maxIter, "V-cycles per solve")->capture_default_str();
  sub->add_option("--omega-pre", c.omegaPre)->capture_default_str();
  sub->add_option("--omega-post", c.omegaPost)->capture_default_str();
  sub->add_option("--m1", c.m1, "pre-smoothing sweeps")->capture_default_str();
  sub->add_option("--m2", c.m2, "post-smoothing sweeps")->capture_default_str();
  sub->add_option("--coarsest", c.coarsest, "largest operator solved directly")->capture_default_str();
  sub->add_option("--out", c.out, "csv, json or pretty")
      ->check(CLI::IsMember({"csv", "json", "pretty"}))
      ->capture_default_str();
  sub->add_option("--seed", c.seed)->capture_default_str();
  sub->add_option("-o,--output", c.file, "write to this file instead of stdout");
}

tpcamg::SmootherConfig smoother(const Common& c) {
  tpcamg::SmootherConfig s{c.omegaPre, c.omegaPost, c.m1, c.m2};
  s.validate();
  return s;
}

void emit(const Common& c, const std::string& text) {
  if (c.file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.file);
  if (!f) throw tpcamg::ConfigError("cannot open " + c.file);
  f << text;
}

template <class R>
std::string render(const Common& c, const R& r) {
  if (c.out == "csv") {
    if constexpr (requires { bench::to_csv(r); }) return bench::to_csv(r);
    throw tpcamg::ConfigError("csv output is not available for this command");
  }
  return c.out == "json" ? bench::to_json(r) : bench::to_pretty(r);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured multigrid for Toeplitz-plus-cross systems"};
  app.require_subcommand(1);
  Common tc, vc, sc;
  std::size_t verifyN = 16;
  int verifyR = 0;
  int repeats = 5;

  auto* table = app.add_subcommand("table", "BDF4 error, rate, time and iteration table");
  add_common(table, tc, true);
  auto* verify = app.add_subcommand("verify", "dense certification of one system");
  add_common(verify, vc, false);
  verify->add_option("--N", verifyN, "grid size")->capture_default_str();
  verify->add_option("--r", verifyR, "cells per horizon; overrides --delta");
  auto* scaling = app.add_subcommand("scaling", "matvec and V-cycle timing growth");
  add_common(scaling, sc, true);
  scaling->add_option("--repeats", repeats, "samples per median")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? Ok : Usage;
  }

  try {
    if (*table) {
      bench::TableRequest req;
      req.model = bench::parse_model(tc.model);
      req.gamma = tc.gamma;
      req.delta = tpcamg::Horizon::parse(tc.delta);
      if (!tc.sizes.empty()) req.sizes = tc.sizes;
      req.march.smoother = smoother(tc);
      req.march.solve = {tc.tol, tc.maxIter};
      req.march.coarsestSize = tc.coarsest;
      const auto res = bench::run_table(req);
      emit(tc, render(tc, res));
      return res.all_converged() ? Ok : CriteriaFailed;
    }
    if (*verify) {
      bench::VerifyRequest req;
      req.model = bench::parse_model(vc.model);
      req.N = verifyN;
      req.gamma = vc.gamma;
      req.delta = verifyR > 0 ? tpcamg::Horizon::fixed(static_cast<double>(verifyR) / static_cast<double>(verifyN))
                              : tpcamg::Horizon::parse(vc.delta);
      req.smoother = smoother(vc);
      req.seed = vc.seed;
      const auto rep = bench::run_verify(req);
      emit(vc, render(vc, rep));
      return rep.all_pass() ? Ok : CriteriaFailed;
    }
    bench::ScalingRequest req;
    req.model = bench::parse_model(sc.model);
    req.gamma = sc.gamma;
    req.delta = tpcamg::Horizon::parse(sc.delta);
    if (!sc.sizes.empty()) req.sizes = sc.sizes;
    req.repeats = repeats;
    req.smoother = smoother(sc);
    req.seed = sc.seed;
    const auto res = bench::run_scaling(req);
    emit(sc, render(sc, res));
    return res.growth_ok() ? Ok : CriteriaFailed;
  } catch (const tpcamg::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const tpcamg::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const tpcamg::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  }
}
