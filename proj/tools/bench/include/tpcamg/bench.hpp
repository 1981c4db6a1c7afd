#pragma once

#include "tpcamg/model_peridynamic.hpp"
#include "tpcamg/timestepper.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tpcamg::bench {

enum class Model { Gamma, PdNonsym, PdSym };

/// "gamma", "pd-nonsym" or "pd-sym". Throws ConfigError otherwise.
Model parse_model(std::string_view name);
std::string model_name(Model m);

struct BenchRow {
  std::size_t N = 0;
  double error = 0.0;
  /// log2(error(N/2) / error(N)); empty when the previous row is not N/2.
  std::optional<double> rate;
  double cpuSeconds = 0.0;
  double avgIterations = 0.0;
  bool converged = true;
  int stagnatedSolves = 0;
};

struct TableRequest {
  Model model = Model::PdSym;
  double gamma = 0.0;
  Horizon delta = Horizon::fixed(0.25);
  std::vector<std::size_t> sizes{32, 64, 128, 256};
  MarchOptions march;
  Startup startup = Startup::Exact;
};

struct TableResult {
  TableRequest request;
  std::vector<BenchRow> rows;
  [[nodiscard]] bool all_converged() const;
};

/// BDF4 with tau = h = 1/N for every N, manufactured solution e^t (1 + x)^6.
TableResult run_table(const TableRequest& req);

std::string to_csv(const TableResult& t);
std::string to_json(const TableResult& t);
std::string to_pretty(const TableResult& t);

struct VerifyRequest {
  Model model = Model::PdSym;
  std::size_t N = 16;
  double gamma = 0.0;
  Horizon delta = Horizon::fixed(1.0 / 16.0);
  SmootherConfig smoother;
  std::uint64_t seed = 1;
};

struct VerifyLine {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool applicable = true;
  std::string detail;
};

struct VerifyReport {
  Model model = Model::PdSym;
  std::size_t N = 0;
  std::size_t r = 0;
  std::vector<VerifyLine> lines;
  /// Inapplicable lines count as passing.
  [[nodiscard]] bool all_pass() const;
};

/// Dense certification of one system. N is limited to 512.
VerifyReport run_verify(const VerifyRequest& req);

std::string to_pretty(const VerifyReport& r);
std::string to_json(const VerifyReport& r);

struct ScalingRequest {
  Model model = Model::PdSym;
  double gamma = 0.0;
  Horizon delta = Horizon::fixed(0.25);
  std::vector<std::size_t> sizes{4096, 8192, 16384, 32768};
  int repeats = 5;
  /// Length of one V-cycle sample; matvec samples are a quarter of it.
  double sampleSeconds = 0.5;
  SmootherConfig smoother;
  std::uint64_t seed = 1;
  /// Time the dense matvec at N = 256 against the fast one.
  bool denseComparison = true;
  /// Smallest N whose doubling ratio is asserted.
  std::size_t assertFrom = 4096;
  double ratioBound = 2.6;
};

struct ScalingRow {
  std::size_t N = 0;
  std::size_t n = 0;
  double matvecSeconds = 0.0;
  double vcycleSeconds = 0.0;
  std::optional<double> matvecRatio, vcycleRatio;
  std::size_t storedCoefficients = 0;
};

struct ScalingResult {
  ScalingRequest request;
  std::vector<ScalingRow> rows;
  std::optional<double> denseSpeedup;
  /// Every asserted V-cycle ratio is within the bound.
  [[nodiscard]] bool growth_ok() const;
};

/// Median-of-repeats wall time of one step-operator matvec and one V-cycle per N.
ScalingResult run_scaling(const ScalingRequest& req);

std::string to_csv(const ScalingResult& s);
std::string to_json(const ScalingResult& s);
std::string to_pretty(const ScalingResult& s);

/// Median wall time of `repeats` samples; each sample averages enough calls of fn to
/// last at least min_sample seconds.
template <class Fn>
double median_time(Fn&& fn, int repeats, double min_sample = 0.02);

} // namespace tpcamg::bench

#include "tpcamg/bench_timing.hpp"
