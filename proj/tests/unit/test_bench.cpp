#include "tpcamg/bench.hpp"
#include "tpcamg/errors.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace tpcamg;
namespace bench = tpcamg::bench;

namespace {

// CSV with the cpu column blanked.
std::string without_cpu(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (line.back() == ',') cols.emplace_back();
    cols.at(3) = "";
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += "\n";
  }
  return out;
}

} // namespace

TEST(Bench, ParseModel) {
  EXPECT_EQ(bench::parse_model("gamma"), bench::Model::Gamma);
  EXPECT_EQ(bench::parse_model("pd-nonsym"), bench::Model::PdNonsym);
  EXPECT_EQ(bench::model_name(bench::parse_model("pd-sym")), "pd-sym");
  EXPECT_THROW(bench::parse_model("pd"), ConfigError);
}

TEST(Bench, TableCsvIsStable) {
  bench::TableRequest req;
  req.model = bench::Model::Gamma;
  req.gamma = 0.5;
  req.sizes = {16, 32};
  const auto a = bench::to_csv(bench::run_table(req));
  const auto b = bench::to_csv(bench::run_table(req));
  EXPECT_EQ(without_cpu(a), without_cpu(b));
  EXPECT_EQ(a.substr(0, a.find('\n')), "N,error,rate,cpu,iter");
  // No rate on the first row.
  const auto row1 = a.substr(a.find('\n') + 1);
  EXPECT_EQ(row1.substr(0, 3), "16,");
  EXPECT_NE(row1.find(",,"), std::string::npos);
}

TEST(Bench, TableJsonSchema) {
  bench::TableRequest req;
  req.model = bench::Model::PdNonsym;
  req.sizes = {16, 32};
  const auto t = bench::run_table(req);
  const auto j = nlohmann::json::parse(bench::to_json(t));
  EXPECT_EQ(j["model"], "pd-nonsym");
  EXPECT_EQ(j["params"]["delta"], "0.25");
  ASSERT_EQ(j["rows"].size(), 2u);
  for (const char* key : {"N", "error", "rate", "cpu", "iter"}) EXPECT_TRUE(j["rows"][1].contains(key)) << key;
  EXPECT_TRUE(j["rows"][0]["rate"].is_null());
  EXPECT_NEAR(j["rows"][1]["rate"].get<double>(), *t.rows[1].rate, 1e-12);
  EXPECT_TRUE(t.all_converged());
}

TEST(Bench, TableRejectsBadSizes) {
  bench::TableRequest req;
  req.sizes = {20};
  EXPECT_THROW(bench::run_table(req), ConfigError);
  req.sizes = {8};
  EXPECT_THROW(bench::run_table(req), ConfigError);
  req.sizes = {};
  EXPECT_THROW(bench::run_table(req), ConfigError);
}

TEST(Bench, NonConvergenceIsMarked) {
  bench::TableRequest req;
  req.sizes = {16};
  req.march.solve.maxIter = 1;
  const auto t = bench::run_table(req);
  EXPECT_FALSE(t.rows[0].converged);
  EXPECT_FALSE(t.all_converged());
  EXPECT_NE(bench::to_pretty(t).find("not converged"), std::string::npos);
}

TEST(Bench, VerifyReports) {
  bench::VerifyRequest req;
  req.N = 16;
  req.delta = Horizon::fixed(1.0 / 16);
  const auto spd = bench::run_verify(req);
  EXPECT_TRUE(spd.all_pass());
  EXPECT_EQ(spd.r, 1u);
  req.model = bench::Model::Gamma;
  const auto g = bench::run_verify(req);
  EXPECT_TRUE(g.all_pass());
  int na = 0;
  for (const auto& l : g.lines) na += l.applicable ? 0 : 1;
  EXPECT_GE(na, 5);
  EXPECT_NE(bench::to_pretty(g).find("nonsymmetric: not applicable"), std::string::npos);
  req.N = 1024;
  EXPECT_THROW(bench::run_verify(req), ConfigError);
}

TEST(Bench, ScalingSingleSize) {
  bench::ScalingRequest req;
  req.sizes = {256};
  req.repeats = 1;
  req.sampleSeconds = 0.01;
  const auto s = bench::run_scaling(req);
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_GT(s.rows[0].vcycleSeconds, 0.0);
  EXPECT_FALSE(s.rows[0].vcycleRatio.has_value());
  EXPECT_TRUE(s.denseSpeedup.has_value());
  EXPECT_TRUE(s.growth_ok());
  EXPECT_EQ(nlohmann::json::parse(bench::to_json(s))["rows"].size(), 1u);
}
