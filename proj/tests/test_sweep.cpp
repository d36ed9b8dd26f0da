// Copyright 2026 The AlphaDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "adp/accounting.hpp"
#include "adp/errors.hpp"
#include "adp/mechanisms.hpp"
#include "adp/optimizer.hpp"
#include "adp/sweep.hpp"

namespace adp {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Mirror of the sweep's internal RDP order selection, used to check the
// rendered column against first principles.
double ArgminRdpAlpha(double sigma, double delta, std::int64_t iterations,
                      const AlphaSearchConfig& cfg) {
  double best_alpha = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (double alpha : AlphaGrid(cfg)) {
    const double total = static_cast<double>(iterations) *
                         GaussianRdpEpsilon(sigma, 1.0, alpha);
    const double converted = RdpToApprox({alpha, total}, delta).epsilon;
    if (converted < best) {
      best = converted;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

TEST_CASE("mechanism sweep reports conversion and baseline per alpha") {
  const std::vector<double> grid = {1.5, 2.0, 4.0};
  const SweepTable table =
      SweepMechanismVsAlpha(RandomizedResponse{0.75}, grid, 1e-5);

  REQUIRE(table.columns ==
          std::vector<std::string>{"alpha", "adp_converted_epsilon",
                                   "baseline_epsilon"});
  REQUIRE(table.rows.size() == 3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double alpha = grid[i];
    CHECK(table.rows[i][0] == alpha);
    CHECK(table.rows[i][1] ==
          AdpToApprox({alpha, RrAdpEpsilon(0.75, alpha)}, 1e-5).epsilon);
    CHECK(table.rows[i][2] == RrPureEpsilon(0.75));
  }
  CHECK(table.metadata.at("mechanism") == "randomized_response");
  CHECK(table.metadata.at("p") == "0.75");
  CHECK(table.metadata.at("delta") == "1e-05");
  CHECK(table.metadata.at("baseline") == "pure");
  CHECK(table.metadata.at("conversion") == "proof");
  CHECK(table.metadata.count("skipped_alpha") == 0);
}

TEST_CASE("mechanism sweep uses the classical bound for gaussian") {
  const SweepTable table =
      SweepMechanismVsAlpha(GaussianMech{2.0, 1.0}, {2.0}, 1e-5);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][2] == GaussianApproxEpsilon(2.0, 1.0, 1e-5));
  CHECK(table.metadata.at("mechanism") == "gaussian");
  CHECK(table.metadata.at("baseline") == "approx");
}

TEST_CASE("mechanism sweep drops overflowing grid points into metadata") {
  // Tight Laplace scale: the consumption exponent crosses the overflow
  // threshold between the two grid points.
  const SweepTable table =
      SweepMechanismVsAlpha(LaplaceMech{0.01, 1.0}, {2.0, 9.0}, 1e-5);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == 2.0);
  CHECK(table.metadata.at("skipped_alpha") == "9");
  CHECK(table.metadata.at("alpha_grid") == "2,9");
}

TEST_CASE("mechanism sweep validates its inputs") {
  CHECK_THROWS_AS(SweepMechanismVsAlpha(RandomizedResponse{0.75}, {}, 1e-5),
                  DomainError);
  CHECK_THROWS_AS(
      SweepMechanismVsAlpha(RandomizedResponse{0.75}, {2.0}, 0.0),
      DomainError);
}

TEST_CASE("cumulative sweep walks every iteration count densely") {
  const double sigma = 10.0;
  const double delta = 1e-5;
  const SweepTable table = SweepCumulativeVsIterations(sigma, 1.0, delta, 5);

  REQUIRE(table.columns ==
          std::vector<std::string>{"iterations", "adp_epsilon", "rdp_epsilon",
                                   "zcdp_epsilon", "advanced_epsilon"});
  REQUIRE(table.rows.size() == 5);

  AlphaSearchConfig cfg;
  const double alpha_adp =
      FindAlphaMinEpsilon(5, sigma, delta, 1.0, cfg).alpha_star;
  const double alpha_rdp = ArgminRdpAlpha(sigma, delta, 5, cfg);
  const double rho = GaussianZcdpRho(sigma, 1.0);

  for (std::int64_t l = 1; l <= 5; ++l) {
    const auto& row = table.rows[static_cast<std::size_t>(l - 1)];
    const double count = static_cast<double>(l);
    CHECK(row[0] == count);
    CHECK(row[1] == GaussianCumulativeEpsilon(sigma, 1.0, alpha_adp, l, delta,
                                              ConversionForm::kProof));
    CHECK(row[2] ==
          RdpToApprox({alpha_rdp,
                       count * GaussianRdpEpsilon(sigma, 1.0, alpha_rdp)},
                      delta)
              .epsilon);
    CHECK(row[3] == ZcdpToApprox({count * rho}, delta).epsilon);
    const double delta_per = delta / (2.0 * count);
    CHECK(row[4] ==
          ComposeAdvanced(GaussianApproxEpsilon(sigma, 1.0, delta_per),
                          delta_per, l, delta / 2.0)
              .epsilon);
  }

  // Consumption accumulates: every column grows with the iteration count.
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
      CHECK(table.rows[i][c] > table.rows[i - 1][c]);
    }
  }

  CHECK(table.metadata.at("sigma") == "10");
  CHECK(table.metadata.at("max_iterations") == "5");
  CHECK(table.metadata.at("delta_split") == "slack=delta/2,per_query=delta/(2n)");
  CHECK(table.metadata.count("sampled_iterations") == 0);
}

TEST_CASE("cumulative sweep samples long horizons logarithmically") {
  const SweepTable table =
      SweepCumulativeVsIterations(100.0, 1.0, 1e-5, 1500);
  CHECK(table.rows.size() <= 64);
  CHECK(table.rows.front()[0] == 1.0);
  CHECK(table.rows.back()[0] == 1500.0);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const double v = table.rows[i][0];
    CHECK(v == std::floor(v));
    CHECK(v > table.rows[i - 1][0]);
  }
  REQUIRE(table.metadata.count("sampled_iterations") == 1);
  // The metadata lists exactly the iteration counts that appear as rows.
  std::string joined;
  for (const auto& row : table.rows) {
    if (!joined.empty()) joined += ",";
    joined += std::to_string(static_cast<std::int64_t>(row[0]));
  }
  CHECK(table.metadata.at("sampled_iterations") == joined);
}

TEST_CASE("cumulative sweep can re-optimize the order at every row") {
  const double sigma = 10.0;
  const double delta = 1e-5;
  const SweepTable table =
      SweepCumulativeVsIterations(sigma, 1.0, delta, 3, {}, true);
  REQUIRE(table.rows.size() == 3);
  for (std::int64_t l = 1; l <= 3; ++l) {
    const double alpha_l =
        FindAlphaMinEpsilon(l, sigma, delta, 1.0).alpha_star;
    CHECK(table.rows[static_cast<std::size_t>(l - 1)][1] ==
          GaussianCumulativeEpsilon(sigma, 1.0, alpha_l, l, delta,
                                    ConversionForm::kProof));
  }
  CHECK(table.metadata.at("reoptimize_per_step") == "true");
}

TEST_CASE("cumulative sweep validates its inputs") {
  CHECK_THROWS_AS(SweepCumulativeVsIterations(10.0, 1.0, 1e-5, 0),
                  DomainError);
  CHECK_THROWS_AS(SweepCumulativeVsIterations(10.0, 1.0, 2.0, 5),
                  DomainError);
}

TEST_CASE("optimizer curve sweep tabulates epsilon against alpha") {
  AlphaSearchConfig cfg;
  cfg.alpha_min = 2.0;
  cfg.alpha_max = 5.0;
  cfg.alpha_step = 1.0;
  const std::vector<double> targets = {10.0, 100.0};
  const SweepTable table = SweepOptimizerCurves(
      10, 1e-5, 1.0, targets, OptimizerSweepMode::kEpsilonVsAlpha, cfg);

  REQUIRE(table.columns ==
          std::vector<std::string>{"alpha", "epsilon_sigma_10",
                                   "epsilon_sigma_100"});
  REQUIRE(table.rows.size() == 4);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double alpha = 2.0 + static_cast<double>(i);
    CHECK(table.rows[i][0] == alpha);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      CHECK(table.rows[i][t + 1] ==
            GaussianCumulativeEpsilon(targets[t], 1.0, alpha, 10, 1e-5,
                                      ConversionForm::kProof));
    }
  }
  CHECK(table.metadata.at("mode") == "epsilon_vs_alpha");
  CHECK(table.metadata.at("targets") == "10,100");
}

TEST_CASE("optimizer curve sweep tabulates minimal sigma against alpha") {
  AlphaSearchConfig cfg;
  cfg.alpha_min = 2.0;
  cfg.alpha_max = 8.0;
  cfg.alpha_step = 2.0;
  cfg.sigma_max = 50.0;
  const SweepTable table = SweepOptimizerCurves(
      10, 1e-5, 1.0, {2.0}, OptimizerSweepMode::kSigmaVsAlpha, cfg);

  REQUIRE(table.columns ==
          std::vector<std::string>{"alpha", "sigma_min_bound_2"});
  for (const auto& row : table.rows) {
    const double alpha = row[0];
    double expected = kNan;
    for (double sigma : SigmaGrid(cfg)) {
      double converted;
      try {
        converted = GaussianCumulativeEpsilon(sigma, 1.0, alpha, 10, 1e-5,
                                              ConversionForm::kProof);
      } catch (const OverflowError&) {
        continue;
      }
      if (converted <= 2.0) {
        expected = sigma;
        break;
      }
    }
    if (std::isnan(expected)) {
      CHECK(std::isnan(row[1]));
    } else {
      CHECK(row[1] == expected);
    }
  }
  // The residual conversion term alone exceeds the bound at alpha = 2, so
  // that row must be empty.
  REQUIRE(table.rows[0][0] == 2.0);
  CHECK(std::isnan(table.rows[0][1]));
  CHECK(table.metadata.at("mode") == "sigma_vs_alpha");
}

TEST_CASE("optimizer curve sweep validates its inputs") {
  CHECK_THROWS_AS(SweepOptimizerCurves(0, 1e-5, 1.0, {1.0},
                                       OptimizerSweepMode::kEpsilonVsAlpha),
                  DomainError);
  CHECK_THROWS_AS(SweepOptimizerCurves(10, 1e-5, 1.0, {},
                                       OptimizerSweepMode::kEpsilonVsAlpha),
                  DomainError);
  CHECK_THROWS_AS(SweepOptimizerCurves(10, 1e-5, 1.0, {-1.0},
                                       OptimizerSweepMode::kEpsilonVsAlpha),
                  DomainError);
}

TEST_CASE("doubles render with enough digits to round-trip") {
  std::mt19937_64 rng(20260814);
  std::uniform_real_distribution<double> mantissa(0.5, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  for (int i = 0; i < 200; ++i) {
    const double v = std::ldexp(mantissa(rng), exponent(rng));
    const std::string text = FormatDouble(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  CHECK(std::strtod(FormatDouble(5.01955079901943e-05).c_str(), nullptr) ==
        5.01955079901943e-05);
}

TEST_CASE("csv rendering uses empty cells for absent values") {
  SweepTable table;
  table.columns = {"x", "y"};
  table.rows = {{1.0, kNan}, {2.5, 0.1}};
  table.metadata["b"] = "2";
  table.metadata["a"] = "1";
  CHECK(ToCsv(table) ==
        "x,y\n"
        "1,\n"
        "2.5,0.10000000000000001\n"
        "# a=1\n"
        "# b=2\n");
}

TEST_CASE("csv cells parse back to the exact stored doubles") {
  const SweepTable table =
      SweepMechanismVsAlpha(RandomizedResponse{0.9}, {2.0, 3.0}, 1e-5);
  const std::string csv = ToCsv(table);

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < csv.size()) {
    const std::size_t end = csv.find('\n', start);
    lines.push_back(csv.substr(start, end - start));
    start = end + 1;
  }
  REQUIRE(lines.size() >= 3);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& line = lines[r + 1];
    std::size_t field_start = 0;
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      std::size_t field_end = line.find(',', field_start);
      if (field_end == std::string::npos) field_end = line.size();
      const std::string field =
          line.substr(field_start, field_end - field_start);
      CHECK(std::strtod(field.c_str(), nullptr) == table.rows[r][c]);
      field_start = field_end + 1;
    }
  }
}

TEST_CASE("json rendering maps absent cells to null") {
  SweepTable table;
  table.columns = {"x", "y"};
  table.rows = {{1.0, kNan}, {2.5, 0.1}};
  table.metadata["a"] = "1";
  const nlohmann::json j = ToJson(table);
  CHECK(j["columns"] == nlohmann::json({"x", "y"}));
  CHECK(j["metadata"]["a"] == "1");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0][0].get<double>() == 1.0);
  CHECK(j["rows"][0][1].is_null());
  CHECK(j["rows"][1][1].get<double>() == 0.1);
  // Serialized and reparsed, the numbers survive bit for bit.
  const nlohmann::json round = nlohmann::json::parse(j.dump());
  CHECK(round["rows"][1][1].get<double>() == 0.1);
}

}  // namespace
}  // namespace adp
