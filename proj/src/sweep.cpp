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

#include "adp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "adp/accounting.hpp"

namespace adp {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr std::int64_t kDenseIterationLimit = 1000;
constexpr int kLogSamplePoints = 64;

std::string FormatShort(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string ConversionName(ConversionForm form) {
  return form == ConversionForm::kProof ? "proof" : "statement";
}

std::string JoinShort(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ",";
    out += FormatShort(v);
  }
  return out;
}

void CheckDeltaParam(double delta) {
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0) {
    throw DomainError("delta must lie strictly in (0, 1)");
  }
}

// The iteration counts a cumulative sweep evaluates: every integer up to
// kDenseIterationLimit, logarithmically sampled above it.
std::vector<std::int64_t> IterationSchedule(std::int64_t max_iterations) {
  std::vector<std::int64_t> out;
  if (max_iterations <= kDenseIterationLimit) {
    out.reserve(static_cast<std::size_t>(max_iterations));
    for (std::int64_t i = 1; i <= max_iterations; ++i) out.push_back(i);
    return out;
  }
  const double log_max = std::log(static_cast<double>(max_iterations));
  for (int j = 0; j < kLogSamplePoints; ++j) {
    const double t = log_max * static_cast<double>(j) /
                     static_cast<double>(kLogSamplePoints - 1);
    const auto value = static_cast<std::int64_t>(std::llround(std::exp(t)));
    if (out.empty() || value > out.back()) out.push_back(value);
  }
  if (out.back() != max_iterations) out.push_back(max_iterations);
  return out;
}

// RDP counterpart of the alpha search: argmin over the grid of the
// converted n-step Renyi consumption, ties toward smaller alpha.
double BestRdpAlpha(double sigma, double l2_sensitivity, double delta,
                    std::int64_t iterations, const AlphaSearchConfig& cfg) {
  double best_alpha = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (double alpha : AlphaGrid(cfg)) {
    const double total = static_cast<double>(iterations) *
                         GaussianRdpEpsilon(sigma, l2_sensitivity, alpha);
    const double converted = RdpToApprox({alpha, total}, delta).epsilon;
    if (converted < best) {
      best = converted;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

}  // namespace

SweepTable SweepMechanismVsAlpha(const MechanismSpec& mech,
                                 const std::vector<double>& alpha_grid,
                                 double delta, ConversionForm form) {
  if (alpha_grid.empty()) {
    throw DomainError("alpha_grid must be nonempty");
  }
  CheckDeltaParam(delta);

  SweepTable table;
  table.columns = {"alpha", "adp_converted_epsilon", "baseline_epsilon"};
  table.metadata["delta"] = FormatShort(delta);
  table.metadata["conversion"] = ConversionName(form);

  double baseline = 0.0;
  if (const auto* rr = std::get_if<RandomizedResponse>(&mech)) {
    baseline = RrPureEpsilon(rr->p);
    table.metadata["mechanism"] = "randomized_response";
    table.metadata["p"] = FormatShort(rr->p);
    table.metadata["baseline"] = "pure";
  } else if (const auto* lap = std::get_if<LaplaceMech>(&mech)) {
    baseline = LaplacePureEpsilon(lap->scale_b, lap->l1_sensitivity);
    table.metadata["mechanism"] = "laplace";
    table.metadata["scale_b"] = FormatShort(lap->scale_b);
    table.metadata["l1_sensitivity"] = FormatShort(lap->l1_sensitivity);
    table.metadata["baseline"] = "pure";
  } else {
    const auto& gauss = std::get<GaussianMech>(mech);
    baseline = GaussianApproxEpsilon(gauss.sigma, gauss.l2_sensitivity, delta);
    table.metadata["mechanism"] = "gaussian";
    table.metadata["sigma"] = FormatShort(gauss.sigma);
    table.metadata["l2_sensitivity"] = FormatShort(gauss.l2_sensitivity);
    table.metadata["baseline"] = "approx";
  }

  std::vector<double> skipped;
  for (double alpha : alpha_grid) {
    try {
      const double single = MechanismAdpEpsilon(mech, alpha);
      const double converted = AdpToApprox({alpha, single}, delta, form).epsilon;
      table.rows.push_back({alpha, converted, baseline});
    } catch (const OverflowError&) {
      skipped.push_back(alpha);
    }
  }
  if (!skipped.empty()) {
    table.metadata["skipped_alpha"] = JoinShort(skipped);
  }
  table.metadata["alpha_grid"] = JoinShort(alpha_grid);
  return table;
}

SweepTable SweepCumulativeVsIterations(double sigma, double l2_sensitivity,
                                       double delta,
                                       std::int64_t max_iterations,
                                       const AlphaSearchConfig& cfg,
                                       bool reoptimize_per_step) {
  if (max_iterations < 1) {
    throw DomainError("max_iterations must be >= 1");
  }
  CheckDeltaParam(delta);

  const double alpha_adp =
      FindAlphaMinEpsilon(max_iterations, sigma, delta, l2_sensitivity, cfg)
          .alpha_star;
  const double alpha_rdp =
      BestRdpAlpha(sigma, l2_sensitivity, delta, max_iterations, cfg);
  const double rho = GaussianZcdpRho(sigma, l2_sensitivity);

  SweepTable table;
  table.columns = {"iterations", "adp_epsilon", "rdp_epsilon", "zcdp_epsilon",
                   "advanced_epsilon"};
  const std::vector<std::int64_t> schedule = IterationSchedule(max_iterations);

  for (std::int64_t l : schedule) {
    const double count = static_cast<double>(l);

    double adp = kNan;
    try {
      double a = alpha_adp;
      if (reoptimize_per_step) {
        a = FindAlphaMinEpsilon(l, sigma, delta, l2_sensitivity, cfg)
                .alpha_star;
      }
      adp = GaussianCumulativeEpsilon(sigma, l2_sensitivity, a, l, delta,
                                      cfg.conversion);
    } catch (const OverflowError&) {
    } catch (const NoFeasibleAlpha&) {
    }

    const double a_rdp = reoptimize_per_step
                             ? BestRdpAlpha(sigma, l2_sensitivity, delta, l, cfg)
                             : alpha_rdp;
    const double rdp =
        RdpToApprox({a_rdp, count * GaussianRdpEpsilon(sigma, l2_sensitivity,
                                                       a_rdp)},
                    delta)
            .epsilon;
    const double zcdp = ZcdpToApprox({count * rho}, delta).epsilon;

    // Overall delta split for the advanced baseline: half as slack, the
    // other half spread evenly over the queries.
    const double delta_per = delta / (2.0 * count);
    const double advanced =
        ComposeAdvanced(GaussianApproxEpsilon(sigma, l2_sensitivity, delta_per),
                        delta_per, l, delta / 2.0)
            .epsilon;

    table.rows.push_back({count, adp, rdp, zcdp, advanced});
  }

  table.metadata["sigma"] = FormatShort(sigma);
  table.metadata["l2_sensitivity"] = FormatShort(l2_sensitivity);
  table.metadata["delta"] = FormatShort(delta);
  table.metadata["max_iterations"] = std::to_string(max_iterations);
  table.metadata["alpha_adp"] = FormatShort(alpha_adp);
  table.metadata["alpha_rdp"] = FormatShort(alpha_rdp);
  table.metadata["conversion"] = ConversionName(cfg.conversion);
  table.metadata["delta_split"] = "slack=delta/2,per_query=delta/(2n)";
  table.metadata["reoptimize_per_step"] =
      reoptimize_per_step ? "true" : "false";
  if (max_iterations > kDenseIterationLimit) {
    std::string sampled;
    for (std::int64_t l : schedule) {
      if (!sampled.empty()) sampled += ",";
      sampled += std::to_string(l);
    }
    table.metadata["sampled_iterations"] = sampled;
  }
  return table;
}

SweepTable SweepOptimizerCurves(std::int64_t iterations, double delta,
                                double l2_sensitivity,
                                const std::vector<double>& targets,
                                OptimizerSweepMode mode,
                                const AlphaSearchConfig& cfg) {
  if (iterations < 1) {
    throw DomainError("iterations must be >= 1");
  }
  CheckDeltaParam(delta);
  if (targets.empty()) {
    throw DomainError("targets must be nonempty");
  }
  for (double t : targets) {
    if (!std::isfinite(t) || t <= 0.0) {
      throw DomainError("targets must be > 0");
    }
  }

  SweepTable table;
  table.columns = {"alpha"};
  for (double t : targets) {
    table.columns.push_back(mode == OptimizerSweepMode::kEpsilonVsAlpha
                                ? "epsilon_sigma_" + FormatShort(t)
                                : "sigma_min_bound_" + FormatShort(t));
  }

  const std::vector<double> alphas = AlphaGrid(cfg);
  const std::vector<double> sigmas = SigmaGrid(cfg);
  for (double alpha : alphas) {
    std::vector<double> row = {alpha};
    for (double t : targets) {
      double cell = kNan;
      if (mode == OptimizerSweepMode::kEpsilonVsAlpha) {
        try {
          cell = GaussianCumulativeEpsilon(t, l2_sensitivity, alpha,
                                           iterations, delta, cfg.conversion);
        } catch (const OverflowError&) {
        }
      } else {
        for (double sigma : sigmas) {
          double converted;
          try {
            converted = GaussianCumulativeEpsilon(sigma, l2_sensitivity, alpha,
                                                  iterations, delta,
                                                  cfg.conversion);
          } catch (const OverflowError&) {
            continue;
          }
          if (converted <= t) {
            cell = sigma;
            break;
          }
        }
      }
      row.push_back(cell);
    }
    table.rows.push_back(std::move(row));
  }

  table.metadata["iterations"] = std::to_string(iterations);
  table.metadata["delta"] = FormatShort(delta);
  table.metadata["l2_sensitivity"] = FormatShort(l2_sensitivity);
  table.metadata["mode"] = mode == OptimizerSweepMode::kEpsilonVsAlpha
                               ? "epsilon_vs_alpha"
                               : "sigma_vs_alpha";
  table.metadata["targets"] = JoinShort(targets);
  table.metadata["conversion"] = ConversionName(cfg.conversion);
  return table;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string ToCsv(const SweepTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ",";
    out += table.columns[c];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ",";
      if (!std::isnan(row[c])) out += FormatDouble(row[c]);
    }
    out += "\n";
  }
  for (const auto& [key, value] : table.metadata) {
    out += "# " + key + "=" + value + "\n";
  }
  return out;
}

nlohmann::json ToJson(const SweepTable& table) {
  nlohmann::json j;
  j["columns"] = table.columns;
  j["metadata"] = table.metadata;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json jrow = nlohmann::json::array();
    for (double v : row) {
      if (std::isnan(v)) {
        jrow.push_back(nullptr);
      } else {
        jrow.push_back(v);
      }
    }
    rows.push_back(std::move(jrow));
  }
  return j;
}

}  // namespace adp
