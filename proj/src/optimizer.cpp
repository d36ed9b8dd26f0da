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

#include "adp/optimizer.hpp"

#include <cmath>
#include <string>

#include "adp/divergence.hpp"
#include "adp/mechanisms.hpp"

namespace adp {
namespace {

void CheckGrid(double lo, double hi, double step, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) ||
      step <= 0.0 || hi < lo) {
    throw DomainError(std::string(what) +
                      " grid needs finite bounds, max >= min, and step > 0");
  }
}

std::vector<double> MakeGrid(double lo, double hi, double step) {
  // Tolerate end points that miss hi by floating-point crumbs.
  const std::int64_t count =
      static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    grid.push_back(lo + static_cast<double>(i) * step);
  }
  return grid;
}

void CheckSearchArgs(std::int64_t iterations, double delta,
                     double l2_sensitivity) {
  if (iterations < 1) {
    throw DomainError("iterations must be >= 1, got " +
                      std::to_string(iterations));
  }
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0) {
    throw DomainError("delta must lie strictly in (0, 1)");
  }
  if (!std::isfinite(l2_sensitivity) || l2_sensitivity < 0.0) {
    throw DomainError("l2_sensitivity must be >= 0");
  }
}

}  // namespace

double GaussianCumulativeEpsilon(double sigma, double l2_sensitivity,
                                 double alpha, std::int64_t iterations,
                                 double delta, ConversionForm form) {
  const double single = GaussianAdpEpsilon(sigma, l2_sensitivity, alpha);
  const double total = ComposeAdpN(single, iterations, alpha);
  return AdpToApprox({alpha, total}, delta, form).epsilon;
}

std::vector<double> AlphaGrid(const AlphaSearchConfig& cfg) {
  CheckGrid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step, "alpha");
  if (cfg.alpha_min <= 1.0 + kAlphaSingularityGap) {
    throw DomainError("alpha_min must exceed 1");
  }
  return MakeGrid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step);
}

std::vector<double> SigmaGrid(const AlphaSearchConfig& cfg) {
  CheckGrid(cfg.sigma_min, cfg.sigma_max, cfg.sigma_step, "sigma");
  if (cfg.sigma_min <= 0.0) {
    throw DomainError("sigma_min must be > 0");
  }
  return MakeGrid(cfg.sigma_min, cfg.sigma_max, cfg.sigma_step);
}

OptimizationResult FindAlphaMinEpsilon(std::int64_t iterations, double sigma,
                                       double delta, double l2_sensitivity,
                                       const AlphaSearchConfig& cfg) {
  CheckSearchArgs(iterations, delta, l2_sensitivity);
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw DomainError("sigma must be > 0");
  }
  OptimizationResult best;
  for (double alpha : AlphaGrid(cfg)) {
    double converted;
    try {
      converted = GaussianCumulativeEpsilon(sigma, l2_sensitivity, alpha,
                                            iterations, delta,
                                            cfg.conversion);
    } catch (const OverflowError&) {
      continue;  // unrepresentable at this alpha; treat as infeasible
    }
    if (!best.feasible || converted < best.objective) {
      best = {alpha, converted, converted, true};
    }
  }
  if (!best.feasible) {
    throw NoFeasibleAlpha("every alpha grid point overflowed");
  }
  return best;
}

OptimizationResult FindAlphaMinSigma(std::int64_t iterations,
                                     double epsilon_bound, double delta,
                                     double l2_sensitivity,
                                     const AlphaSearchConfig& cfg) {
  CheckSearchArgs(iterations, delta, l2_sensitivity);
  if (!std::isfinite(epsilon_bound) || epsilon_bound <= 0.0) {
    throw DomainError("epsilon_bound must be > 0");
  }
  const std::vector<double> alphas = AlphaGrid(cfg);
  const std::vector<double> sigmas = SigmaGrid(cfg);
  OptimizationResult best;
  for (double alpha : alphas) {
    for (double sigma : sigmas) {
      // A sigma at or above the incumbent cannot improve; larger sigmas
      // on this alpha cannot either, since epsilon falls as sigma grows.
      if (best.feasible && sigma >= best.objective) break;
      double converted;
      try {
        converted = GaussianCumulativeEpsilon(sigma, l2_sensitivity, alpha,
                                              iterations, delta,
                                              cfg.conversion);
      } catch (const OverflowError&) {
        continue;  // noise too small to represent; try a larger sigma
      }
      if (converted <= epsilon_bound) {
        best = {alpha, sigma, converted, true};
        break;  // first feasible sigma is the smallest for this alpha
      }
    }
  }
  if (!best.feasible) {
    throw NoFeasibleSigma(
        "no (alpha, sigma) grid point meets the epsilon bound");
  }
  return best;
}

}  // namespace adp
