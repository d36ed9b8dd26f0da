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

#ifndef ADP_OPTIMIZER_HPP_
#define ADP_OPTIMIZER_HPP_

#include <cstdint>
#include <vector>

#include "adp/accounting.hpp"
#include "adp/errors.hpp"

namespace adp {

// Grid bounds for the alpha search (and the sigma grid used by the
// noise-minimizing search).  `conversion` selects which alpha-DP to
// (epsilon, delta)-DP form the objective uses.
struct AlphaSearchConfig {
  double alpha_min = 2.0;
  double alpha_max = 300.0;
  double alpha_step = 1.0;
  double sigma_min = 1.0;
  double sigma_max = 500.0;
  double sigma_step = 1.0;
  ConversionForm conversion = ConversionForm::kProof;
};

struct OptimizationResult {
  double alpha_star = 0.0;
  // Minimized quantity: the converted epsilon for the epsilon search, the
  // noise standard deviation for the sigma search.
  double objective = 0.0;
  // Converted cumulative epsilon at (alpha_star, objective).
  double converted_epsilon = 0.0;
  bool feasible = false;
};

// The quantity both searches optimize: the cumulative alpha-DP consumption
// of `iterations` Gaussian queries at order alpha, converted to an
// (epsilon, delta)-DP epsilon.  Throws OverflowError when the single-query
// consumption or the composition is unrepresentable.
double GaussianCumulativeEpsilon(double sigma, double l2_sensitivity,
                                 double alpha, std::int64_t iterations,
                                 double delta, ConversionForm form);

// Materializes the alpha grid [alpha_min, alpha_min + step, ...] up to and
// including alpha_max (within a small end-point tolerance).
std::vector<double> AlphaGrid(const AlphaSearchConfig& cfg);

// Materializes the sigma grid the same way.
std::vector<double> SigmaGrid(const AlphaSearchConfig& cfg);

// Exhaustive grid search for the alpha minimizing the converted cumulative
// epsilon at fixed sigma.  Grid points whose evaluation overflows are
// skipped; ties break toward smaller alpha.  Throws NoFeasibleAlpha when
// every grid point overflows.
OptimizationResult FindAlphaMinEpsilon(std::int64_t iterations, double sigma,
                                       double delta, double l2_sensitivity,
                                       const AlphaSearchConfig& cfg = {});

// Finds the smallest sigma on the grid (with its alpha) whose converted
// cumulative epsilon stays within epsilon_bound.  The inner sigma loop
// ascends, breaking at the first feasible sigma and whenever sigma reaches
// the current best, which cannot change the result because feasibility is
// monotone in sigma.  Throws NoFeasibleSigma when no grid point qualifies.
OptimizationResult FindAlphaMinSigma(std::int64_t iterations,
                                     double epsilon_bound, double delta,
                                     double l2_sensitivity,
                                     const AlphaSearchConfig& cfg = {});

}  // namespace adp

#endif  // ADP_OPTIMIZER_HPP_
