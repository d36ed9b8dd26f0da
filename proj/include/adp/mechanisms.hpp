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

#ifndef ADP_MECHANISMS_HPP_
#define ADP_MECHANISMS_HPP_

#include <variant>

#include "adp/errors.hpp"

namespace adp {

// Exponent arguments above this raise OverflowError instead of producing
// infinity, so grid searches can skip unrepresentable parameter points.
inline constexpr double kMaxExponent = 700.0;

// Randomized response reports the true bit with probability p.
struct RandomizedResponse {
  double p = 0.5;
};

// Laplace noise with scale b added to a query of l1 sensitivity.
struct LaplaceMech {
  double scale_b = 1.0;
  double l1_sensitivity = 1.0;
};

// Gaussian noise with standard deviation sigma added to a query of l2
// sensitivity.
struct GaussianMech {
  double sigma = 1.0;
  double l2_sensitivity = 1.0;
};

using MechanismSpec = std::variant<RandomizedResponse, LaplaceMech, GaussianMech>;

// Per-query alpha-DP consumption of randomized response.  Evaluates the
// discrete alpha divergence of the flip pair (p, 1-p) vs (1-p, p), so it
// agrees with the divergence oracle bit for bit.
double RrAdpEpsilon(double p, double alpha);

// Pure-DP baseline for randomized response: log of the worst likelihood
// ratio max(p, 1-p) / min(p, 1-p).
double RrPureEpsilon(double p);

// Per-query alpha-DP consumption of the Laplace mechanism with the
// worst-case shift mu = l1_sensitivity:
//   exp((a-1) mu/b) / ((a-1)(2a-1)) + exp(-a mu/b) / (a (2a-1))
//     - 1 / (a (a-1)).
// Throws OverflowError when (alpha-1) mu / b exceeds kMaxExponent.
double LaplaceAdpEpsilon(double scale_b, double l1_sensitivity, double alpha);

// Pure-DP baseline for the Laplace mechanism: l1_sensitivity / scale_b.
double LaplacePureEpsilon(double scale_b, double l1_sensitivity);

// Per-query alpha-DP consumption of the Gaussian mechanism:
//   (exp(a (a-1) d^2 / (2 sigma^2)) - 1) / (a (a-1)).
// Throws OverflowError when the exponent exceeds kMaxExponent.
double GaussianAdpEpsilon(double sigma, double l2_sensitivity, double alpha);

// Noise calibration: the sigma for which GaussianAdpEpsilon returns
// epsilon, i.e. sqrt(a (a-1) d^2 / (2 log(a (a-1) epsilon + 1))).
double GaussianSigmaForAdp(double alpha, double epsilon,
                           double l2_sensitivity);

// Renyi-DP baseline for the Gaussian mechanism: alpha d^2 / (2 sigma^2).
double GaussianRdpEpsilon(double sigma, double l2_sensitivity, double alpha);

// zCDP baseline for the Gaussian mechanism: d^2 / (2 sigma^2).
double GaussianZcdpRho(double sigma, double l2_sensitivity);

// Classical (epsilon, delta)-DP consumption for the Gaussian mechanism:
// d sqrt(2 log(1.25/delta)) / sigma.  Used as the advanced-composition
// input.
double GaussianApproxEpsilon(double sigma, double l2_sensitivity,
                             double delta);

// Dispatches to the matching *_AdpEpsilon for a tagged mechanism.
double MechanismAdpEpsilon(const MechanismSpec& mech, double alpha);

}  // namespace adp

#endif  // ADP_MECHANISMS_HPP_
