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

#include "adp/mechanisms.hpp"

#include <cmath>
#include <string>

#include "adp/divergence.hpp"

namespace adp {
namespace {

void CheckAlphaParam(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 1.0 + kAlphaSingularityGap) {
    throw DomainError("alpha must exceed 1 + 1e-12, got " +
                      std::to_string(alpha));
  }
}

void CheckProbability(double p) {
  if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
    throw DomainError("p must lie strictly in (0, 1), got " +
                      std::to_string(p));
  }
}

void CheckPositive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw DomainError(std::string(name) + " must be > 0, got " +
                      std::to_string(v));
  }
}

void CheckNonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(name) + " must be >= 0, got " +
                      std::to_string(v));
  }
}

void CheckDelta(double delta) {
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0) {
    throw DomainError("delta must lie strictly in (0, 1), got " +
                      std::to_string(delta));
  }
}

}  // namespace

double RrAdpEpsilon(double p, double alpha) {
  CheckProbability(p);
  CheckAlphaParam(alpha);
  const DiscreteDistribution truth{{p, 1.0 - p}};
  const DiscreteDistribution flipped{{1.0 - p, p}};
  return AlphaDivergence(truth, flipped, alpha);
}

double RrPureEpsilon(double p) {
  CheckProbability(p);
  const double hi = std::max(p, 1.0 - p);
  const double lo = std::min(p, 1.0 - p);
  return std::log(hi / lo);
}

double LaplaceAdpEpsilon(double scale_b, double l1_sensitivity, double alpha) {
  CheckPositive(scale_b, "scale_b");
  CheckNonnegative(l1_sensitivity, "l1_sensitivity");
  CheckAlphaParam(alpha);
  const double m = l1_sensitivity / scale_b;
  const double grow = (alpha - 1.0) * m;
  if (grow > kMaxExponent) {
    throw OverflowError("(alpha-1) * l1_sensitivity / scale_b = " +
                        std::to_string(grow) +
                        " exceeds the representable exponent range");
  }
  return std::exp(grow) / ((alpha - 1.0) * (2.0 * alpha - 1.0)) +
         std::exp(-alpha * m) / (alpha * (2.0 * alpha - 1.0)) -
         1.0 / (alpha * (alpha - 1.0));
}

double LaplacePureEpsilon(double scale_b, double l1_sensitivity) {
  CheckPositive(scale_b, "scale_b");
  CheckNonnegative(l1_sensitivity, "l1_sensitivity");
  return l1_sensitivity / scale_b;
}

double GaussianAdpEpsilon(double sigma, double l2_sensitivity, double alpha) {
  CheckPositive(sigma, "sigma");
  CheckNonnegative(l2_sensitivity, "l2_sensitivity");
  CheckAlphaParam(alpha);
  const double a = alpha * (alpha - 1.0);
  const double exponent =
      a * l2_sensitivity * l2_sensitivity / (2.0 * sigma * sigma);
  if (exponent > kMaxExponent) {
    throw OverflowError("alpha (alpha-1) d^2 / (2 sigma^2) = " +
                        std::to_string(exponent) +
                        " exceeds the representable exponent range");
  }
  return std::expm1(exponent) / a;
}

double GaussianSigmaForAdp(double alpha, double epsilon,
                           double l2_sensitivity) {
  CheckAlphaParam(alpha);
  CheckPositive(epsilon, "epsilon");
  CheckPositive(l2_sensitivity, "l2_sensitivity");
  const double a = alpha * (alpha - 1.0);
  return l2_sensitivity * std::sqrt(a / (2.0 * std::log1p(a * epsilon)));
}

double GaussianRdpEpsilon(double sigma, double l2_sensitivity, double alpha) {
  CheckPositive(sigma, "sigma");
  CheckNonnegative(l2_sensitivity, "l2_sensitivity");
  CheckAlphaParam(alpha);
  return alpha * l2_sensitivity * l2_sensitivity / (2.0 * sigma * sigma);
}

double GaussianZcdpRho(double sigma, double l2_sensitivity) {
  CheckPositive(sigma, "sigma");
  CheckNonnegative(l2_sensitivity, "l2_sensitivity");
  return l2_sensitivity * l2_sensitivity / (2.0 * sigma * sigma);
}

double GaussianApproxEpsilon(double sigma, double l2_sensitivity,
                             double delta) {
  CheckPositive(sigma, "sigma");
  CheckNonnegative(l2_sensitivity, "l2_sensitivity");
  CheckDelta(delta);
  return l2_sensitivity * std::sqrt(2.0 * std::log(1.25 / delta)) / sigma;
}

double MechanismAdpEpsilon(const MechanismSpec& mech, double alpha) {
  return std::visit(
      [alpha](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RandomizedResponse>) {
          return RrAdpEpsilon(m.p, alpha);
        } else if constexpr (std::is_same_v<T, LaplaceMech>) {
          return LaplaceAdpEpsilon(m.scale_b, m.l1_sensitivity, alpha);
        } else {
          return GaussianAdpEpsilon(m.sigma, m.l2_sensitivity, alpha);
        }
      },
      mech);
}

}  // namespace adp
