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

#ifndef ADP_DIVERGENCE_HPP_
#define ADP_DIVERGENCE_HPP_

#include <vector>

#include "adp/errors.hpp"

namespace adp {

// Orders at or below 1 + kAlphaSingularityGap are rejected: alpha = 1 is a
// removable singularity of the alpha divergence (the KL limit), and values
// this close to it are numerically meaningless anyway.
inline constexpr double kAlphaSingularityGap = 1e-12;

// Finite probability vector.  Entries must be nonnegative and sum to 1
// within kProbabilitySumTolerance.
inline constexpr double kProbabilitySumTolerance = 1e-12;

struct DiscreteDistribution {
  std::vector<double> probs;
};

// A named one-dimensional density, parameterized by location and scale
// (sigma for Gaussian, b for Laplace).
enum class DensityFamily { kGaussian, kLaplace };

struct DensitySpec {
  DensityFamily family = DensityFamily::kGaussian;
  double location = 0.0;
  double scale = 1.0;
};

// Row-stochastic post-processing channel: matrix[i][j] is the probability
// of emitting output j given input i.
struct Channel {
  std::vector<std::vector<double>> matrix;
};

// Throws DomainError if d is not a valid probability vector.
void ValidateDistribution(const DiscreteDistribution& d);

// Throws DomainError if c is not row-stochastic or has no columns.
void ValidateChannel(const Channel& c);

// Alpha divergence (sum_i p_i^alpha q_i^{1-alpha} - 1) / (alpha (alpha-1))
// for alpha > 1.  Zero-probability convention: p_i = 0 contributes 0;
// q_i = 0 with p_i > 0 raises AbsoluteContinuityViolation.
double AlphaDivergence(const DiscreteDistribution& p,
                       const DiscreteDistribution& q, double alpha);

// Renyi divergence log(sum_i p_i^alpha q_i^{1-alpha}) / (alpha - 1) for
// alpha > 1, computed via log-sum-exp so that large orders stay finite.
double RenyiDivergence(const DiscreteDistribution& p,
                       const DiscreteDistribution& q, double alpha);

// Kullback-Leibler divergence sum_i p_i log(p_i / q_i), with the
// convention 0 log(0/q) = 0.
double KlDivergence(const DiscreteDistribution& p,
                    const DiscreteDistribution& q);

// Max divergence log(max_i p_i / q_i) over the support of p.
double MaxDivergence(const DiscreteDistribution& p,
                     const DiscreteDistribution& q);

// Pushes p through the channel: output_j = sum_i p_i matrix[i][j].
DiscreteDistribution ApplyChannel(const DiscreteDistribution& p,
                                  const Channel& c);

// Numerical alpha divergence between two named densities:
// (int p(x)^alpha q(x)^{1-alpha} dx - 1) / (alpha (alpha-1)).
// Adaptive composite Simpson integration, accurate to ~1e-10 relative.
// Throws QuadratureDivergence when the integral does not converge, either
// because the tilted product p^alpha q^{1-alpha} is not integrable for
// these parameters or because it overflows double range.
double AlphaDivergenceQuadrature(const DensitySpec& p, const DensitySpec& q,
                                 double alpha);

}  // namespace adp

#endif  // ADP_DIVERGENCE_HPP_
