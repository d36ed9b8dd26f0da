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

#include "adp/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace adp {
namespace {

constexpr double kQuadratureRelTol = 1e-10;
// Half-width of the integration window in units of the density scale.
// Tails beyond 40 scales contribute below 1e-300 of each density's mass.
constexpr double kTailScales = 40.0;
// Minimum number of e-foldings of tail decay the window must cover when
// the decay rate of the tilted product itself sets the window size.
constexpr double kTailFoldings = 45.0;
constexpr int kInitialPanelsLog2 = 9;  // 512 panels per segment to start
constexpr int kMaxDoublings = 13;      // panel cap 2^22 per segment

void CheckAlpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 1.0 + kAlphaSingularityGap) {
    throw DomainError("alpha must exceed 1 + 1e-12, got " +
                      std::to_string(alpha));
  }
}

void CheckDensity(const DensitySpec& d, const char* name) {
  if (!std::isfinite(d.location)) {
    throw DomainError(std::string(name) + ".location must be finite");
  }
  if (!std::isfinite(d.scale) || d.scale <= 0.0) {
    throw DomainError(std::string(name) + ".scale must be > 0");
  }
}

void CheckSameLength(const DiscreteDistribution& p,
                     const DiscreteDistribution& q) {
  if (p.probs.size() != q.probs.size()) {
    throw DimensionMismatch("p and q must have the same length (" +
                            std::to_string(p.probs.size()) + " vs " +
                            std::to_string(q.probs.size()) + ")");
  }
}

void CheckPair(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  ValidateDistribution(p);
  ValidateDistribution(q);
  CheckSameLength(p, q);
}

void CheckSupport(double pi, double qi, std::size_t i) {
  if (qi == 0.0 && pi > 0.0) {
    throw AbsoluteContinuityViolation(
        "p has mass where q has none (index " + std::to_string(i) + ")");
  }
}

double LogDensity(const DensitySpec& d, double x) {
  constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log sqrt(2 pi)
  const double z = (x - d.location) / d.scale;
  if (d.family == DensityFamily::kGaussian) {
    return -0.5 * z * z - std::log(d.scale) - kLogSqrt2Pi;
  }
  return -std::abs(z) - std::log(2.0 * d.scale);
}

// Nonnegative integrand h(x) = p^a q^(1-a) - a p - (1-a) q.  Its integral
// over the whole line equals (int p^a q^(1-a)) - 1 directly, which avoids
// the catastrophic cancellation of integrating p^a q^(1-a) to a value near
// 1 and subtracting 1 afterwards (the dominant error source when p and q
// nearly coincide).
double Integrand(const DensitySpec& p, const DensitySpec& q, double alpha,
                 double x) {
  const double lp = LogDensity(p, x);
  const double lq = LogDensity(q, x);
  const double d = lp - lq;
  const double ad = alpha * d;
  if (std::abs(ad) <= 30.0) {
    // q * (expm1(a d) - a expm1(d)) is exact algebra for h and stays
    // accurate when the densities (and hence d) are close.
    return std::exp(lq) * (std::expm1(ad) - alpha * std::expm1(d));
  }
  const double a = alpha * lp + (1.0 - alpha) * lq;
  return std::exp(a) - alpha * std::exp(lp) + (alpha - 1.0) * std::exp(lq);
}

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> breaks;  // interior split points
};

// Rejects parameter combinations for which the tilted product
// p^alpha q^(1-alpha) is not integrable, and otherwise returns an
// integration window covering the mass of p, q, and the tilted product.
Window BuildWindow(const DensitySpec& p, const DensitySpec& q, double alpha) {
  const bool pg = p.family == DensityFamily::kGaussian;
  const bool qg = q.family == DensityFamily::kGaussian;
  const double max_scale = std::max(p.scale, q.scale);
  Window w;
  w.lo = std::min(p.location, q.location) - kTailScales * max_scale;
  w.hi = std::max(p.location, q.location) + kTailScales * max_scale;
  w.breaks = {p.location, q.location};

  const char* kDiverges =
      "tilted product p^alpha q^(1-alpha) is not integrable for these "
      "parameters";
  if (pg && qg) {
    // Quadratic exponent; integrable iff the x^2 coefficient is negative.
    const double w2 =
        alpha / (p.scale * p.scale) + (1.0 - alpha) / (q.scale * q.scale);
    if (w2 <= 0.0) throw QuadratureDivergence(kDiverges);
    // The tilted product is a Gaussian bump of width 1/sqrt(w2) centered at
    // x_star, which sits far from both locations when alpha is large.
    const double x_star = (alpha * p.location / (p.scale * p.scale) +
                           (1.0 - alpha) * q.location / (q.scale * q.scale)) /
                          w2;
    const double width = 1.0 / std::sqrt(w2);
    w.breaks.push_back(x_star);
    w.lo = std::min(w.lo, x_star - kTailScales * width);
    w.hi = std::max(w.hi, x_star + kTailScales * width);
  } else if (!pg && qg) {
    // Laplace^alpha against Gaussian^(1-alpha): the positive quadratic
    // from q^(1-alpha) dominates both tails.
    throw QuadratureDivergence(kDiverges);
  } else if (pg && !qg) {
    // Gaussian tails dominate; the exponent is piecewise quadratic with
    // stationary points offset from the Gaussian location.
    const double offset =
        (alpha - 1.0) * p.scale * p.scale / (alpha * q.scale);
    const double width = p.scale / std::sqrt(alpha);
    w.breaks.push_back(p.location - offset);
    w.breaks.push_back(p.location + offset);
    w.lo = std::min(w.lo, p.location - offset - kTailScales * width);
    w.hi = std::max(w.hi, p.location + offset + kTailScales * width);
  } else {
    // Both Laplace: piecewise linear exponent with common tail slope
    // -slope * |x|; integrable iff slope > 0.  A slope near zero decays
    // slowly, so size the window by e-foldings of decay instead of scales.
    const double slope = alpha / p.scale - (alpha - 1.0) / q.scale;
    if (slope <= 0.0) throw QuadratureDivergence(kDiverges);
    const double ext = kTailFoldings / slope;
    if (ext > 1e7 * max_scale) {
      throw QuadratureDivergence(
          "tilted product decays too slowly for reliable quadrature");
    }
    w.lo = std::min(w.lo, std::min(p.location, q.location) - ext);
    w.hi = std::max(w.hi, std::max(p.location, q.location) + ext);
  }
  return w;
}

struct Segment {
  double a = 0.0;
  double b = 0.0;
  long long panels = 0;
  double trap = 0.0;       // trapezoid estimate at `panels`
  double prev_trap = 0.0;  // trapezoid estimate at `panels`/2
};

}  // namespace

void ValidateDistribution(const DiscreteDistribution& d) {
  if (d.probs.empty()) {
    throw DomainError("probs must contain at least one entry");
  }
  double sum = 0.0;
  for (double v : d.probs) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError("probs entries must be finite and nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw DomainError("probs must sum to 1 within 1e-12, got sum " +
                      std::to_string(sum));
  }
}

void ValidateChannel(const Channel& c) {
  if (c.matrix.empty()) {
    throw DomainError("matrix must contain at least one row");
  }
  const std::size_t cols = c.matrix.front().size();
  if (cols == 0) {
    throw DomainError("matrix must contain at least one column");
  }
  for (const auto& row : c.matrix) {
    if (row.size() != cols) {
      throw DomainError("matrix rows must all have the same length");
    }
    double sum = 0.0;
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) {
        throw DomainError("matrix entries must be finite and nonnegative");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
      throw DomainError("matrix rows must sum to 1 within 1e-12");
    }
  }
}

double AlphaDivergence(const DiscreteDistribution& p,
                       const DiscreteDistribution& q, double alpha) {
  CheckAlpha(alpha);
  CheckPair(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    const double pi = p.probs[i];
    const double qi = q.probs[i];
    CheckSupport(pi, qi, i);
    if (pi == 0.0) continue;  // 0^alpha q^(1-alpha) = 0 for alpha > 1
    // q (p/q)^alpha rather than exp(alpha log p + (1-alpha) log q): exact
    // for matching entries, so the divergence of a distribution against
    // itself is zero rather than rounding noise.
    sum += qi * std::pow(pi / qi, alpha);
  }
  return (sum - 1.0) / (alpha * (alpha - 1.0));
}

double RenyiDivergence(const DiscreteDistribution& p,
                       const DiscreteDistribution& q, double alpha) {
  CheckAlpha(alpha);
  CheckPair(p, q);
  // log-sum-exp keeps large orders finite where the plain power sum
  // would overflow.
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(p.probs.size());
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    const double pi = p.probs[i];
    const double qi = q.probs[i];
    CheckSupport(pi, qi, i);
    if (pi == 0.0) continue;
    const double t = alpha * std::log(pi) + (1.0 - alpha) * std::log(qi);
    terms.push_back(t);
    max_term = std::max(max_term, t);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  return (max_term + std::log(sum)) / (alpha - 1.0);
}

double KlDivergence(const DiscreteDistribution& p,
                    const DiscreteDistribution& q) {
  CheckPair(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    const double pi = p.probs[i];
    const double qi = q.probs[i];
    CheckSupport(pi, qi, i);
    if (pi == 0.0) continue;  // 0 log(0/q) = 0
    sum += pi * std::log(pi / qi);
  }
  return sum;
}

double MaxDivergence(const DiscreteDistribution& p,
                     const DiscreteDistribution& q) {
  CheckPair(p, q);
  double max_ratio = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    const double pi = p.probs[i];
    const double qi = q.probs[i];
    CheckSupport(pi, qi, i);
    if (pi == 0.0) continue;
    max_ratio = std::max(max_ratio, pi / qi);
  }
  return std::log(max_ratio);
}

DiscreteDistribution ApplyChannel(const DiscreteDistribution& p,
                                  const Channel& c) {
  ValidateDistribution(p);
  ValidateChannel(c);
  if (c.matrix.size() != p.probs.size()) {
    throw DimensionMismatch("channel has " + std::to_string(c.matrix.size()) +
                            " rows but distribution has " +
                            std::to_string(p.probs.size()) + " entries");
  }
  DiscreteDistribution out;
  out.probs.assign(c.matrix.front().size(), 0.0);
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    for (std::size_t j = 0; j < out.probs.size(); ++j) {
      out.probs[j] += p.probs[i] * c.matrix[i][j];
    }
  }
  return out;
}

double AlphaDivergenceQuadrature(const DensitySpec& p, const DensitySpec& q,
                                 double alpha) {
  CheckAlpha(alpha);
  CheckDensity(p, "p");
  CheckDensity(q, "q");

  Window w = BuildWindow(p, q, alpha);
  std::sort(w.breaks.begin(), w.breaks.end());
  std::vector<double> points;
  points.push_back(w.lo);
  for (double x : w.breaks) {
    if (x > points.back() && x < w.hi) points.push_back(x);
  }
  points.push_back(w.hi);

  const auto f = [&](double x) {
    const double v = Integrand(p, q, alpha, x);
    if (!std::isfinite(v)) {
      throw QuadratureDivergence(
          "integrand overflows double range; reject these parameters or "
          "work in the log domain");
    }
    return v;
  };

  // Composite trapezoid per segment with panel doubling; Richardson
  // extrapolation of consecutive estimates yields composite Simpson.
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Segment s;
    s.a = points[i];
    s.b = points[i + 1];
    s.panels = 1LL << (kInitialPanelsLog2 - 1);
    const double h = (s.b - s.a) / static_cast<double>(s.panels);
    double sum = 0.5 * (f(s.a) + f(s.b));
    for (long long k = 1; k < s.panels; ++k) {
      sum += f(s.a + h * static_cast<double>(k));
    }
    s.trap = sum * h;
    segs.push_back(s);
  }

  const auto double_panels = [&](Segment& s) {
    const double h = (s.b - s.a) / static_cast<double>(s.panels);
    double mid_sum = 0.0;
    for (long long k = 0; k < s.panels; ++k) {
      mid_sum += f(s.a + h * (static_cast<double>(k) + 0.5));
    }
    s.prev_trap = s.trap;
    s.trap = 0.5 * s.trap + 0.5 * h * mid_sum;
    s.panels *= 2;
  };

  for (Segment& s : segs) double_panels(s);  // reach 512 panels

  double prev_total = std::numeric_limits<double>::quiet_NaN();
  for (int iter = 0; iter <= kMaxDoublings; ++iter) {
    double total = 0.0;
    for (const Segment& s : segs) {
      total += (4.0 * s.trap - s.prev_trap) / 3.0;
    }
    if (iter > 0 &&
        std::abs(total - prev_total) <=
            kQuadratureRelTol * std::abs(total) + 1e-300) {
      return total / (alpha * (alpha - 1.0));
    }
    prev_total = total;
    if (iter == kMaxDoublings) break;
    for (Segment& s : segs) double_panels(s);
  }
  throw QuadratureDivergence(
      "quadrature did not converge within the panel budget");
}

}  // namespace adp
