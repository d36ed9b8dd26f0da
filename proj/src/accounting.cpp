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

#include "adp/accounting.hpp"

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

void CheckDelta(double delta, const char* name) {
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0) {
    throw DomainError(std::string(name) + " must lie strictly in (0, 1)");
  }
}

void CheckNonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(name) + " must be >= 0, got " +
                      std::to_string(v));
  }
}

void CheckPositiveCount(std::int64_t n, const char* name) {
  if (n < 1) {
    throw DomainError(std::string(name) + " must be >= 1, got " +
                      std::to_string(n));
  }
}

}  // namespace

double ComposeAdp(double e1, double e2, double alpha) {
  CheckAlphaParam(alpha);
  CheckNonnegative(e1, "e1");
  CheckNonnegative(e2, "e2");
  // Scale the smaller epsilon first: multiplying the larger one by the
  // order factor can overflow an intermediate even when the composed
  // result is representable.  The min/max split keeps the expression
  // symmetric in its arguments.
  const double lo = std::fmin(e1, e2);
  const double hi = std::fmax(e1, e2);
  return e1 + e2 + alpha * (alpha - 1.0) * lo * hi;
}

double ComposeAdpN(double eps, std::int64_t n, double alpha) {
  CheckAlphaParam(alpha);
  CheckNonnegative(eps, "eps");
  CheckPositiveCount(n, "n");
  const double a = alpha * (alpha - 1.0);
  // log(a eps_total + 1) = n log(a eps + 1)
  const double log_total = static_cast<double>(n) * std::log1p(a * eps);
  if (log_total > 709.0) {
    // expm1 would overflow; the subtracted 1 is far below representable
    // resolution here, so evaluate exp(log_total - log a) directly.
    const double result = std::exp(log_total - std::log(a));
    if (!std::isfinite(result)) {
      throw OverflowError("composed epsilon exceeds double range");
    }
    return result;
  }
  return std::expm1(log_total) / a;
}

double ComposeRdp(double e1, double e2) {
  CheckNonnegative(e1, "e1");
  CheckNonnegative(e2, "e2");
  return e1 + e2;
}

double ComposeZcdp(double r1, double r2) {
  CheckNonnegative(r1, "r1");
  CheckNonnegative(r2, "r2");
  return r1 + r2;
}

ApproxDpGuarantee ComposeAdvanced(double eps_per_query,
                                  double delta_per_query, std::int64_t n,
                                  double delta_slack) {
  CheckNonnegative(eps_per_query, "eps_per_query");
  CheckDelta(delta_per_query, "delta_per_query");
  CheckDelta(delta_slack, "delta_slack");
  CheckPositiveCount(n, "n");
  const double count = static_cast<double>(n);
  const double delta_total = count * delta_per_query + delta_slack;
  if (delta_total >= 1.0) {
    throw DomainError("n delta_per_query + delta_slack must stay below 1");
  }
  const double eps_total =
      eps_per_query * std::sqrt(2.0 * count * std::log(1.0 / delta_slack)) +
      count * eps_per_query * std::expm1(eps_per_query);
  return {eps_total, delta_total};
}

ApproxDpGuarantee AdpToApprox(const AdpGuarantee& g, double delta,
                              ConversionForm form) {
  CheckAlphaParam(g.alpha);
  CheckNonnegative(g.epsilon, "epsilon");
  CheckDelta(delta, "delta");
  const double a = g.alpha * (g.alpha - 1.0);
  double log_numerator;
  if (form == ConversionForm::kProof) {
    log_numerator = std::log1p(a * g.epsilon);
  } else {
    // log(a e^eps + 1) without overflowing e^eps.
    const double shifted = g.epsilon + std::log(a);
    log_numerator = shifted + std::log1p(std::exp(-shifted));
  }
  return {(log_numerator - std::log(delta)) / (g.alpha - 1.0), delta};
}

ApproxDpGuarantee RdpToApprox(const RdpGuarantee& g, double delta) {
  CheckAlphaParam(g.alpha);
  CheckNonnegative(g.epsilon_bar, "epsilon_bar");
  CheckDelta(delta, "delta");
  return {g.epsilon_bar - std::log(delta) / (g.alpha - 1.0), delta};
}

ApproxDpGuarantee ZcdpToApprox(const ZcdpGuarantee& g, double delta) {
  CheckNonnegative(g.rho, "rho");
  CheckDelta(delta, "delta");
  return {g.rho + 2.0 * std::sqrt(g.rho * std::log(1.0 / delta)), delta};
}

AdpGuarantee GroupPrivacyAdp(const AdpGuarantee& g, int k) {
  CheckAlphaParam(g.alpha);
  CheckNonnegative(g.epsilon, "epsilon");
  if (k < 0) {
    throw DomainError("k must be >= 0, got " + std::to_string(k));
  }
  if (k == 0) return g;
  const double pow2k = std::ldexp(1.0, k);
  if (g.alpha <= pow2k) {
    throw GroupTooLarge("group privacy needs alpha > 2^k, got alpha " +
                        std::to_string(g.alpha) + " with k " +
                        std::to_string(k));
  }
  const double halved = g.alpha / pow2k;
  const double factor =
      g.alpha * (g.alpha - 1.0) / (halved * (halved - 1.0));
  return {halved, factor * g.epsilon};
}

int GroupDoublingsForSize(std::int64_t group_size) {
  if (group_size < 1) {
    throw DomainError("group_size must be >= 1, got " +
                      std::to_string(group_size));
  }
  int k = 0;
  while ((std::int64_t{1} << k) < group_size) ++k;
  return k;
}

CompositionLedger CompositionLedger::Adp(double alpha) {
  CheckAlphaParam(alpha);
  CompositionLedger ledger(Framework::kAdp);
  ledger.alpha_ = alpha;
  return ledger;
}

CompositionLedger CompositionLedger::Rdp(double alpha) {
  CheckAlphaParam(alpha);
  CompositionLedger ledger(Framework::kRdp);
  ledger.alpha_ = alpha;
  return ledger;
}

CompositionLedger CompositionLedger::Zcdp() {
  return CompositionLedger(Framework::kZcdp);
}

CompositionLedger CompositionLedger::Advanced(double delta_slack) {
  CheckDelta(delta_slack, "delta_slack");
  CompositionLedger ledger(Framework::kAdvanced);
  ledger.delta_slack_ = delta_slack;
  return ledger;
}

void CompositionLedger::AddStep(double value, double delta_per_step) {
  CheckNonnegative(value, "step value");
  switch (framework_) {
    case Framework::kAdp:
      cumulative_ = ComposeAdp(cumulative_, value, alpha_);
      break;
    case Framework::kRdp:
      cumulative_ = ComposeRdp(cumulative_, value);
      break;
    case Framework::kZcdp:
      cumulative_ = ComposeZcdp(cumulative_, value);
      break;
    case Framework::kAdvanced: {
      CheckDelta(delta_per_step, "delta_per_step");
      if (!steps_.empty() &&
          (value != steps_.front() || delta_per_step != step_deltas_.front())) {
        throw DomainError(
            "advanced ledger steps must be homogeneous (same epsilon and "
            "delta per step)");
      }
      const std::int64_t n = static_cast<std::int64_t>(steps_.size()) + 1;
      cumulative_ =
          ComposeAdvanced(value, delta_per_step, n, delta_slack_).epsilon;
      step_deltas_.push_back(delta_per_step);
      break;
    }
  }
  steps_.push_back(value);
}

double CompositionLedger::cumulative_delta() const {
  if (framework_ != Framework::kAdvanced) {
    throw DomainError("cumulative_delta is defined only for advanced ledgers");
  }
  if (steps_.empty()) return delta_slack_;
  return static_cast<double>(steps_.size()) * step_deltas_.front() +
         delta_slack_;
}

double CompositionLedger::Replay() const {
  double total = 0.0;
  switch (framework_) {
    case Framework::kAdp:
      for (double s : steps_) total = ComposeAdp(total, s, alpha_);
      break;
    case Framework::kRdp:
      for (double s : steps_) total = ComposeRdp(total, s);
      break;
    case Framework::kZcdp:
      for (double s : steps_) total = ComposeZcdp(total, s);
      break;
    case Framework::kAdvanced:
      if (!steps_.empty()) {
        total = ComposeAdvanced(steps_.front(), step_deltas_.front(),
                                static_cast<std::int64_t>(steps_.size()),
                                delta_slack_)
                    .epsilon;
      }
      break;
  }
  return total;
}

ApproxDpGuarantee CompositionLedger::ToApprox(double delta,
                                              ConversionForm form) const {
  switch (framework_) {
    case Framework::kAdp:
      return AdpToApprox({alpha_, cumulative_}, delta, form);
    case Framework::kRdp:
      return RdpToApprox({alpha_, cumulative_}, delta);
    case Framework::kZcdp:
      return ZcdpToApprox({cumulative_}, delta);
    case Framework::kAdvanced:
      throw DomainError(
          "advanced ledgers already carry an (epsilon, delta) total; "
          "use cumulative() and cumulative_delta()");
  }
  throw DomainError("unknown framework");
}

nlohmann::json CompositionLedger::ToJson() const {
  nlohmann::json j;
  j["framework"] = FrameworkName(framework_);
  if (framework_ == Framework::kAdp || framework_ == Framework::kRdp) {
    j["alpha"] = alpha_;
  }
  if (framework_ == Framework::kAdvanced) {
    j["delta_slack"] = delta_slack_;
    j["step_deltas"] = step_deltas_;
    j["cumulative_delta"] = cumulative_delta();
  }
  j["steps"] = steps_;
  j["cumulative"] = cumulative_;
  return j;
}

CompositionLedger CompositionLedger::FromJson(const nlohmann::json& j) {
  const Framework f = FrameworkFromName(j.at("framework").get<std::string>());
  CompositionLedger ledger(f);
  switch (f) {
    case Framework::kAdp:
      ledger = Adp(j.at("alpha").get<double>());
      break;
    case Framework::kRdp:
      ledger = Rdp(j.at("alpha").get<double>());
      break;
    case Framework::kZcdp:
      ledger = Zcdp();
      break;
    case Framework::kAdvanced:
      ledger = Advanced(j.at("delta_slack").get<double>());
      break;
  }
  const auto& steps = j.at("steps");
  if (f == Framework::kAdvanced) {
    const auto& deltas = j.at("step_deltas");
    if (deltas.size() != steps.size()) {
      throw DomainError("step_deltas must match steps in length");
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
      ledger.AddStep(steps[i].get<double>(), deltas[i].get<double>());
    }
  } else {
    for (const auto& s : steps) ledger.AddStep(s.get<double>());
  }
  if (j.contains("cumulative")) {
    const double stored = j.at("cumulative").get<double>();
    if (stored != ledger.cumulative_) {
      throw DomainError(
          "stored cumulative does not match a bit-exact replay of steps");
    }
  }
  return ledger;
}

std::string FrameworkName(Framework f) {
  switch (f) {
    case Framework::kAdp:
      return "adp";
    case Framework::kRdp:
      return "rdp";
    case Framework::kZcdp:
      return "zcdp";
    case Framework::kAdvanced:
      return "advanced";
  }
  throw DomainError("unknown framework");
}

Framework FrameworkFromName(const std::string& name) {
  if (name == "adp") return Framework::kAdp;
  if (name == "rdp") return Framework::kRdp;
  if (name == "zcdp") return Framework::kZcdp;
  if (name == "advanced") return Framework::kAdvanced;
  throw DomainError("unknown framework '" + name +
                    "' (expected adp, rdp, zcdp, or advanced)");
}

}  // namespace adp
