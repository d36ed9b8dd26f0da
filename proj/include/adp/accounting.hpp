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

#ifndef ADP_ACCOUNTING_HPP_
#define ADP_ACCOUNTING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "adp/errors.hpp"

namespace adp {

// The alpha-DP to (epsilon, delta)-DP conversion exists in two variants
// that differ in how the divergence bound enters the log term:
//   kProof:     log(a (a-1) eps + 1, / delta) / (a-1)      (default)
//   kStatement: log(a (a-1) e^eps + 1, / delta) / (a-1)
// kProof is the bound the Markov argument actually yields; kStatement is
// retained for side-by-side comparison.
enum class ConversionForm { kProof, kStatement };

// (alpha, epsilon) alpha-DP guarantee.
struct AdpGuarantee {
  double alpha = 2.0;
  double epsilon = 0.0;
};

// (alpha, epsilon_bar) Renyi-DP guarantee.
struct RdpGuarantee {
  double alpha = 2.0;
  double epsilon_bar = 0.0;
};

// rho-zCDP guarantee.
struct ZcdpGuarantee {
  double rho = 0.0;
};

// (epsilon, delta)-DP guarantee.
struct ApproxDpGuarantee {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Two-step adaptive composition under alpha-DP at a shared order:
// e1 + e2 + alpha (alpha-1) e1 e2.  Commutative and associative.
double ComposeAdp(double e1, double e2, double alpha);

// n-step homogeneous composition, closed form
// ((alpha (alpha-1) eps + 1)^n - 1) / (alpha (alpha-1)), evaluated in the
// log domain when the power would overflow.  Throws OverflowError when
// the result itself exceeds double range.
double ComposeAdpN(double eps, std::int64_t n, double alpha);

// Renyi-DP composition at a shared order: additive.
double ComposeRdp(double e1, double e2);

// zCDP composition: additive.
double ComposeZcdp(double r1, double r2);

// Advanced composition of n homogeneous (eps, delta_per_query)-DP steps:
//   eps_total = eps sqrt(2 n ln(1/delta_slack)) + n eps (e^eps - 1)
//   delta_total = n delta_per_query + delta_slack.
// Throws DomainError when delta_total >= 1.
ApproxDpGuarantee ComposeAdvanced(double eps_per_query,
                                  double delta_per_query, std::int64_t n,
                                  double delta_slack);

// Alpha-DP to (epsilon, delta)-DP at the caller's delta.
ApproxDpGuarantee AdpToApprox(const AdpGuarantee& g, double delta,
                              ConversionForm form = ConversionForm::kProof);

// Renyi-DP to (epsilon, delta)-DP: epsilon_bar + log(1/delta) / (alpha-1).
ApproxDpGuarantee RdpToApprox(const RdpGuarantee& g, double delta);

// zCDP to (epsilon, delta)-DP: rho + 2 sqrt(rho log(1/delta)).
ApproxDpGuarantee ZcdpToApprox(const ZcdpGuarantee& g, double delta);

// Group privacy after k order-halving steps: the guarantee covering
// datasets differing in up to 2^k entries,
//   (alpha / 2^k,  [alpha (alpha-1) / (alpha' (alpha'-1))] epsilon).
// Throws GroupTooLarge when alpha <= 2^k.
AdpGuarantee GroupPrivacyAdp(const AdpGuarantee& g, int k);

// Number of halving steps needed to cover a group of the given size:
// ceil(log2(size)).  Sizes that are not powers of two round up.
int GroupDoublingsForSize(std::int64_t group_size);

enum class Framework { kAdp, kRdp, kZcdp, kAdvanced };

// Ordered record of per-step guarantees with a running cumulative total
// under one composition framework.  The cumulative value is always the
// sequential left fold of the framework's rule over the steps, so a
// replay from the serialized step list reproduces it bit for bit.
class CompositionLedger {
 public:
  // ADP and RDP ledgers fix the shared order at construction.
  static CompositionLedger Adp(double alpha);
  static CompositionLedger Rdp(double alpha);
  static CompositionLedger Zcdp();
  // Advanced ledgers fix the slack; steps must be homogeneous.
  static CompositionLedger Advanced(double delta_slack);

  // Appends one step.  `value` is the per-step epsilon (rho for zCDP);
  // `delta_per_step` is consumed only by advanced ledgers.
  void AddStep(double value, double delta_per_step = 0.0);

  Framework framework() const { return framework_; }
  double alpha() const { return alpha_; }
  double delta_slack() const { return delta_slack_; }
  const std::vector<double>& steps() const { return steps_; }
  const std::vector<double>& step_deltas() const { return step_deltas_; }

  // Framework-native cumulative total (epsilon_total for advanced).
  double cumulative() const { return cumulative_; }
  // Advanced ledgers only: n delta_per + delta_slack.
  double cumulative_delta() const;

  // Recomputes the cumulative from the steps by sequential fold.
  double Replay() const;

  // Converts the cumulative total to (epsilon, delta)-DP; valid for the
  // ADP / RDP / zCDP frameworks.
  ApproxDpGuarantee ToApprox(double delta,
                             ConversionForm form = ConversionForm::kProof)
      const;

  nlohmann::json ToJson() const;
  // Rebuilds a ledger from its serialized form and verifies that the
  // stored cumulative matches an exact replay.
  static CompositionLedger FromJson(const nlohmann::json& j);

 private:
  explicit CompositionLedger(Framework framework) : framework_(framework) {}

  Framework framework_;
  double alpha_ = 0.0;        // ADP / RDP only
  double delta_slack_ = 0.0;  // advanced only
  std::vector<double> steps_;
  std::vector<double> step_deltas_;  // advanced only
  double cumulative_ = 0.0;
};

std::string FrameworkName(Framework f);
Framework FrameworkFromName(const std::string& name);

}  // namespace adp

#endif  // ADP_ACCOUNTING_HPP_
