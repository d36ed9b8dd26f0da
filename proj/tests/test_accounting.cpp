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
#include <random>

#include "adp/accounting.hpp"
#include "adp/errors.hpp"
#include "adp/mechanisms.hpp"
#include "test_util.hpp"

namespace adp {
namespace {

using testing::RelDiff;

TEST_CASE("two-step composition matches the defining formula") {
  // e1 + e2 + alpha (alpha-1) e1 e2 at alpha = 2: 0.1 + 0.1 + 2 * 0.01.
  CHECK(ComposeAdp(0.1, 0.1, 2.0) == doctest::Approx(0.22).epsilon(1e-14));
  CHECK(ComposeAdp(0.0, 0.7, 3.0) == 0.7);
  CHECK(ComposeAdp(0.7, 0.0, 3.0) == 0.7);
  CHECK_THROWS_AS(ComposeAdp(0.1, 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(ComposeAdp(-0.1, 0.1, 2.0), DomainError);
}

TEST_CASE("two-step composition is commutative and associative") {
  std::mt19937_64 rng(20260814);
  std::uniform_real_distribution<double> eps_dist(0.0, 2.0);
  std::uniform_real_distribution<double> alpha_dist(1.5, 32.0);
  for (int i = 0; i < 300; ++i) {
    const double a = eps_dist(rng);
    const double b = eps_dist(rng);
    const double c = eps_dist(rng);
    const double alpha = alpha_dist(rng);
    CHECK(RelDiff(ComposeAdp(a, b, alpha), ComposeAdp(b, a, alpha)) <=
          1e-12);
    CHECK(RelDiff(ComposeAdp(ComposeAdp(a, b, alpha), c, alpha),
                  ComposeAdp(a, ComposeAdp(b, c, alpha), alpha)) <= 1e-12);
  }
}

TEST_CASE("n-step composition closed form matches step-by-step folding") {
  const double alpha = 13.0;
  const double eps = GaussianAdpEpsilon(100.0, 1.0, alpha);
  CHECK(ComposeAdpN(eps, 1, alpha) == eps);
  CHECK(RelDiff(ComposeAdpN(eps, 2, alpha), ComposeAdp(eps, eps, alpha)) <=
        1e-14);
  double folded = 0.0;
  for (int i = 0; i < 1000; ++i) folded = ComposeAdp(folded, eps, alpha);
  CHECK(RelDiff(ComposeAdpN(eps, 1000, alpha), folded) <= 1e-12);
  CHECK(ComposeAdpN(eps, 1000, alpha) ==
        doctest::Approx(15.638474215541661).epsilon(1e-12));
  CHECK_THROWS_AS(ComposeAdpN(eps, 0, alpha), DomainError);
}

TEST_CASE("n-step composition survives counts that overflow a naive power") {
  // 10^6 steps at a per-step cost tuned so the power sits just past the
  // exp range while the quotient by alpha (alpha-1) is still representable.
  const double alpha = 2.0;
  const double big = ComposeAdpN(3.55e-4, 1000000, alpha);
  CHECK(std::isfinite(big));
  CHECK(big > 1e300);
  // A larger per-step cost pushes the total past the double range.
  CHECK_THROWS_AS(ComposeAdpN(0.5, 1000000, alpha), OverflowError);
}

TEST_CASE("rdp and zcdp composition are additive") {
  CHECK(ComposeRdp(0.3, 0.7) == 1.0);
  CHECK(ComposeZcdp(0.25, 0.5) == 0.75);
  CHECK_THROWS_AS(ComposeRdp(-0.1, 0.7), DomainError);
  CHECK_THROWS_AS(ComposeZcdp(-0.1, 0.7), DomainError);
}

TEST_CASE("advanced composition matches the defining bound") {
  // eps sqrt(2 n ln(1/slack)) + n eps (e^eps - 1); delta adds up.
  const ApproxDpGuarantee g = ComposeAdvanced(0.048428, 5e-6, 100, 5e-6);
  CHECK(g.epsilon == doctest::Approx(2.6330607713520506).epsilon(1e-12));
  CHECK(g.delta == doctest::Approx(100 * 5e-6 + 5e-6).epsilon(1e-14));

  const double eps = 0.1;
  const ApproxDpGuarantee one = ComposeAdvanced(eps, 1e-6, 1, 1e-6);
  CHECK(one.epsilon ==
        doctest::Approx(eps * std::sqrt(2.0 * std::log(1e6)) +
                        eps * std::expm1(eps))
            .epsilon(1e-12));
}

TEST_CASE("advanced composition validates its inputs") {
  CHECK_THROWS_AS(ComposeAdvanced(0.1, 0.0, 10, 1e-6), DomainError);
  CHECK_THROWS_AS(ComposeAdvanced(0.1, 1e-6, 10, 0.0), DomainError);
  CHECK_THROWS_AS(ComposeAdvanced(0.1, 1e-6, 10, 1.0), DomainError);
  CHECK_THROWS_AS(ComposeAdvanced(-0.1, 1e-6, 10, 1e-6), DomainError);
  CHECK_THROWS_AS(ComposeAdvanced(0.1, 1e-6, 0, 1e-6), DomainError);
  // Total delta reaching 1 invalidates the guarantee.
  CHECK_THROWS_AS(ComposeAdvanced(0.1, 0.2, 5, 0.1), DomainError);
}

TEST_CASE("adp conversion reproduces hand-computed values") {
  // Proof form at alpha 2, eps 0.5, delta 1e-5:
  //   (log(1 + 2 * 0.5) + log(1e5)) / 1 = log(2e5).
  CHECK(AdpToApprox({2.0, 0.5}, 1e-5).epsilon ==
        doctest::Approx(std::log(2e5)).epsilon(1e-14));
  CHECK(AdpToApprox({2.0, 0.5}, 1e-5).epsilon ==
        doctest::Approx(12.206072645530174).epsilon(1e-14));
  CHECK(AdpToApprox({2.0, 0.0}, 1e-5).epsilon ==
        doctest::Approx(std::log(1e5)).epsilon(1e-14));
  CHECK(AdpToApprox({2.0, 0.5}, 1e-5).delta == 1e-5);

  // Statement form exponentiates epsilon inside the moment bound:
  //   log((e^eps alpha (alpha-1) + 1) / delta) / (alpha - 1), evaluated
  //   directly here since the magnitudes are moderate.
  const double direct =
      (std::log(std::exp(0.5) * 2.0 + 1.0) + std::log(1e5)) / 1.0;
  CHECK(AdpToApprox({2.0, 0.5}, 1e-5, ConversionForm::kStatement).epsilon ==
        doctest::Approx(direct).epsilon(1e-12));

  // Monotone in epsilon, antitone in delta.
  CHECK(AdpToApprox({2.0, 0.6}, 1e-5).epsilon >
        AdpToApprox({2.0, 0.5}, 1e-5).epsilon);
  CHECK(AdpToApprox({2.0, 0.5}, 1e-6).epsilon >
        AdpToApprox({2.0, 0.5}, 1e-5).epsilon);
}

TEST_CASE("statement-form conversion dominates the proof form") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> alpha_dist(1.5, 64.0);
  std::uniform_real_distribution<double> eps_dist(0.0, 5.0);
  for (int i = 0; i < 300; ++i) {
    const double alpha = alpha_dist(rng);
    const double eps = eps_dist(rng);
    const double proof = AdpToApprox({alpha, eps}, 1e-7).epsilon;
    const double statement =
        AdpToApprox({alpha, eps}, 1e-7, ConversionForm::kStatement).epsilon;
    CHECK(statement >= proof - 1e-12);
  }
}

TEST_CASE("rdp and zcdp conversions match hand-computed values") {
  CHECK(RdpToApprox({11.0, 1.0}, 1e-5).epsilon ==
        doctest::Approx(2.151292546497023).epsilon(1e-14));
  CHECK(ZcdpToApprox({0.05}, 1e-5).epsilon ==
        doctest::Approx(1.5674271293851463).epsilon(1e-12));
  CHECK(ZcdpToApprox({0.0}, 1e-5).epsilon == 0.0);
  CHECK_THROWS_AS(RdpToApprox({11.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(ZcdpToApprox({0.05}, 1.0), DomainError);
  CHECK_THROWS_AS(ZcdpToApprox({-0.05}, 1e-5), DomainError);
}

TEST_CASE("group privacy halves the order and rescales epsilon") {
  const AdpGuarantee g{8.0, 0.1};
  const AdpGuarantee doubled = GroupPrivacyAdp(g, 1);
  CHECK(doubled.alpha == 4.0);
  // 8 * 7 / (4 * 3) * 0.1 = 14/3 * 0.1.
  CHECK(doubled.epsilon ==
        doctest::Approx(0.4666666666666667).epsilon(1e-12));

  const AdpGuarantee same = GroupPrivacyAdp(g, 0);
  CHECK(same.alpha == g.alpha);
  CHECK(same.epsilon == g.epsilon);

  CHECK_THROWS_AS(GroupPrivacyAdp({4.0, 0.1}, 2), GroupTooLarge);
  CHECK_THROWS_AS(GroupPrivacyAdp({2.0, 0.1}, 1), GroupTooLarge);
  CHECK_THROWS_AS(GroupPrivacyAdp({8.0, 0.1}, -1), DomainError);
}

TEST_CASE("group privacy telescopes") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> alpha_dist(5.0, 500.0);
  std::uniform_real_distribution<double> eps_dist(1e-6, 2.0);
  for (int i = 0; i < 300; ++i) {
    const AdpGuarantee g{alpha_dist(rng), eps_dist(rng)};
    const AdpGuarantee twice = GroupPrivacyAdp(GroupPrivacyAdp(g, 1), 1);
    const AdpGuarantee once = GroupPrivacyAdp(g, 2);
    CHECK(twice.alpha == once.alpha);
    CHECK(RelDiff(twice.epsilon, once.epsilon) <= 1e-12);
  }
}

TEST_CASE("group doublings cover the requested group size") {
  CHECK(GroupDoublingsForSize(1) == 0);
  CHECK(GroupDoublingsForSize(2) == 1);
  CHECK(GroupDoublingsForSize(3) == 2);
  CHECK(GroupDoublingsForSize(4) == 2);
  CHECK(GroupDoublingsForSize(5) == 3);
  CHECK(GroupDoublingsForSize(1024) == 10);
  CHECK(GroupDoublingsForSize(1025) == 11);
  CHECK_THROWS_AS(GroupDoublingsForSize(0), DomainError);
}

TEST_CASE("composition ledger folds steps under each framework") {
  CompositionLedger adp_ledger = CompositionLedger::Adp(2.0);
  adp_ledger.AddStep(0.1);
  adp_ledger.AddStep(0.1);
  CHECK(adp_ledger.cumulative() == ComposeAdp(0.1, 0.1, 2.0));
  CHECK(adp_ledger.Replay() == adp_ledger.cumulative());

  CompositionLedger rdp_ledger = CompositionLedger::Rdp(3.0);
  rdp_ledger.AddStep(0.3);
  rdp_ledger.AddStep(0.7);
  CHECK(rdp_ledger.cumulative() == 1.0);

  CompositionLedger zcdp_ledger = CompositionLedger::Zcdp();
  zcdp_ledger.AddStep(0.25);
  zcdp_ledger.AddStep(0.5);
  CHECK(zcdp_ledger.cumulative() == 0.75);

  CompositionLedger adv = CompositionLedger::Advanced(1e-6);
  adv.AddStep(0.1, 1e-7);
  adv.AddStep(0.1, 1e-7);
  CHECK(adv.cumulative() ==
        ComposeAdvanced(0.1, 1e-7, 2, 1e-6).epsilon);
  CHECK(adv.cumulative_delta() ==
        doctest::Approx(2e-7 + 1e-6).epsilon(1e-14));
  // Heterogeneous advanced steps are rejected.
  CHECK_THROWS_AS(adv.AddStep(0.2, 1e-7), DomainError);
  CHECK_THROWS_AS(adv.AddStep(0.1, 2e-7), DomainError);
}

TEST_CASE("composition ledger serializes and replays bit-for-bit") {
  CompositionLedger ledger = CompositionLedger::Adp(7.0);
  ledger.AddStep(0.01);
  ledger.AddStep(0.02);
  ledger.AddStep(0.03);
  const nlohmann::json j = ledger.ToJson();
  const CompositionLedger restored = CompositionLedger::FromJson(j);
  CHECK(restored.cumulative() == ledger.cumulative());
  CHECK(restored.alpha() == ledger.alpha());
  CHECK(restored.steps() == ledger.steps());

  // A tampered cumulative cannot replay.
  nlohmann::json bad = j;
  bad["cumulative"] = ledger.cumulative() * 1.001;
  CHECK_THROWS_AS(CompositionLedger::FromJson(bad), DomainError);

  CompositionLedger adv = CompositionLedger::Advanced(1e-6);
  adv.AddStep(0.05, 1e-8);
  adv.AddStep(0.05, 1e-8);
  const CompositionLedger adv_restored =
      CompositionLedger::FromJson(adv.ToJson());
  CHECK(adv_restored.cumulative() == adv.cumulative());
  CHECK(adv_restored.cumulative_delta() == adv.cumulative_delta());
}

TEST_CASE("ledger conversion matches the standalone conversions") {
  CompositionLedger ledger = CompositionLedger::Adp(13.0);
  const double eps = GaussianAdpEpsilon(100.0, 1.0, 13.0);
  for (int i = 0; i < 50; ++i) ledger.AddStep(eps);
  const ApproxDpGuarantee via_ledger = ledger.ToApprox(1e-5);
  const ApproxDpGuarantee direct =
      AdpToApprox({13.0, ledger.cumulative()}, 1e-5);
  CHECK(via_ledger.epsilon == direct.epsilon);
  CHECK(via_ledger.delta == direct.delta);
}

TEST_CASE("framework names round-trip") {
  for (Framework f : {Framework::kAdp, Framework::kRdp, Framework::kZcdp,
                      Framework::kAdvanced}) {
    CHECK(FrameworkFromName(FrameworkName(f)) == f);
  }
  CHECK_THROWS_AS(FrameworkFromName("momentwise"), DomainError);
}

}  // namespace
}  // namespace adp
