// Copyright 2026 The Spectra Authors.
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
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/money.hpp"
#include "core/runner.hpp"

using namespace spectra;

namespace {

// Minimal sealed-format scenario with the requested shape; every bidder
// values every license at 100.
scenarios::Scenario synthetic(int license_count, int bidder_count) {
  scenarios::Scenario scenario;
  scenario.name = "synthetic";
  for (int i = 0; i < license_count; ++i) {
    model::License license;
    license.id = "l" + std::to_string(10 + i);
    license.bandwidth_mhz = 10;
    license.population = 1000;
    license.region_id = "r";
    license.reserve_price = money_from_major(10);
    scenario.licenses.push_back(license);
  }
  for (int b = 0; b < bidder_count; ++b) {
    model::BidderId id = "b" + std::to_string(b);
    model::Bidder bidder;
    bidder.id = id;
    scenario.bidders[id] = bidder;
    std::map<model::LicenseId, Money> bases;
    for (const auto& license : scenario.licenses) {
      bases[license.id] = money_from_major(100);
    }
    scenario.valuations[id] = model::ValuationProfile(id, bases, {});
    strategies::StrategyAssignment assignment;
    assignment.bidder_id = id;
    assignment.policy = "TruthfulSealed";
    scenario.assignments.push_back(assignment);
  }
  scenario.mechanism.kind = mechanisms::MechanismKind::FPSB;
  return scenario;
}

}  // namespace

TEST_CASE("sealed run metrics include revenue and the winner's margin") {
  auto scenario = scenarios::build_scenario("vickrey_gap");
  runner::RunOverrides to_fpsb;
  to_fpsb.mechanism = mechanisms::MechanismKind::FPSB;

  auto first_price = runner::run(scenario, to_fpsb);
  CHECK(first_price.metrics.revenue == money_from_major(20));
  CHECK(first_price.metrics.efficiency == doctest::Approx(1.0));
  CHECK(first_price.metrics.rounds == 1);
  CHECK(first_price.metrics.unsold_count == 0);
  // Winning bid 20 against a price-setting alternative of 15.
  CHECK(first_price.metrics.winners_curse_gap == money_from_major(5));

  auto second_price = runner::run(scenario);
  CHECK(second_price.metrics.revenue == money_from_major(15));
  CHECK(second_price.metrics.winners_curse_gap == money_from_major(5));

  SUBCASE("a lone serious bidder pays reserve and shows the full margin") {
    auto lonely = scenarios::build_scenario("vickrey_gap", {{"nz", 1}});
    auto fpsb = runner::run(lonely, to_fpsb);
    CHECK(fpsb.metrics.revenue == money_from_major(500));
    CHECK(fpsb.metrics.winners_curse_gap == money_from_major(400));
    auto vickrey = runner::run(lonely);
    CHECK(vickrey.metrics.revenue == money_from_major(100));
    CHECK(vickrey.metrics.winners_curse_gap == money_from_major(400));
  }

  SUBCASE("multi-round mechanisms have no sealed margin to report") {
    auto open = runner::run(scenarios::build_scenario("two_slot_complements"));
    CHECK_FALSE(open.metrics.winners_curse_gap.has_value());
  }
}

TEST_CASE("welfare and efficiency come from the oracle when in bounds") {
  auto scenario =
      scenarios::build_scenario("two_slot_complements", {{"pair_value", 200}});
  auto result = runner::run(scenario);
  CHECK(result.metrics.welfare_achieved == money_from_major(250));
  CHECK(result.metrics.welfare_optimal == money_from_major(300));
  CHECK(result.metrics.efficiency ==
        doctest::Approx(250.0 / 300.0).epsilon(1e-9));
}

TEST_CASE("oversized instances report efficiency as unavailable") {
  auto in_bounds = synthetic(12, 8);
  CHECK(in_bounds.within_oracle_bounds());
  model::AuctionOutcome empty_outcome;
  auto scored = metrics::score(in_bounds, empty_outcome);
  CHECK(scored.welfare_optimal == money_from_major(1200));
  CHECK(scored.efficiency == doctest::Approx(0.0));

  auto wide = synthetic(13, 8);
  CHECK_FALSE(wide.within_oracle_bounds());
  auto wide_score = metrics::score(wide, empty_outcome);
  CHECK_FALSE(wide_score.welfare_optimal.has_value());
  CHECK_FALSE(wide_score.efficiency.has_value());

  auto crowded = synthetic(1, 9);
  CHECK_FALSE(crowded.within_oracle_bounds());
  CHECK_FALSE(metrics::score(crowded, empty_outcome).efficiency.has_value());
}

TEST_CASE("realized utility nets the bundle value against payments") {
  auto scenario =
      scenarios::build_scenario("two_slot_complements", {{"pair_value", 200}});
  auto result = runner::run(scenario);
  // A chased the pair, won only slot1 at 151 against a standalone value of
  // 100: the exposure loss in one number.
  CHECK(metrics::realized_utility(scenario, "A", result.outcome) ==
        money_from_major(-51));
  CHECK(metrics::realized_utility(scenario, "B", result.outcome) == 0);
  CHECK(metrics::realized_utility(scenario, "C", result.outcome) == 0);

  try {
    (void)metrics::realized_utility(scenario, "nobody", result.outcome);
    FAIL("expected invalid-argument error");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("the revenue study is deterministic and matches the closed form") {
  // Five IID Uniform[0, scale] bidders: both formats average to
  // (n - 1) / (n + 1) of the scale, with first-price bids shaded to
  // (n - 1) / n of value.
  auto fpsb =
      metrics::monte_carlo_revenue(mechanisms::MechanismKind::FPSB, 5, 3000,
                                   99, 0.8);
  CHECK(fpsb.n_draws == 3000);
  CHECK(fpsb.std_error > 0.0);
  CHECK(std::abs(fpsb.mean - 2.0 / 3.0) <= 3.0 * fpsb.std_error);

  auto vickrey = metrics::monte_carlo_revenue(
      mechanisms::MechanismKind::VICKREY, 5, 3000, 99, 1.0);
  CHECK(std::abs(vickrey.mean - 2.0 / 3.0) <= 3.0 * vickrey.std_error);

  auto replay =
      metrics::monte_carlo_revenue(mechanisms::MechanismKind::FPSB, 5, 3000,
                                   99, 0.8);
  CHECK(replay.mean == fpsb.mean);
  CHECK(replay.std_error == fpsb.std_error);

  SUBCASE("only sealed mechanisms are supported") {
    try {
      (void)metrics::monte_carlo_revenue(mechanisms::MechanismKind::SAMR, 5,
                                         10, 1, 1.0);
      FAIL("expected invalid-argument error");
    } catch (const Error& error) {
      CHECK(error.code() == ErrorCode::kInvalidArgument);
    }
    try {
      (void)metrics::monte_carlo_revenue(mechanisms::MechanismKind::FPSB, 0,
                                         10, 1, 1.0);
      FAIL("expected invalid-argument error");
    } catch (const Error& error) {
      CHECK(error.code() == ErrorCode::kInvalidArgument);
    }
  }
}

TEST_CASE("unsold licenses count against revenue but not efficiency math") {
  auto scenario = synthetic(2, 1);
  // The lone bidder sees value only in the first license.
  std::map<model::LicenseId, Money> bases = {{"l10", money_from_major(100)},
                                             {"l11", 0}};
  scenario.valuations["b0"] = model::ValuationProfile("b0", bases, {});
  auto result = runner::run(scenario);
  CHECK(result.metrics.revenue == money_from_major(100));
  CHECK(result.metrics.unsold_count == 1);
  CHECK(result.metrics.welfare_achieved == money_from_major(100));
  CHECK(result.metrics.welfare_optimal == money_from_major(100));
  CHECK(result.metrics.efficiency == doctest::Approx(1.0));
}
