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

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/money.hpp"
#include "core/runner.hpp"
#include "core/strategies.hpp"

using namespace spectra;
using strategies::BidIntent;
using strategies::LicenseView;
using strategies::PrivateContext;
using strategies::PublicView;

namespace {

LicenseView open_license(const std::string& id, Money reserve) {
  LicenseView license;
  license.id = id;
  license.reserve = reserve;
  license.bandwidth_mhz = 10;
  license.region_id = "r";
  license.min_next_bid = reserve;
  return license;
}

// A bidder-eye fixture: one bidder, its profile, and a view with ample
// eligibility so only the behavior under test constrains the bids.
struct Table {
  model::Bidder bidder;
  model::ValuationProfile profile;
  PublicView view;
  PrivateContext context;

  Table(const std::string& bidder_id,
        std::map<model::LicenseId, Money> values,
        std::vector<model::BundleAdjustment> adjustments = {})
      : profile(bidder_id, std::move(values), std::move(adjustments)) {
    bidder.id = bidder_id;
    view.eligibility = 100.0;
    view.open_licenses.reserve(8);
    context.bidder = &bidder;
    context.profile = &profile;
  }

  LicenseView& add(const std::string& id, Money reserve) {
    view.open_licenses.push_back(open_license(id, reserve));
    return view.open_licenses.back();
  }
};

std::optional<Money> intent_amount(const std::vector<BidIntent>& intents,
                                   const std::string& license_id) {
  for (const auto& intent : intents) {
    if (intent.license_id == license_id) return intent.amount;
  }
  return std::nullopt;
}

void expect_validation_error(
    const strategies::StrategyAssignment& assignment,
    const std::optional<strategies::CartelAgreement>& cartel) {
  try {
    (void)strategies::make_strategy(assignment, 0, cartel);
    FAIL("expected validation error for policy " << assignment.policy);
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::kValidation);
  }
}

strategies::CartelAgreement pact() {
  strategies::CartelAgreement agreement;
  agreement.members = {"X", "Y"};
  agreement.designated_winner = {{"a", "X"}, {"c", "Y"}};
  agreement.punishment =
      strategies::CartelAgreement::Punishment::RAISE_ON_DEFECTOR;
  agreement.markup_fraction = 0.10;
  return agreement;
}

}  // namespace

TEST_CASE("truthful sealed offers the standalone values") {
  Table table("B", {{"a", money_from_major(100)},
                    {"b", money_from_major(40)},
                    {"c", money_from_major(5)}});
  table.add("a", money_from_major(10));
  table.add("b", money_from_major(10));
  table.add("c", money_from_major(10));

  strategies::TruthfulSealed agent(0);
  auto bids = agent.sealed_bids(table.view, table.context);
  CHECK(bids.at("a") == money_from_major(100));
  CHECK(bids.at("b") == money_from_major(40));
  // A value under the reserve is not worth a bid.
  CHECK(bids.count("c") == 0);

  SUBCASE("a budget clamps every offer") {
    table.context.remaining_budget = money_from_major(50);
    auto clamped = agent.sealed_bids(table.view, table.context);
    CHECK(clamped.at("a") == money_from_major(50));
    CHECK(clamped.at("b") == money_from_major(40));
  }

  SUBCASE("a bidding credit stretches the budget to a larger gross") {
    table.bidder.designated = true;
    table.bidder.credit_fraction = 0.5;
    table.context.remaining_budget = money_from_major(50);
    auto stretched = agent.sealed_bids(table.view, table.context);
    CHECK(stretched.at("a") == money_from_major(100));
  }

  SUBCASE("a bandwidth cap suppresses bids that cannot fit") {
    table.bidder.bandwidth_cap_mhz = 15.0;
    table.context.region_bandwidth_held = {{"r", 10.0}};
    auto capped = agent.sealed_bids(table.view, table.context);
    CHECK(capped.empty());
  }
}

TEST_CASE("shaded sealed scales the values") {
  Table table("B", {{"a", money_from_major(101)}});
  table.add("a", money_from_major(10));
  strategies::ShadedSealed agent(0.5, 0);
  auto bids = agent.sealed_bids(table.view, table.context);
  CHECK(bids.at("a") == money_from_decimal(50.5, "bid"));

  strategies::ShadedSealed over(1.5, 0);
  CHECK(over.sealed_bids(table.view, table.context).at("a") ==
        money_from_decimal(151.5, "bid"));
}

TEST_CASE("straightforward raising is minimal and value-capped") {
  Table table("B", {{"a", money_from_major(150)}});
  auto& license = table.add("a", money_from_major(10));
  license.has_standing = true;
  license.standing_bid = money_from_major(100);
  license.min_next_bid = money_from_major(110);

  strategies::StraightforwardAscending agent(0);
  auto intents = agent.decide(table.view, table.context);
  CHECK(intent_amount(intents, "a") == money_from_major(110));

  SUBCASE("no raise against itself as sole stander") {
    license.self_standing = true;
    license.self_sole_standing = true;
    CHECK(agent.decide(table.view, table.context).empty());
  }

  SUBCASE("a joint stander raises to shed the tie") {
    license.self_standing = true;
    license.self_sole_standing = false;
    auto raises = agent.decide(table.view, table.context);
    CHECK(intent_amount(raises, "a") == money_from_major(110));
  }

  SUBCASE("prices beyond value end the pursuit") {
    license.min_next_bid = money_from_major(151);
    CHECK(agent.decide(table.view, table.context).empty());
  }

  SUBCASE("sequential solicitations hold bids for other licenses") {
    table.view.biddable = model::LicenseId("other");
    CHECK(agent.decide(table.view, table.context).empty());
  }
}

TEST_CASE("equal options spread across bidder indices") {
  std::map<model::LicenseId, Money> values = {{"a", money_from_major(100)},
                                              {"b", money_from_major(100)}};
  for (int index : {0, 1}) {
    Table table("B", values);
    table.add("a", money_from_major(10));
    table.add("b", money_from_major(10));
    strategies::DemandReducer agent(1, index);

    auto sealed = agent.sealed_bids(table.view, table.context);
    REQUIRE(sealed.size() == 1);
    CHECK(sealed.count(index == 0 ? "a" : "b") == 1);

    auto intents = agent.decide(table.view, table.context);
    REQUIRE(intents.size() == 1);
    CHECK(intents[0].license_id == (index == 0 ? "a" : "b"));
  }
}

TEST_CASE("the demand reducer pursues at most k licenses") {
  Table table("B", {{"a", money_from_major(100)},
                    {"b", money_from_major(90)},
                    {"c", money_from_major(80)}});
  table.add("a", money_from_major(10));
  table.add("b", money_from_major(10));
  table.add("c", money_from_major(10));

  strategies::DemandReducer agent(2, 0);
  auto intents = agent.decide(table.view, table.context);
  REQUIRE(intents.size() == 2);
  CHECK(intent_amount(intents, "a") == money_from_major(10));
  CHECK(intent_amount(intents, "b") == money_from_major(10));

  auto sealed = agent.sealed_bids(table.view, table.context);
  REQUIRE(sealed.size() == 2);
  CHECK(sealed.at("a") == money_from_major(100));
  CHECK(sealed.at("b") == money_from_major(90));
}

TEST_CASE("the exposure chaser prices open partners into its cap") {
  std::vector<model::BundleAdjustment> pair = {
      {{"a", "b"}, money_from_major(100)}};
  Table table("B",
              {{"a", money_from_major(100)}, {"b", money_from_major(100)}},
              pair);
  table.add("a", money_from_major(20));
  table.add("b", money_from_major(30));

  strategies::ExposureChaser agent({}, std::nullopt, 0);
  auto bids = agent.sealed_bids(table.view, table.context);
  // Standalone value plus the open partner's reserve.
  CHECK(bids.at("a") == money_from_major(130));
  CHECK(bids.at("b") == money_from_major(120));

  SUBCASE("a forecast overrides the reserve guess") {
    strategies::ExposureChaser tuned({}, money_from_major(50), 0);
    auto forecast = tuned.sealed_bids(table.view, table.context);
    CHECK(forecast.at("a") == money_from_major(150));
  }

  SUBCASE("a held partner switches the cap to full marginal value") {
    table.context.holdings = {"b"};
    table.view.open_licenses.erase(table.view.open_licenses.begin() + 1);
    auto held = agent.sealed_bids(table.view, table.context);
    CHECK(held.at("a") == money_from_major(200));
  }

  SUBCASE("in the open format it raises beyond standalone value") {
    auto& license = table.view.open_licenses.front();
    license.has_standing = true;
    license.standing_bid = money_from_major(125);
    license.min_next_bid = money_from_major(130);
    auto intents = agent.decide(table.view, table.context);
    CHECK(intent_amount(intents, "a") == money_from_major(130));
  }
}

TEST_CASE("a cartel member opens, defends, and punishes") {
  auto agreement = pact();
  Table table("X", {{"a", money_from_major(100)}, {"c", money_from_major(150)}});
  auto& a = table.add("a", money_from_major(50));
  auto& c = table.add("c", money_from_major(50));
  strategies::CartelMember agent(agreement, 0);

  SUBCASE("sealed play bids reserve on its own license only") {
    auto sealed = agent.sealed_bids(table.view, table.context);
    REQUIRE(sealed.size() == 1);
    CHECK(sealed.at("a") == money_from_major(50));
  }

  SUBCASE("round one opens the designated license at reserve") {
    auto intents = agent.decide(table.view, table.context);
    REQUIRE(intents.size() == 1);
    CHECK(intents[0].license_id == "a");
    CHECK(intents[0].amount == money_from_major(50));
  }

  SUBCASE("an outside challenger is outbid within value") {
    a.has_standing = true;
    a.standing_bid = money_from_major(55);
    a.standing_bidders = {"Z"};
    a.min_next_bid = money_from_major(60);
    auto intents = agent.decide(table.view, table.context);
    CHECK(intent_amount(intents, "a") == money_from_major(60));
    CHECK(agent.known_defectors().empty());
  }

  SUBCASE("a member caught poaching is punished on its own license") {
    a.has_standing = true;
    a.standing_bid = money_from_major(55);
    a.standing_bidders = {"Y"};
    a.min_next_bid = money_from_major(60);
    c.has_standing = true;
    c.standing_bid = money_from_major(50);
    c.standing_bidders = {"Y"};
    c.min_next_bid = money_from_major(55);

    auto intents = agent.decide(table.view, table.context);
    CHECK(agent.known_defectors() == std::set<model::BidderId>{"Y"});
    CHECK(intent_amount(intents, "a") == money_from_major(60));
    CHECK(intent_amount(intents, "c") == money_from_major(55));

    // The punishment stops at (1 + markup) times the punisher's own value
    // of the license, here 1.1 * 150 = 165.
    c.standing_bid = money_from_major(165);
    c.min_next_bid = money_from_major(170);
    auto capped = agent.decide(table.view, table.context);
    CHECK_FALSE(intent_amount(capped, "c").has_value());
  }

  SUBCASE("detection needs disclosed identities") {
    model::RoundRecord record;
    record.licenses["a"].has_standing = true;
    record.licenses["a"].identities_hidden = true;
    agent.observe(record);
    CHECK(agent.known_defectors().empty());

    record.licenses["a"].identities_hidden = false;
    record.licenses["a"].standing_bidders = {"Y"};
    agent.observe(record);
    CHECK(agent.known_defectors() == std::set<model::BidderId>{"Y"});
  }
}

TEST_CASE("a defector turns sincere once its own license closes") {
  auto agreement = pact();
  Table table("X", {{"a", money_from_major(100)}, {"c", money_from_major(150)}});
  auto& c = table.add("c", money_from_major(50));
  c.has_standing = true;
  c.standing_bid = money_from_major(50);
  c.standing_bidders = {"Y"};
  c.min_next_bid = money_from_major(55);

  strategies::CartelDefector agent(
      agreement, strategies::CartelDefector::Trigger::OWN_DESIGNATED_CLOSED, 0);

  // While a is open the defector plays loyal: no designated license in view
  // means nothing to bid.
  auto& a = table.add("a", money_from_major(50));
  auto loyal = agent.decide(table.view, table.context);
  REQUIRE(loyal.size() == 1);
  CHECK(loyal[0].license_id == "a");
  CHECK_FALSE(agent.triggered());

  // Once a closes in its favor, the defector chases c sincerely.
  table.view.open_licenses.pop_back();
  (void)a;
  strategies::ClosedLicenseView closed;
  closed.id = "a";
  closed.winner = "X";
  closed.price = money_from_major(50);
  table.view.closed_licenses.push_back(closed);
  table.context.holdings = {"a"};

  auto sincere = agent.decide(table.view, table.context);
  CHECK(agent.triggered());
  CHECK(intent_amount(sincere, "c") == money_from_major(55));
}

TEST_CASE("policy construction validates its inputs") {
  strategies::StrategyAssignment assignment;
  assignment.bidder_id = "B";

  assignment.policy = "ShadedSealed";
  expect_validation_error(assignment, std::nullopt);
  assignment.params = {{"f", 0.0}};
  expect_validation_error(assignment, std::nullopt);
  assignment.params = {{"f", 10.0}};
  expect_validation_error(assignment, std::nullopt);
  assignment.params = {{"f", 0.8}};
  CHECK(strategies::make_strategy(assignment, 0, std::nullopt) != nullptr);

  assignment.policy = "DemandReducer";
  assignment.params = {{"k", 0.0}};
  expect_validation_error(assignment, std::nullopt);
  assignment.params = {{"k", 1.5}};
  expect_validation_error(assignment, std::nullopt);
  assignment.params = {{"k", 2.0}};
  CHECK(strategies::make_strategy(assignment, 0, std::nullopt) != nullptr);

  assignment.policy = "CartelMember";
  assignment.params = {};
  expect_validation_error(assignment, std::nullopt);
  auto agreement = pact();
  assignment.bidder_id = "Z";
  expect_validation_error(assignment, agreement);
  assignment.bidder_id = "X";
  CHECK(strategies::make_strategy(assignment, 0, agreement) != nullptr);

  assignment.policy = "CartelDefector";
  assignment.trigger = "ON_FULL_MOON";
  expect_validation_error(assignment, agreement);
  assignment.trigger = "OWN_DESIGNATED_CLOSED";
  CHECK(strategies::make_strategy(assignment, 0, agreement) != nullptr);

  assignment.policy = "Mystery";
  expect_validation_error(assignment, agreement);

  CHECK(strategies::known_policies().size() == 7);
  for (const auto& name : {"TruthfulSealed", "StraightforwardAscending",
                           "ExposureChaser"}) {
    CHECK(std::find(strategies::known_policies().begin(),
                    strategies::known_policies().end(),
                    name) != strategies::known_policies().end());
  }
}

TEST_CASE("library policies never submit rejectable bids") {
  // The intent builders mirror the engine's feasibility checks, so a full
  // run of any built-in scenario must finish with an empty rejection log.
  for (const auto& name : scenarios::catalog_names()) {
    CAPTURE(name);
    auto scenario = scenarios::build_scenario(name);
    auto result = runner::run(scenario);
    for (const auto& record : result.outcome.history) {
      CHECK(record.rejections.empty());
    }
  }
  for (auto kind : {mechanisms::MechanismKind::FPSB,
                    mechanisms::MechanismKind::VICKREY,
                    mechanisms::MechanismKind::SEQ_AMR,
                    mechanisms::MechanismKind::SAMR}) {
    runner::RunOverrides overrides;
    overrides.mechanism = kind;
    auto result =
        runner::run(scenarios::build_scenario("claim1_collusion"), overrides);
    for (const auto& record : result.outcome.history) {
      CHECK(record.rejections.empty());
    }
  }
}
