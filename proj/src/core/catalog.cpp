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

#include "core/catalog.hpp"

#include <cmath>
#include <functional>
#include <set>

#include "core/error.hpp"

namespace spectra::scenarios {
namespace {

constexpr std::uint64_t kCatalogSeed = 2026;

class Params {
 public:
  Params(const std::map<std::string, double>& values,
         std::set<std::string> known)
      : values_(values) {
    for (const auto& [key, value] : values) {
      if (!known.count(key)) {
        throw Error(ErrorCode::kValidation,
                    "unknown scenario parameter '" + key + "'");
      }
    }
  }

  double get(const std::string& key, double fallback) const {
    auto found = values_.find(key);
    return found == values_.end() ? fallback : found->second;
  }

  int get_int(const std::string& key, int fallback) const {
    double value = get(key, fallback);
    if (value != std::floor(value)) {
      throw Error(ErrorCode::kValidation,
                  "parameter '" + key + "' must be an integer");
    }
    return static_cast<int>(value);
  }

 private:
  const std::map<std::string, double>& values_;
};

model::License make_license(const std::string& id, std::int64_t reserve_major,
                            const std::string& region) {
  model::License license;
  license.id = id;
  license.bandwidth_mhz = 10.0;
  license.population = 1'000'000;
  license.area_km2 = 1000.0;
  license.reserve_price = money_from_major(reserve_major);
  license.activity_weight = 1.0;
  license.region_id = region;
  return license;
}

model::Bidder make_bidder(const std::string& id) {
  model::Bidder bidder;
  bidder.id = id;
  return bidder;
}

strategies::StrategyAssignment assign(const std::string& bidder,
                                      const std::string& policy) {
  strategies::StrategyAssignment assignment;
  assignment.bidder_id = bidder;
  assignment.policy = policy;
  return assignment;
}

void add_profile(Scenario* scenario, const std::string& bidder,
                 std::map<model::LicenseId, Money> base,
                 std::vector<model::BundleAdjustment> adjustments = {}) {
  for (const auto& license : scenario->licenses) {
    if (!base.count(license.id)) base[license.id] = 0;
  }
  scenario->valuations.emplace(
      bidder, model::ValuationProfile(bidder, std::move(base),
                                      std::move(adjustments)));
}

// Three bidders on two consecutive slots: A wants the pair (standalone 100
// each, pair worth `pair_value`) and chases the second slot's reserve into
// its slot-1 cap; B and C each value either slot at 150. The pair_value=200
// variant reproduces the classic stranding: A takes slot 1 at 151, then
// drops out of slot 2 once its remaining marginal value is 100.
Scenario build_two_slot(const Params& params) {
  Scenario scenario;
  scenario.name = "two_slot_complements";
  scenario.seed = kCatalogSeed;
  scenario.licenses = {make_license("slot1", 100, "metro"),
                       make_license("slot2", 100, "metro")};
  for (const char* id : {"A", "B", "C"}) {
    scenario.bidders[id] = make_bidder(id);
  }
  Money pair_value = money_from_decimal(params.get("pair_value", 300.0),
                                        "pair_value");
  model::BundleAdjustment pair;
  pair.licenses = {"slot1", "slot2"};
  pair.amount = pair_value - money_from_major(200);
  add_profile(&scenario, "A",
              {{"slot1", money_from_major(100)},
               {"slot2", money_from_major(100)}},
              {pair});
  add_profile(&scenario, "B",
              {{"slot1", money_from_major(150)},
               {"slot2", money_from_major(150)}});
  add_profile(&scenario, "C",
              {{"slot1", money_from_major(150)},
               {"slot2", money_from_major(150)}});

  scenario.mechanism.kind = mechanisms::MechanismKind::SEQ_AMR;
  scenario.mechanism.increment =
      mechanisms::IncrementSchedule::absolute(money_from_major(1));
  scenario.mechanism.fixed_order = {"slot1", "slot2"};
  // Pinned so the worked trace's slot-2 tie between B and C lands on B
  // regardless of the run seed.
  scenario.mechanism.tie_break_seed = 5;

  strategies::StrategyAssignment chaser = assign("A", "ExposureChaser");
  chaser.bundle = {"slot1", "slot2"};
  scenario.assignments = {chaser, assign("B", "StraightforwardAscending"),
                          assign("C", "StraightforwardAscending")};
  return scenario;
}

// A large bidder with a complementary pair against two budget-capped small
// bidders who jointly value the licenses more but cannot raise far enough
// individually. The large bidder's 180 budget stands in for a package bid:
// its combined exposure never exceeds that total.
Scenario build_threshold(const Params&) {
  Scenario scenario;
  scenario.name = "threshold_problem";
  scenario.seed = kCatalogSeed;
  scenario.licenses = {make_license("site1", 75, "metro"),
                       make_license("site2", 75, "metro")};
  scenario.bidders["A"] = make_bidder("A");
  scenario.bidders["A"].budget = money_from_major(180);
  scenario.bidders["B"] = make_bidder("B");
  scenario.bidders["B"].budget = money_from_major(75);
  scenario.bidders["C"] = make_bidder("C");
  scenario.bidders["C"].budget = money_from_major(75);

  model::BundleAdjustment pair;
  pair.licenses = {"site1", "site2"};
  pair.amount = money_from_major(20);
  add_profile(&scenario, "A",
              {{"site1", money_from_major(90)},
               {"site2", money_from_major(90)}},
              {pair});
  add_profile(&scenario, "B", {{"site1", money_from_major(150)}});
  add_profile(&scenario, "C", {{"site2", money_from_major(100)}});

  scenario.mechanism.kind = mechanisms::MechanismKind::SAMR;
  scenario.mechanism.increment =
      mechanisms::IncrementSchedule::absolute(money_from_major(5));

  scenario.assignments = {assign("A", "StraightforwardAscending"),
                          assign("B", "StraightforwardAscending"),
                          assign("C", "StraightforwardAscending")};
  return scenario;
}

// Single license, two sincere bidders with values 150 and 159, reserve
// 100. The increment parameter controls how long the ladder runs.
Scenario build_increment_demo(const Params& params) {
  Scenario scenario;
  scenario.name = "increment_demo";
  scenario.seed = kCatalogSeed;
  scenario.licenses = {make_license("item", 100, "national")};
  scenario.bidders["A"] = make_bidder("A");
  scenario.bidders["B"] = make_bidder("B");
  add_profile(&scenario, "A", {{"item", money_from_major(150)}});
  add_profile(&scenario, "B", {{"item", money_from_major(159)}});

  Money increment = money_from_decimal(params.get("inc", 1.0), "inc");
  if (increment < 1) {
    throw Error(ErrorCode::kValidation,
                "parameter 'inc' must be at least one minor unit");
  }
  scenario.mechanism.kind = mechanisms::MechanismKind::SEQ_AMR;
  scenario.mechanism.increment =
      mechanisms::IncrementSchedule::absolute(increment);
  scenario.mechanism.fixed_order = {"item"};

  scenario.assignments = {assign("A", "StraightforwardAscending"),
                          assign("B", "StraightforwardAscending")};
  return scenario;
}

// Two identical licenses, two bidders valuing either at 100 with no
// complementarity. With DemandReducer(1) agents each settles on a
// different license at reserve; the straightforward variant competes both
// licenses up to value.
Scenario build_demand_reduction(const Params& params) {
  Scenario scenario;
  scenario.name = "demand_reduction_pair";
  scenario.seed = kCatalogSeed;
  scenario.licenses = {make_license("slotA", 10, "metro"),
                       make_license("slotB", 10, "metro")};
  scenario.bidders["X"] = make_bidder("X");
  scenario.bidders["Y"] = make_bidder("Y");
  for (const char* id : {"X", "Y"}) {
    add_profile(&scenario, id,
                {{"slotA", money_from_major(100)},
                 {"slotB", money_from_major(100)}});
  }

  scenario.mechanism.kind = mechanisms::MechanismKind::SAMR;
  scenario.mechanism.increment =
      mechanisms::IncrementSchedule::absolute(money_from_major(1));

  int straightforward = params.get_int("straightforward", 0);
  if (straightforward != 0 && straightforward != 1) {
    throw Error(ErrorCode::kValidation,
                "parameter 'straightforward' must be 0 or 1");
  }
  if (straightforward == 1) {
    scenario.assignments = {assign("X", "StraightforwardAscending"),
                            assign("Y", "StraightforwardAscending")};
  } else {
    strategies::StrategyAssignment x = assign("X", "DemandReducer");
    x.params["k"] = 1;
    strategies::StrategyAssignment y = assign("Y", "DemandReducer");
    y.params["k"] = 1;
    scenario.assignments = {x, y};
  }
  return scenario;
}

// Sealed-bid fixture. Default: three truthful bidders at 10/15/20 over
// reserve 5 (second-price sale at 15). The nz=1 variant has one bidder at
// 500 against 50, reserve 100: the runner-up offer dies below reserve and
// the winner pays reserve, a long way under its own bid.
Scenario build_vickrey_gap(const Params& params) {
  Scenario scenario;
  scenario.name = "vickrey_gap";
  scenario.seed = kCatalogSeed;
  int nz = params.get_int("nz", 0);
  if (nz != 0 && nz != 1) {
    throw Error(ErrorCode::kValidation, "parameter 'nz' must be 0 or 1");
  }
  if (nz == 0) {
    scenario.licenses = {make_license("item", 5, "national")};
    scenario.bidders["A"] = make_bidder("A");
    scenario.bidders["B"] = make_bidder("B");
    scenario.bidders["C"] = make_bidder("C");
    add_profile(&scenario, "A", {{"item", money_from_major(10)}});
    add_profile(&scenario, "B", {{"item", money_from_major(15)}});
    add_profile(&scenario, "C", {{"item", money_from_major(20)}});
    scenario.assignments = {assign("A", "TruthfulSealed"),
                            assign("B", "TruthfulSealed"),
                            assign("C", "TruthfulSealed")};
  } else {
    scenario.licenses = {make_license("item", 100, "national")};
    scenario.bidders["A"] = make_bidder("A");
    scenario.bidders["B"] = make_bidder("B");
    add_profile(&scenario, "A", {{"item", money_from_major(500)}});
    add_profile(&scenario, "B", {{"item", money_from_major(50)}});
    scenario.assignments = {assign("A", "TruthfulSealed"),
                            assign("B", "TruthfulSealed")};
  }
  scenario.mechanism.kind = mechanisms::MechanismKind::VICKREY;
  return scenario;
}

// Two bidders rotating two licenses under an explicit agreement: X is
// designated license A (which the hybrid mechanism visits first), Y is
// designated license C. Punishment raises against a defector by a 10%
// markup over the punisher's own value.
Scenario build_claim1(const Params& params) {
  Scenario scenario;
  scenario.name = "claim1_collusion";
  scenario.seed = kCatalogSeed;
  scenario.licenses = {make_license("A", 50, "national"),
                       make_license("C", 50, "national")};
  scenario.bidders["X"] = make_bidder("X");
  scenario.bidders["Y"] = make_bidder("Y");
  add_profile(&scenario, "X",
              {{"A", money_from_major(100)}, {"C", money_from_major(150)}});
  add_profile(&scenario, "Y",
              {{"A", money_from_major(100)}, {"C", money_from_major(100)}});

  int tsf = params.get_int("tsf", 2);
  if (tsf < 1) {
    throw Error(ErrorCode::kValidation, "parameter 'tsf' must be >= 1");
  }
  scenario.mechanism.kind = mechanisms::MechanismKind::HAMR;
  scenario.mechanism.increment =
      mechanisms::IncrementSchedule::absolute(money_from_major(5));
  scenario.mechanism.fixed_order = {"A", "C"};
  scenario.mechanism.tsf = {{"A", tsf}, {"C", tsf}};
  scenario.mechanism.disclosure = mechanisms::Disclosure::BIDS_AND_IDENTITIES;
  // A loyal member sits on one license of two, so a 100% requirement would
  // slash its eligibility in round one and forbid the punishment raise
  // later. Half keeps retaliation capacity open.
  scenario.mechanism.activity_phases = {{1, 0.5}};

  strategies::CartelAgreement cartel;
  cartel.members = {"X", "Y"};
  cartel.designated_winner = {{"A", "X"}, {"C", "Y"}};
  cartel.punishment = strategies::CartelAgreement::Punishment::RAISE_ON_DEFECTOR;
  cartel.markup_fraction = 0.10;
  scenario.cartel = cartel;

  scenario.assignments = {assign("X", "CartelMember"),
                          assign("Y", "CartelMember")};
  return scenario;
}

// Four strong incumbents plus one weaker entrant, each capped at a single
// license's bandwidth. With five licenses everyone settles at reserve;
// with four the entrant contests an incumbent and prices rise. Valuations
// here are synthetic: the source anecdote names no numbers, so incumbents
// value any license at 100 and the entrant at 80 to make the 4-vs-5
// contrast visible.
Scenario build_five_license(const Params& params) {
  Scenario scenario;
  scenario.name = "five_license_entrant";
  scenario.seed = kCatalogSeed;
  int count = params.get_int("licenses", 5);
  if (count < 2 || count > 5) {
    throw Error(ErrorCode::kValidation,
                "parameter 'licenses' must lie in [2, 5]");
  }
  std::map<model::LicenseId, Money> incumbent_values;
  std::map<model::LicenseId, Money> entrant_values;
  for (int i = 1; i <= count; ++i) {
    std::string id = "lic" + std::to_string(i);
    scenario.licenses.push_back(make_license(id, 10, "national"));
    incumbent_values[id] = money_from_major(100);
    entrant_values[id] = money_from_major(80);
  }
  for (int i = 1; i <= 4; ++i) {
    std::string id = "inc" + std::to_string(i);
    scenario.bidders[id] = make_bidder(id);
    scenario.bidders[id].bandwidth_cap_mhz = 10.0;
    add_profile(&scenario, id, incumbent_values);
  }
  scenario.bidders["entrant"] = make_bidder("entrant");
  scenario.bidders["entrant"].bandwidth_cap_mhz = 10.0;
  scenario.bidders["entrant"].designated = true;
  add_profile(&scenario, "entrant", entrant_values);

  scenario.mechanism.kind = mechanisms::MechanismKind::SAMR;
  scenario.mechanism.increment =
      mechanisms::IncrementSchedule::absolute(money_from_major(1));

  for (const auto& [id, bidder] : scenario.bidders) {
    scenario.assignments.push_back(assign(id, "StraightforwardAscending"));
  }
  return scenario;
}

using Builder = std::function<Scenario(const Params&)>;

struct Entry {
  std::string name;
  std::set<std::string> params;
  Builder builder;
};

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = {
      {"two_slot_complements", {"pair_value"}, build_two_slot},
      {"threshold_problem", {}, build_threshold},
      {"increment_demo", {"inc"}, build_increment_demo},
      {"demand_reduction_pair", {"straightforward"}, build_demand_reduction},
      {"vickrey_gap", {"nz"}, build_vickrey_gap},
      {"claim1_collusion", {"tsf"}, build_claim1},
      {"five_license_entrant", {"licenses"}, build_five_license},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> result;
    for (const auto& entry : catalog()) result.push_back(entry.name);
    return result;
  }();
  return names;
}

Scenario build_scenario(const std::string& name,
                        const std::map<std::string, double>& params) {
  for (const auto& entry : catalog()) {
    if (entry.name != name) continue;
    Scenario scenario = entry.builder(Params(params, entry.params));
    validate_scenario(scenario);
    return scenario;
  }
  throw Error(ErrorCode::kUnknownScenario, "unknown scenario '" + name + "'");
}

}  // namespace spectra::scenarios
