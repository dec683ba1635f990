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

#include "core/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/error.hpp"
#include "json.hpp"

namespace spectra::scenarios {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& rule) {
  throw Error(ErrorCode::kValidation, path + ": " + rule);
}

const json& member(const json& node, const std::string& path,
                   const char* key) {
  auto found = node.find(key);
  if (found == node.end()) fail(path + "." + key, "field is required");
  return *found;
}

std::string get_string(const json& node, const std::string& path,
                       const char* key) {
  const json& value = member(node, path, key);
  if (!value.is_string()) fail(path + "." + key, "must be a string");
  return value.get<std::string>();
}

double get_number(const json& node, const std::string& path, const char* key) {
  const json& value = member(node, path, key);
  if (!value.is_number()) fail(path + "." + key, "must be a number");
  return value.get<double>();
}

double number_or(const json& node, const std::string& path, const char* key,
                 double fallback) {
  if (!node.contains(key)) return fallback;
  return get_number(node, path, key);
}

Money get_money(const json& node, const std::string& path, const char* key) {
  return money_from_decimal(get_number(node, path, key), path + "." + key);
}

int get_int(const json& node, const std::string& path, const char* key) {
  double value = get_number(node, path, key);
  if (value != std::floor(value)) fail(path + "." + key, "must be an integer");
  return static_cast<int>(value);
}

model::License parse_license(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "must be an object");
  model::License license;
  license.id = get_string(node, path, "id");
  if (license.id.empty()) fail(path + ".id", "must not be empty");
  license.bandwidth_mhz = get_number(node, path, "bandwidth_mhz");
  if (license.bandwidth_mhz <= 0) fail(path + ".bandwidth_mhz", "must be > 0");
  license.population =
      static_cast<std::int64_t>(number_or(node, path, "population", 0));
  if (license.population < 0) fail(path + ".population", "must be >= 0");
  license.area_km2 = number_or(node, path, "area_km2", 0.0);
  if (license.area_km2 < 0) fail(path + ".area_km2", "must be >= 0");
  license.reserve_price = get_money(node, path, "reserve_price");
  if (license.reserve_price < 0) fail(path + ".reserve_price", "must be >= 0");
  license.activity_weight = number_or(node, path, "activity_weight", 1.0);
  if (license.activity_weight <= 0) {
    fail(path + ".activity_weight", "must be > 0");
  }
  license.region_id = node.contains("region_id")
                          ? get_string(node, path, "region_id")
                          : "national";
  return license;
}

model::Bidder parse_bidder(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "must be an object");
  model::Bidder bidder;
  bidder.id = get_string(node, path, "id");
  if (bidder.id.empty()) fail(path + ".id", "must not be empty");
  if (node.contains("budget")) {
    bidder.budget = get_money(node, path, "budget");
    if (*bidder.budget < 0) fail(path + ".budget", "must be >= 0");
  }
  if (node.contains("designated")) {
    const json& flag = node.at("designated");
    if (!flag.is_boolean()) fail(path + ".designated", "must be a boolean");
    bidder.designated = flag.get<bool>();
  }
  bidder.credit_fraction = number_or(node, path, "credit_fraction", 0.0);
  if (bidder.credit_fraction < 0.0 || bidder.credit_fraction >= 1.0) {
    fail(path + ".credit_fraction", "must lie in [0, 1)");
  }
  if (bidder.credit_fraction > 0.0 && !bidder.designated) {
    fail(path + ".credit_fraction",
         "only designated bidders may receive a credit");
  }
  if (node.contains("bandwidth_cap_mhz")) {
    bidder.bandwidth_cap_mhz = get_number(node, path, "bandwidth_cap_mhz");
    if (*bidder.bandwidth_cap_mhz <= 0) {
      fail(path + ".bandwidth_cap_mhz", "must be > 0");
    }
  }
  return bidder;
}

model::ValuationProfile parse_valuation(const json& node,
                                        const std::string& path,
                                        const std::vector<model::License>& licenses) {
  if (!node.is_object()) fail(path, "must be an object");
  std::string bidder_id = get_string(node, path, "bidder_id");
  std::set<model::LicenseId> known;
  for (const auto& license : licenses) known.insert(license.id);

  std::map<model::LicenseId, Money> base;
  const json& values = member(node, path, "base_values");
  if (!values.is_object()) fail(path + ".base_values", "must be an object");
  for (const auto& [license_id, amount] : values.items()) {
    if (!known.count(license_id)) {
      fail(path + ".base_values." + license_id, "unknown license id");
    }
    if (!amount.is_number()) {
      fail(path + ".base_values." + license_id, "must be a number");
    }
    base[license_id] = money_from_decimal(amount.get<double>(),
                                          path + ".base_values." + license_id);
  }
  // Every scenario license gets an explicit entry so bundle arithmetic
  // never meets a missing id.
  for (const auto& id : known) {
    if (!base.count(id)) base[id] = 0;
  }

  std::vector<model::BundleAdjustment> adjustments;
  if (node.contains("bundle_adjustments")) {
    const json& list = node.at("bundle_adjustments");
    if (!list.is_array()) fail(path + ".bundle_adjustments", "must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string item_path =
          path + ".bundle_adjustments[" + std::to_string(i) + "]";
      const json& item = list[i];
      if (!item.is_object()) fail(item_path, "must be an object");
      model::BundleAdjustment adjustment;
      const json& ids = member(item, item_path, "licenses");
      if (!ids.is_array()) fail(item_path + ".licenses", "must be an array");
      for (const auto& id : ids) {
        if (!id.is_string()) fail(item_path + ".licenses", "ids are strings");
        std::string license_id = id.get<std::string>();
        if (!known.count(license_id)) {
          fail(item_path + ".licenses", "unknown license '" + license_id + "'");
        }
        adjustment.licenses.insert(license_id);
      }
      if (adjustment.licenses.size() < 2) {
        fail(item_path + ".licenses", "needs at least 2 distinct licenses");
      }
      adjustment.amount = get_money(item, item_path, "amount");
      adjustments.push_back(std::move(adjustment));
    }
  }
  return model::ValuationProfile(bidder_id, std::move(base),
                                 std::move(adjustments));
}

mechanisms::IncrementSchedule parse_increment(const json& node,
                                              const std::string& path) {
  if (!node.is_object()) fail(path, "must be an object");
  std::string mode = get_string(node, path, "mode");
  if (mode == "ABSOLUTE") {
    Money amount = get_money(node, path, "amount");
    if (amount < 1) fail(path + ".amount", "must be at least one minor unit");
    return mechanisms::IncrementSchedule::absolute(amount);
  }
  double fraction = get_number(node, path, "fraction");
  if (fraction <= 0.0 || fraction > 1.0) {
    fail(path + ".fraction", "must lie in (0, 1]");
  }
  if (mode == "PERCENT") return mechanisms::IncrementSchedule::percent(fraction);
  if (mode == "ACTIVITY_SCALED") {
    return mechanisms::IncrementSchedule::activity_scaled(fraction);
  }
  fail(path + ".mode", "unknown increment mode '" + mode + "'");
}

mechanisms::MechanismConfig parse_mechanism(const json& node,
                                            const std::string& path) {
  if (!node.is_object()) fail(path, "must be an object");
  mechanisms::MechanismConfig config;
  try {
    config.kind = mechanisms::mechanism_from_string(
        get_string(node, path, "kind"));
  } catch (const Error& error) {
    fail(path + ".kind", error.what());
  }
  if (node.contains("increment")) {
    config.increment = parse_increment(node.at("increment"), path + ".increment");
  }
  if (node.contains("activity_phases")) {
    const json& phases = node.at("activity_phases");
    if (!phases.is_array() || phases.empty()) {
      fail(path + ".activity_phases", "must be a non-empty array");
    }
    config.activity_phases.clear();
    int last_round = 0;
    for (std::size_t i = 0; i < phases.size(); ++i) {
      std::string phase_path =
          path + ".activity_phases[" + std::to_string(i) + "]";
      const json& phase = phases[i];
      if (!phase.is_object()) fail(phase_path, "must be an object");
      mechanisms::ActivityPhase parsed;
      parsed.from_round = get_int(phase, phase_path, "from_round");
      parsed.required_fraction =
          get_number(phase, phase_path, "required_fraction");
      if (i == 0 && parsed.from_round != 1) {
        fail(phase_path + ".from_round", "first phase must start at round 1");
      }
      if (parsed.from_round <= last_round) {
        fail(phase_path + ".from_round", "phases must be strictly increasing");
      }
      if (parsed.required_fraction <= 0.0 || parsed.required_fraction > 1.0) {
        fail(phase_path + ".required_fraction", "must lie in (0, 1]");
      }
      last_round = parsed.from_round;
      config.activity_phases.push_back(parsed);
    }
  }
  if (node.contains("tsf")) {
    const json& tsf = node.at("tsf");
    if (!tsf.is_object()) fail(path + ".tsf", "must be an object");
    for (const auto& [license_id, threshold] : tsf.items()) {
      if (!threshold.is_number_integer()) {
        fail(path + ".tsf." + license_id, "must be an integer");
      }
      config.tsf[license_id] = threshold.get<int>();
    }
  }
  if (node.contains("ordering")) {
    std::string ordering = get_string(node, path, "ordering");
    if (ordering == "FIXED") {
      config.ordering = mechanisms::OrderingPolicy::FIXED;
    } else if (ordering == "RANDOM_PER_CYCLE") {
      config.ordering = mechanisms::OrderingPolicy::RANDOM_PER_CYCLE;
    } else {
      fail(path + ".ordering", "unknown ordering '" + ordering + "'");
    }
  }
  if (node.contains("fixed_order")) {
    const json& order = node.at("fixed_order");
    if (!order.is_array()) fail(path + ".fixed_order", "must be an array");
    for (const auto& id : order) {
      if (!id.is_string()) fail(path + ".fixed_order", "ids are strings");
      config.fixed_order.push_back(id.get<std::string>());
    }
  }
  if (node.contains("disclosure")) {
    std::string disclosure = get_string(node, path, "disclosure");
    if (disclosure == "BIDS_ONLY") {
      config.disclosure = mechanisms::Disclosure::BIDS_ONLY;
    } else if (disclosure == "BIDS_AND_IDENTITIES") {
      config.disclosure = mechanisms::Disclosure::BIDS_AND_IDENTITIES;
    } else {
      fail(path + ".disclosure", "unknown disclosure '" + disclosure + "'");
    }
  }
  if (node.contains("tie_break_seed")) {
    const json& seed = node.at("tie_break_seed");
    if (!seed.is_number_unsigned()) {
      fail(path + ".tie_break_seed", "must be a non-negative integer");
    }
    config.tie_break_seed = seed.get<std::uint64_t>();
  }
  if (node.contains("round_limit")) {
    config.round_limit = get_int(node, path, "round_limit");
    if (config.round_limit < 1) fail(path + ".round_limit", "must be >= 1");
  }
  return config;
}

strategies::StrategyAssignment parse_assignment(const json& node,
                                                const std::string& path) {
  if (!node.is_object()) fail(path, "must be an object");
  strategies::StrategyAssignment assignment;
  assignment.bidder_id = get_string(node, path, "bidder_id");
  assignment.policy = get_string(node, path, "policy");
  if (node.contains("params")) {
    const json& params = node.at("params");
    if (!params.is_object()) fail(path + ".params", "must be an object");
    for (const auto& [key, value] : params.items()) {
      if (!value.is_number()) fail(path + ".params." + key, "must be a number");
      assignment.params[key] = value.get<double>();
    }
  }
  if (node.contains("bundle")) {
    const json& bundle = node.at("bundle");
    if (!bundle.is_array()) fail(path + ".bundle", "must be an array");
    for (const auto& id : bundle) {
      if (!id.is_string()) fail(path + ".bundle", "ids are strings");
      assignment.bundle.insert(id.get<std::string>());
    }
  }
  if (node.contains("trigger")) {
    assignment.trigger = get_string(node, path, "trigger");
  }
  return assignment;
}

strategies::CartelAgreement parse_cartel(const json& node,
                                         const std::string& path) {
  if (!node.is_object()) fail(path, "must be an object");
  strategies::CartelAgreement cartel;
  const json& members = member(node, path, "members");
  if (!members.is_array() || members.empty()) {
    fail(path + ".members", "must be a non-empty array");
  }
  for (const auto& id : members) {
    if (!id.is_string()) fail(path + ".members", "ids are strings");
    cartel.members.insert(id.get<std::string>());
  }
  const json& designated = member(node, path, "designated_winner");
  if (!designated.is_object()) {
    fail(path + ".designated_winner", "must be an object");
  }
  for (const auto& [license_id, winner] : designated.items()) {
    if (!winner.is_string()) {
      fail(path + ".designated_winner." + license_id, "must be a bidder id");
    }
    cartel.designated_winner[license_id] = winner.get<std::string>();
  }
  if (node.contains("punishment")) {
    std::string punishment = get_string(node, path, "punishment");
    if (punishment == "NONE") {
      cartel.punishment = strategies::CartelAgreement::Punishment::NONE;
    } else if (punishment == "RAISE_ON_DEFECTOR") {
      cartel.punishment =
          strategies::CartelAgreement::Punishment::RAISE_ON_DEFECTOR;
    } else {
      fail(path + ".punishment", "unknown punishment '" + punishment + "'");
    }
  }
  cartel.markup_fraction = number_or(node, path, "markup_fraction", 0.0);
  if (cartel.markup_fraction < 0.0) {
    fail(path + ".markup_fraction", "must be >= 0");
  }
  return cartel;
}

json increment_to_json(const mechanisms::IncrementSchedule& schedule) {
  json node;
  switch (schedule.mode) {
    case mechanisms::IncrementSchedule::Mode::ABSOLUTE:
      node["mode"] = "ABSOLUTE";
      node["amount"] = money_to_decimal(schedule.amount);
      break;
    case mechanisms::IncrementSchedule::Mode::PERCENT:
      node["mode"] = "PERCENT";
      node["fraction"] = schedule.fraction;
      break;
    case mechanisms::IncrementSchedule::Mode::ACTIVITY_SCALED:
      node["mode"] = "ACTIVITY_SCALED";
      node["fraction"] = schedule.fraction;
      break;
  }
  return node;
}

}  // namespace

int Scenario::bidder_index(const model::BidderId& id) const {
  int index = 0;
  for (const auto& [bidder_id, bidder] : bidders) {
    if (bidder_id == id) return index;
    ++index;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown bidder '" + id + "'");
}

bool Scenario::within_oracle_bounds() const {
  return licenses.size() <= model::kOracleMaxLicenses &&
         bidders.size() <= model::kOracleMaxBidders;
}

void validate_scenario(const Scenario& scenario) {
  if (scenario.schema_version != 1) {
    fail("schema_version", "unsupported version " +
                               std::to_string(scenario.schema_version));
  }
  if (scenario.licenses.empty()) fail("licenses", "at least one is required");
  std::set<model::LicenseId> license_ids;
  for (std::size_t i = 0; i < scenario.licenses.size(); ++i) {
    const model::License& license = scenario.licenses[i];
    std::string path = "licenses[" + std::to_string(i) + "]";
    if (license.id.empty()) fail(path + ".id", "must not be empty");
    if (!license_ids.insert(license.id).second) {
      fail(path + ".id", "duplicate license id '" + license.id + "'");
    }
    if (license.bandwidth_mhz <= 0) fail(path + ".bandwidth_mhz", "must be > 0");
    if (license.reserve_price < 0) fail(path + ".reserve_price", "must be >= 0");
    if (license.activity_weight <= 0) {
      fail(path + ".activity_weight", "must be > 0");
    }
  }

  if (scenario.bidders.empty()) fail("bidders", "at least one is required");
  for (const auto& [id, bidder] : scenario.bidders) {
    std::string path = "bidders." + id;
    if (bidder.id != id) fail(path, "bidder key and id disagree");
    if (bidder.budget && *bidder.budget < 0) fail(path + ".budget", "must be >= 0");
    if (bidder.credit_fraction < 0.0 || bidder.credit_fraction >= 1.0) {
      fail(path + ".credit_fraction", "must lie in [0, 1)");
    }
    if (bidder.credit_fraction > 0.0 && !bidder.designated) {
      fail(path + ".credit_fraction",
           "only designated bidders may receive a credit");
    }
    if (bidder.bandwidth_cap_mhz && *bidder.bandwidth_cap_mhz <= 0) {
      fail(path + ".bandwidth_cap_mhz", "must be > 0");
    }
  }

  for (const auto& [id, bidder] : scenario.bidders) {
    if (!scenario.valuations.count(id)) {
      fail("valuations", "missing profile for bidder '" + id + "'");
    }
  }
  for (const auto& [id, profile] : scenario.valuations) {
    std::string path = "valuations." + id;
    if (!scenario.bidders.count(id)) {
      fail(path, "profile for unknown bidder '" + id + "'");
    }
    if (profile.bidder_id() != id) fail(path, "profile key and id disagree");
    for (const auto& [license_id, amount] : profile.base_values()) {
      if (!license_ids.count(license_id)) {
        fail(path + ".base_values." + license_id, "unknown license id");
      }
    }
    for (const auto& license_id : license_ids) {
      if (!profile.base_values().count(license_id)) {
        fail(path + ".base_values", "missing entry for license '" +
                                        license_id + "'");
      }
    }
    for (std::size_t i = 0; i < profile.adjustments().size(); ++i) {
      const model::BundleAdjustment& adjustment = profile.adjustments()[i];
      std::string item_path =
          path + ".bundle_adjustments[" + std::to_string(i) + "]";
      if (adjustment.licenses.size() < 2) {
        fail(item_path + ".licenses", "needs at least 2 distinct licenses");
      }
      for (const auto& license_id : adjustment.licenses) {
        if (!license_ids.count(license_id)) {
          fail(item_path + ".licenses", "unknown license '" + license_id + "'");
        }
      }
    }
  }

  const mechanisms::MechanismConfig& config = scenario.mechanism;
  bool needs_order =
      config.kind == mechanisms::MechanismKind::SEQ_AMR ||
      (config.kind == mechanisms::MechanismKind::HAMR &&
       config.ordering == mechanisms::OrderingPolicy::FIXED);
  if (config.kind == mechanisms::MechanismKind::SEQ_AMR &&
      config.ordering != mechanisms::OrderingPolicy::FIXED) {
    fail("mechanism.ordering", "sequential mechanism requires FIXED ordering");
  }
  if (needs_order) {
    std::set<model::LicenseId> ordered(config.fixed_order.begin(),
                                       config.fixed_order.end());
    if (ordered.size() != config.fixed_order.size() ||
        ordered != license_ids) {
      fail("mechanism.fixed_order",
           "must be a full permutation of the license ids");
    }
  }
  for (const auto& [license_id, threshold] : config.tsf) {
    if (!license_ids.count(license_id)) {
      fail("mechanism.tsf." + license_id, "unknown license id");
    }
    if (threshold < 1) fail("mechanism.tsf." + license_id, "must be >= 1");
  }
  if (config.kind == mechanisms::MechanismKind::HAMR) {
    for (const auto& license_id : license_ids) {
      if (!config.tsf.count(license_id)) {
        fail("mechanism.tsf", "missing threshold for license '" + license_id +
                                  "'");
      }
    }
  }
  if (config.activity_phases.empty()) {
    fail("mechanism.activity_phases", "must not be empty");
  }

  std::set<model::BidderId> assigned;
  for (std::size_t i = 0; i < scenario.assignments.size(); ++i) {
    const strategies::StrategyAssignment& assignment = scenario.assignments[i];
    std::string path = "strategies[" + std::to_string(i) + "]";
    if (!scenario.bidders.count(assignment.bidder_id)) {
      fail(path + ".bidder_id", "unknown bidder '" + assignment.bidder_id + "'");
    }
    if (!assigned.insert(assignment.bidder_id).second) {
      fail(path + ".bidder_id",
           "duplicate assignment for bidder '" + assignment.bidder_id + "'");
    }
    for (const auto& license_id : assignment.bundle) {
      if (!license_ids.count(license_id)) {
        fail(path + ".bundle", "unknown license '" + license_id + "'");
      }
    }
    // Instantiating is the authoritative parameter check.
    strategies::make_strategy(assignment,
                              scenario.bidder_index(assignment.bidder_id),
                              scenario.cartel);
  }
  for (const auto& [id, bidder] : scenario.bidders) {
    if (!assigned.count(id)) {
      fail("strategies", "missing assignment for bidder '" + id + "'");
    }
  }

  if (scenario.cartel) {
    const strategies::CartelAgreement& cartel = *scenario.cartel;
    for (const auto& id : cartel.members) {
      if (!scenario.bidders.count(id)) {
        fail("cartel.members", "unknown bidder '" + id + "'");
      }
    }
    for (const auto& [license_id, winner] : cartel.designated_winner) {
      if (!license_ids.count(license_id)) {
        fail("cartel.designated_winner." + license_id, "unknown license id");
      }
      if (!cartel.is_member(winner)) {
        fail("cartel.designated_winner." + license_id,
             "designated winner '" + winner + "' is not a member");
      }
    }
    if (cartel.markup_fraction < 0.0) {
      fail("cartel.markup_fraction", "must be >= 0");
    }
  }
}

Scenario load_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& error) {
    throw Error(ErrorCode::kParse,
                std::string("scenario is not valid JSON: ") + error.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kParse, "scenario document must be a JSON object");
  }

  Scenario scenario;
  scenario.schema_version = get_int(doc, "", "schema_version");
  scenario.name = doc.contains("name") ? get_string(doc, "", "name") : "";
  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_unsigned()) {
      fail("seed", "must be a non-negative integer");
    }
    scenario.seed = seed.get<std::uint64_t>();
  }

  const json& licenses = member(doc, "", "licenses");
  if (!licenses.is_array()) fail("licenses", "must be an array");
  for (std::size_t i = 0; i < licenses.size(); ++i) {
    scenario.licenses.push_back(
        parse_license(licenses[i], "licenses[" + std::to_string(i) + "]"));
  }

  const json& bidders = member(doc, "", "bidders");
  if (!bidders.is_array()) fail("bidders", "must be an array");
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    model::Bidder bidder =
        parse_bidder(bidders[i], "bidders[" + std::to_string(i) + "]");
    if (scenario.bidders.count(bidder.id)) {
      fail("bidders[" + std::to_string(i) + "].id",
           "duplicate bidder id '" + bidder.id + "'");
    }
    scenario.bidders[bidder.id] = bidder;
  }

  const json& valuations = member(doc, "", "valuations");
  if (!valuations.is_array()) fail("valuations", "must be an array");
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    std::string path = "valuations[" + std::to_string(i) + "]";
    model::ValuationProfile profile =
        parse_valuation(valuations[i], path, scenario.licenses);
    if (scenario.valuations.count(profile.bidder_id())) {
      fail(path + ".bidder_id",
           "duplicate profile for bidder '" + profile.bidder_id() + "'");
    }
    scenario.valuations.emplace(profile.bidder_id(), std::move(profile));
  }

  scenario.mechanism = parse_mechanism(member(doc, "", "mechanism"),
                                       "mechanism");

  if (doc.contains("cartel")) {
    scenario.cartel = parse_cartel(doc.at("cartel"), "cartel");
  }

  const json& assignments = member(doc, "", "strategies");
  if (!assignments.is_array()) fail("strategies", "must be an array");
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    scenario.assignments.push_back(parse_assignment(
        assignments[i], "strategies[" + std::to_string(i) + "]"));
  }
  std::sort(scenario.assignments.begin(), scenario.assignments.end(),
            [](const strategies::StrategyAssignment& a,
               const strategies::StrategyAssignment& b) {
              return a.bidder_id < b.bidder_id;
            });

  validate_scenario(scenario);
  return scenario;
}

std::string save_scenario(const Scenario& scenario) {
  json doc;
  doc["schema_version"] = scenario.schema_version;
  if (!scenario.name.empty()) doc["name"] = scenario.name;
  doc["seed"] = scenario.seed;

  doc["licenses"] = json::array();
  for (const auto& license : scenario.licenses) {
    json node;
    node["id"] = license.id;
    node["bandwidth_mhz"] = license.bandwidth_mhz;
    node["population"] = license.population;
    node["area_km2"] = license.area_km2;
    node["reserve_price"] = money_to_decimal(license.reserve_price);
    node["activity_weight"] = license.activity_weight;
    node["region_id"] = license.region_id;
    doc["licenses"].push_back(node);
  }

  doc["bidders"] = json::array();
  for (const auto& [id, bidder] : scenario.bidders) {
    json node;
    node["id"] = id;
    if (bidder.budget) node["budget"] = money_to_decimal(*bidder.budget);
    node["designated"] = bidder.designated;
    node["credit_fraction"] = bidder.credit_fraction;
    if (bidder.bandwidth_cap_mhz) {
      node["bandwidth_cap_mhz"] = *bidder.bandwidth_cap_mhz;
    }
    doc["bidders"].push_back(node);
  }

  doc["valuations"] = json::array();
  for (const auto& [id, profile] : scenario.valuations) {
    json node;
    node["bidder_id"] = id;
    json values = json::object();
    for (const auto& [license_id, amount] : profile.base_values()) {
      values[license_id] = money_to_decimal(amount);
    }
    node["base_values"] = values;
    if (!profile.adjustments().empty()) {
      json list = json::array();
      for (const auto& adjustment : profile.adjustments()) {
        json item;
        item["licenses"] = json::array();
        for (const auto& license_id : adjustment.licenses) {
          item["licenses"].push_back(license_id);
        }
        item["amount"] = money_to_decimal(adjustment.amount);
        list.push_back(item);
      }
      node["bundle_adjustments"] = list;
    }
    doc["valuations"].push_back(node);
  }

  json mechanism;
  mechanism["kind"] = mechanisms::to_string(scenario.mechanism.kind);
  mechanism["increment"] = increment_to_json(scenario.mechanism.increment);
  mechanism["activity_phases"] = json::array();
  for (const auto& phase : scenario.mechanism.activity_phases) {
    json node;
    node["from_round"] = phase.from_round;
    node["required_fraction"] = phase.required_fraction;
    mechanism["activity_phases"].push_back(node);
  }
  if (!scenario.mechanism.tsf.empty()) {
    json tsf = json::object();
    for (const auto& [license_id, threshold] : scenario.mechanism.tsf) {
      tsf[license_id] = threshold;
    }
    mechanism["tsf"] = tsf;
  }
  mechanism["ordering"] =
      scenario.mechanism.ordering == mechanisms::OrderingPolicy::FIXED
          ? "FIXED"
          : "RANDOM_PER_CYCLE";
  if (!scenario.mechanism.fixed_order.empty()) {
    mechanism["fixed_order"] = scenario.mechanism.fixed_order;
  }
  mechanism["disclosure"] =
      scenario.mechanism.disclosure == mechanisms::Disclosure::BIDS_ONLY
          ? "BIDS_ONLY"
          : "BIDS_AND_IDENTITIES";
  if (scenario.mechanism.tie_break_seed) {
    mechanism["tie_break_seed"] = *scenario.mechanism.tie_break_seed;
  }
  mechanism["round_limit"] = scenario.mechanism.round_limit;
  doc["mechanism"] = mechanism;

  doc["strategies"] = json::array();
  for (const auto& assignment : scenario.assignments) {
    json node;
    node["bidder_id"] = assignment.bidder_id;
    node["policy"] = assignment.policy;
    if (!assignment.params.empty()) {
      json params = json::object();
      for (const auto& [key, value] : assignment.params) params[key] = value;
      node["params"] = params;
    }
    if (!assignment.bundle.empty()) {
      json bundle = json::array();
      for (const auto& license_id : assignment.bundle) {
        bundle.push_back(license_id);
      }
      node["bundle"] = bundle;
    }
    if (assignment.policy == "CartelDefector") {
      node["trigger"] = assignment.trigger;
    }
    doc["strategies"].push_back(node);
  }

  if (scenario.cartel) {
    json cartel;
    cartel["members"] = json::array();
    for (const auto& id : scenario.cartel->members) {
      cartel["members"].push_back(id);
    }
    json designated = json::object();
    for (const auto& [license_id, winner] :
         scenario.cartel->designated_winner) {
      designated[license_id] = winner;
    }
    cartel["designated_winner"] = designated;
    cartel["punishment"] =
        scenario.cartel->punishment ==
                strategies::CartelAgreement::Punishment::RAISE_ON_DEFECTOR
            ? "RAISE_ON_DEFECTOR"
            : "NONE";
    cartel["markup_fraction"] = scenario.cartel->markup_fraction;
    doc["cartel"] = cartel;
  }

  return doc.dump(2) + "\n";
}

}  // namespace spectra::scenarios
