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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/cartel.hpp"
#include "core/mechanism_config.hpp"
#include "core/model.hpp"
#include "core/strategies.hpp"

namespace spectra::scenarios {

// A complete, self-contained experiment description: the market (licenses,
// bidders, valuations), the mechanism configuration, and who plays which
// policy. Serializes to the versioned JSON schema documented in the README;
// all monetary JSON fields are decimal major units.
struct Scenario {
  int schema_version = 1;
  std::string name;
  std::uint64_t seed = 0;
  std::vector<model::License> licenses;
  std::map<model::BidderId, model::Bidder> bidders;
  std::map<model::BidderId, model::ValuationProfile> valuations;
  mechanisms::MechanismConfig mechanism;
  std::vector<strategies::StrategyAssignment> assignments;
  std::optional<strategies::CartelAgreement> cartel;

  // Position of the bidder among the scenario's sorted bidder ids; feeds
  // the policies' deterministic symmetry breaking.
  int bidder_index(const model::BidderId& id) const;

  // Whether the welfare oracle can run on this instance. Loading does not
  // fail beyond the bounds; the efficiency metric reports unavailable.
  bool within_oracle_bounds() const;
};

// Parses and validates a scenario document. Syntax problems raise kParse;
// rule violations raise kValidation with the offending field path.
Scenario load_scenario(const std::string& json_text);

std::string save_scenario(const Scenario& scenario);

// Full rule check used by both the loader and the catalog builders:
// referential integrity, unique ids, value ranges, mechanism completeness
// (full fixed order for sequential/hybrid, TSF >= 1 per license for
// hybrid), one policy assignment per bidder, cartel consistency.
void validate_scenario(const Scenario& scenario);

}  // namespace spectra::scenarios
