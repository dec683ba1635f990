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

#include <map>
#include <string>
#include <vector>

#include "core/scenario.hpp"

namespace spectra::scenarios {

// Names of the built-in scenarios, in catalog order.
const std::vector<std::string>& catalog_names();

// Builds a fully validated built-in scenario. Each scenario accepts a small
// set of numeric parameters (money in major units):
//   two_slot_complements   pair_value (default 300)
//   threshold_problem      (none)
//   increment_demo         inc (default 1)
//   demand_reduction_pair  straightforward (0 or 1, default 0)
//   vickrey_gap            nz (0 or 1, default 0)
//   claim1_collusion       tsf (default 2)
//   five_license_entrant   licenses (default 5)
// Unknown names raise kUnknownScenario; unknown or out-of-range parameters
// raise kValidation.
Scenario build_scenario(const std::string& name,
                        const std::map<std::string, double>& params = {});

}  // namespace spectra::scenarios
