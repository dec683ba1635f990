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

#include <string>
#include <vector>

#include "core/runner.hpp"
#include "core/scenario.hpp"

namespace spectra::deviation {

struct DeviationTrial {
  strategies::StrategyAssignment alternative;
  Money utility = 0;
  Money gain = 0;
  // What the deviator won and paid, for human-readable witnesses.
  std::string summary;
};

struct DeviationReport {
  model::BidderId bidder;
  Money baseline_utility = 0;
  Money max_gain = 0;
  std::vector<DeviationTrial> trials;
};

// Reruns the scenario with `deviator` swapped onto each alternative policy
// (all else fixed, same seed) and reports utility changes against the
// baseline profile. Gains are certified only relative to the supplied
// alternative set.
DeviationReport unilateral_deviation_gain(
    const scenarios::Scenario& scenario, const model::BidderId& deviator,
    const std::vector<strategies::StrategyAssignment>& alternatives);

struct CollusionReport {
  // BREAKS when any cartel member gains strictly by deviating.
  bool breaks = false;
  std::string verdict;
  // The policies each member was tried on; the verdict only speaks
  // relative to this set.
  std::vector<std::string> alternatives_tried;
  std::vector<DeviationReport> members;
  // Concrete defection narrative for a BREAKS verdict.
  std::string witness;
};

// Checks the scenario's cartel agreement: every member is tried on the
// declared deviation set (abandoning the cartel once its own designated
// license closes, and outright straightforward bidding). A single-member
// cartel is degenerately sustainable.
CollusionReport collusion_viability(const scenarios::Scenario& scenario);

}  // namespace spectra::deviation
