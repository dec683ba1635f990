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

#include <optional>

#include "core/metrics.hpp"
#include "core/scenario.hpp"

namespace spectra::runner {

// Experiment-level knobs applied on top of a scenario before running.
// Money in minor units; `tsf` applies to all licenses; `activity_fraction`
// replaces the phase schedule with a single flat requirement;
// `credit_fraction` applies to every designated bidder.
struct RunOverrides {
  std::optional<mechanisms::MechanismKind> mechanism;
  std::optional<std::uint64_t> seed;
  std::optional<Money> increment;
  std::optional<int> tsf;
  std::optional<double> activity_fraction;
  std::optional<double> credit_fraction;
};

struct RunResult {
  scenarios::Scenario effective;
  model::AuctionOutcome outcome;
  metrics::MetricsReport metrics;
};

// Returns a copy of the scenario with the overrides folded in and
// revalidated. When a mechanism override needs configuration the scenario
// never carried, sensible defaults complete it: a missing visit order
// becomes the license declaration order, and missing hybrid thresholds
// become the TSF override (or 1).
scenarios::Scenario apply_overrides(const scenarios::Scenario& scenario,
                                    const RunOverrides& overrides);

// Instantiates agents per the scenario's assignments and dispatches to the
// configured mechanism. Sealed mechanisms solicit one sealed offer per
// agent; multi-round mechanisms hand agents to the round loop.
model::AuctionOutcome run_auction(const scenarios::Scenario& scenario);

RunResult run(const scenarios::Scenario& scenario,
              const RunOverrides& overrides = {});

}  // namespace spectra::runner
