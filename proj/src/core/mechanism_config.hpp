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

#include "core/error.hpp"
#include "core/model.hpp"

namespace spectra::mechanisms {

enum class MechanismKind { FPSB, VICKREY, SEQ_AMR, SAMR, HAMR };

std::string to_string(MechanismKind kind);
MechanismKind mechanism_from_string(const std::string& name);

// Minimum-raise rule. ABSOLUTE adds a flat amount; PERCENT a fraction of
// the standing high bid; ACTIVITY_SCALED additionally multiplies by the
// previous round's new-bid count on the license (clamped to [1,4]) so hot
// licenses climb faster.
struct IncrementSchedule {
  enum class Mode { ABSOLUTE, PERCENT, ACTIVITY_SCALED };
  Mode mode = Mode::ABSOLUTE;
  Money amount = 0;          // ABSOLUTE
  double fraction = 0.0;     // PERCENT / ACTIVITY_SCALED base fraction

  static IncrementSchedule absolute(Money amount);
  static IncrementSchedule percent(double fraction);
  static IncrementSchedule activity_scaled(double base_fraction);
};

// A phase of the activity rule: from `from_round` (1-based, inclusive)
// onward, bidders must be active on at least `required_fraction` of their
// eligibility. The classic ramp is 33% / 67% / 100%.
struct ActivityPhase {
  int from_round = 1;
  double required_fraction = 1.0;
};

enum class OrderingPolicy { FIXED, RANDOM_PER_CYCLE };
enum class Disclosure { BIDS_ONLY, BIDS_AND_IDENTITIES };

struct MechanismConfig {
  MechanismKind kind = MechanismKind::FPSB;
  IncrementSchedule increment = IncrementSchedule::absolute(100);
  std::vector<ActivityPhase> activity_phases = {{1, 1.0}};
  // Target saturation factor per license (hybrid mechanism). A license
  // closes at its own visit once its SF reaches this threshold.
  std::map<model::LicenseId, int> tsf;
  OrderingPolicy ordering = OrderingPolicy::FIXED;
  // Visit order for FIXED ordering; must be a full permutation of the
  // scenario's license ids for the sequential and hybrid mechanisms.
  std::vector<model::LicenseId> fixed_order;
  Disclosure disclosure = Disclosure::BIDS_ONLY;
  // Overrides the scenario seed for tie-breaks and cycle shuffles.
  std::optional<std::uint64_t> tie_break_seed;
  // Safety valve against non-terminating agent loops.
  long round_limit = 1'000'000;

  double required_fraction_for_round(int round_index) const;
};

// Smallest valid raise over `standing` for the license, given last round's
// new-bid count. Fractional increments round up to the next minor unit and
// are never below one minor unit.
Money compute_min_increment(const IncrementSchedule& schedule, Money standing,
                            int previous_new_bid_count);

// Seeded deterministic tie-break. Candidates are considered as a sorted
// set; the draw is keyed by (seed, license, round) so it is independent of
// any other randomness in the run.
model::BidderId resolve_tie(std::vector<model::BidderId> candidates,
                            const model::LicenseId& license_id,
                            int round_index, std::uint64_t seed);

}  // namespace spectra::mechanisms
