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

#include "core/mechanism_config.hpp"

#include <algorithm>
#include <cmath>

#include "core/rng.hpp"

namespace spectra::mechanisms {

std::string to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::FPSB: return "FPSB";
    case MechanismKind::VICKREY: return "VICKREY";
    case MechanismKind::SEQ_AMR: return "SEQ_AMR";
    case MechanismKind::SAMR: return "SAMR";
    case MechanismKind::HAMR: return "HAMR";
  }
  return "UNKNOWN";
}

MechanismKind mechanism_from_string(const std::string& name) {
  if (name == "FPSB") return MechanismKind::FPSB;
  if (name == "VICKREY") return MechanismKind::VICKREY;
  if (name == "SEQ_AMR") return MechanismKind::SEQ_AMR;
  if (name == "SAMR") return MechanismKind::SAMR;
  if (name == "HAMR") return MechanismKind::HAMR;
  throw Error(ErrorCode::kValidation, "unknown mechanism '" + name + "'");
}

IncrementSchedule IncrementSchedule::absolute(Money amount) {
  IncrementSchedule schedule;
  schedule.mode = Mode::ABSOLUTE;
  schedule.amount = amount;
  return schedule;
}

IncrementSchedule IncrementSchedule::percent(double fraction) {
  IncrementSchedule schedule;
  schedule.mode = Mode::PERCENT;
  schedule.fraction = fraction;
  return schedule;
}

IncrementSchedule IncrementSchedule::activity_scaled(double base_fraction) {
  IncrementSchedule schedule;
  schedule.mode = Mode::ACTIVITY_SCALED;
  schedule.fraction = base_fraction;
  return schedule;
}

double MechanismConfig::required_fraction_for_round(int round_index) const {
  double fraction = activity_phases.empty() ? 1.0
                                            : activity_phases.front().required_fraction;
  for (const auto& phase : activity_phases) {
    if (phase.from_round <= round_index) fraction = phase.required_fraction;
  }
  return fraction;
}

Money compute_min_increment(const IncrementSchedule& schedule, Money standing,
                            int previous_new_bid_count) {
  switch (schedule.mode) {
    case IncrementSchedule::Mode::ABSOLUTE:
      return std::max<Money>(schedule.amount, 1);
    case IncrementSchedule::Mode::PERCENT: {
      double raw = schedule.fraction * static_cast<double>(standing);
      return std::max<Money>(static_cast<Money>(std::ceil(raw - 1e-9)), 1);
    }
    case IncrementSchedule::Mode::ACTIVITY_SCALED: {
      int clamped = std::clamp(previous_new_bid_count, 1, 4);
      double raw =
          schedule.fraction * static_cast<double>(standing) * clamped;
      return std::max<Money>(static_cast<Money>(std::ceil(raw - 1e-9)), 1);
    }
  }
  return 1;
}

model::BidderId resolve_tie(std::vector<model::BidderId> candidates,
                            const model::LicenseId& license_id,
                            int round_index, std::uint64_t seed) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kEngine, "tie-break requires at least one candidate");
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  if (candidates.size() == 1) return candidates.front();
  RandomStream stream(seed, "tie:" + license_id,
                      static_cast<std::uint64_t>(round_index));
  return candidates[stream.next_index(candidates.size())];
}

}  // namespace spectra::mechanisms
