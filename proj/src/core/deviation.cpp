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

#include "core/deviation.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace spectra::deviation {
namespace {

std::string describe_winnings(const scenarios::Scenario& scenario,
                              const model::BidderId& bidder,
                              const model::AuctionOutcome& outcome) {
  std::string text;
  for (const auto& license_id : outcome.licenses_won_by(bidder)) {
    if (!text.empty()) text += ", ";
    text += license_id + " at " +
            format_money(outcome.gross_prices.at(license_id));
  }
  if (text.empty()) text = "nothing";
  Money utility = metrics::realized_utility(scenario, bidder, outcome);
  return "wins " + text + "; utility " + format_money(utility);
}

scenarios::Scenario with_policy(const scenarios::Scenario& scenario,
                                const model::BidderId& bidder,
                                const strategies::StrategyAssignment& policy) {
  scenarios::Scenario variant = scenario;
  for (auto& assignment : variant.assignments) {
    if (assignment.bidder_id == bidder) {
      assignment = policy;
      assignment.bidder_id = bidder;
      return variant;
    }
  }
  throw Error(ErrorCode::kInvalidArgument,
              "bidder '" + bidder + "' has no assignment to replace");
}

}  // namespace

DeviationReport unilateral_deviation_gain(
    const scenarios::Scenario& scenario, const model::BidderId& deviator,
    const std::vector<strategies::StrategyAssignment>& alternatives) {
  if (!scenario.bidders.count(deviator)) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown deviator '" + deviator + "'");
  }

  DeviationReport report;
  report.bidder = deviator;
  model::AuctionOutcome baseline = runner::run_auction(scenario);
  report.baseline_utility =
      metrics::realized_utility(scenario, deviator, baseline);

  for (const auto& alternative : alternatives) {
    scenarios::Scenario variant = with_policy(scenario, deviator, alternative);
    scenarios::validate_scenario(variant);
    model::AuctionOutcome outcome = runner::run_auction(variant);

    DeviationTrial trial;
    trial.alternative = alternative;
    trial.alternative.bidder_id = deviator;
    trial.utility = metrics::realized_utility(variant, deviator, outcome);
    trial.gain = trial.utility - report.baseline_utility;
    trial.summary = describe_winnings(variant, deviator, outcome);
    report.max_gain = std::max(report.max_gain, trial.gain);
    report.trials.push_back(std::move(trial));
  }
  return report;
}

CollusionReport collusion_viability(const scenarios::Scenario& scenario) {
  if (!scenario.cartel) {
    throw Error(ErrorCode::kInvalidArgument,
                "scenario declares no cartel agreement");
  }

  strategies::StrategyAssignment defect;
  defect.policy = "CartelDefector";
  defect.trigger = "OWN_DESIGNATED_CLOSED";
  strategies::StrategyAssignment sincere;
  sincere.policy = "StraightforwardAscending";
  std::vector<strategies::StrategyAssignment> alternatives = {defect, sincere};

  CollusionReport report;
  for (const auto& alternative : alternatives) {
    report.alternatives_tried.push_back(alternative.policy);
  }

  Money best_gain = 0;
  const DeviationTrial* best_trial = nullptr;
  const DeviationReport* best_member = nullptr;
  report.members.reserve(scenario.cartel->members.size());
  for (const auto& member : scenario.cartel->members) {
    report.members.push_back(
        unilateral_deviation_gain(scenario, member, alternatives));
    const DeviationReport& last = report.members.back();
    for (const auto& trial : last.trials) {
      if (trial.gain > best_gain) {
        best_gain = trial.gain;
        best_trial = &trial;
        best_member = &last;
      }
    }
  }

  report.breaks = best_gain > 0;
  report.verdict = report.breaks ? "BREAKS" : "SUSTAINABLE";
  if (best_trial != nullptr) {
    report.witness = "member " + best_member->bidder + " deviates to " +
                     best_trial->alternative.policy + ": " +
                     best_trial->summary + " (baseline utility " +
                     format_money(best_member->baseline_utility) +
                     ", gain " + format_money(best_trial->gain) + ")";
  }
  return report;
}

}  // namespace spectra::deviation
