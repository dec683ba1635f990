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

#include "core/runner.hpp"

#include <memory>
#include <set>
#include <vector>

#include "core/engines.hpp"
#include "core/error.hpp"

namespace spectra::runner {
namespace {

bool is_full_order(const std::vector<model::LicenseId>& order,
                   const std::vector<model::License>& licenses) {
  std::set<model::LicenseId> ordered(order.begin(), order.end());
  if (ordered.size() != order.size() || ordered.size() != licenses.size()) {
    return false;
  }
  for (const auto& license : licenses) {
    if (!ordered.count(license.id)) return false;
  }
  return true;
}

std::vector<model::Bid> collect_sealed_bids(
    const scenarios::Scenario& scenario,
    const std::vector<std::pair<model::BidderId, strategies::Strategy*>>&
        agents) {
  strategies::PublicView view;
  view.kind = scenario.mechanism.kind;
  view.round_index = 1;
  double total_weight = 0.0;
  for (const auto& license : scenario.licenses) {
    strategies::LicenseView open;
    open.id = license.id;
    open.reserve = license.reserve_price;
    open.activity_weight = license.activity_weight;
    open.bandwidth_mhz = license.bandwidth_mhz;
    open.region_id = license.region_id;
    open.min_next_bid = license.reserve_price;
    view.open_licenses.push_back(open);
    total_weight += license.activity_weight;
  }
  view.eligibility = total_weight;
  view.required_activity_fraction =
      scenario.mechanism.required_fraction_for_round(1);

  std::vector<model::Bid> bids;
  for (const auto& [bidder_id, agent] : agents) {
    strategies::PrivateContext context;
    context.bidder = &scenario.bidders.at(bidder_id);
    context.profile = &scenario.valuations.at(bidder_id);
    context.remaining_budget = context.bidder->budget;
    for (const auto& [license_id, amount] : agent->sealed_bids(view, context)) {
      bids.push_back({bidder_id, license_id, amount, 1, 0});
    }
  }
  return bids;
}

}  // namespace

scenarios::Scenario apply_overrides(const scenarios::Scenario& scenario,
                                    const RunOverrides& overrides) {
  scenarios::Scenario effective = scenario;
  if (overrides.mechanism) effective.mechanism.kind = *overrides.mechanism;
  if (overrides.seed) effective.seed = *overrides.seed;
  if (overrides.increment) {
    if (*overrides.increment < 1) {
      throw Error(ErrorCode::kValidation,
                  "increment override must be at least one minor unit");
    }
    effective.mechanism.increment =
        mechanisms::IncrementSchedule::absolute(*overrides.increment);
  }
  if (overrides.tsf) {
    if (*overrides.tsf < 1) {
      throw Error(ErrorCode::kValidation, "tsf override must be >= 1");
    }
    for (const auto& license : effective.licenses) {
      effective.mechanism.tsf[license.id] = *overrides.tsf;
    }
  }
  if (overrides.activity_fraction) {
    if (*overrides.activity_fraction <= 0.0 ||
        *overrides.activity_fraction > 1.0) {
      throw Error(ErrorCode::kValidation,
                  "activity override must lie in (0, 1]");
    }
    effective.mechanism.activity_phases = {{1, *overrides.activity_fraction}};
  }
  if (overrides.credit_fraction) {
    if (*overrides.credit_fraction < 0.0 || *overrides.credit_fraction >= 1.0) {
      throw Error(ErrorCode::kValidation,
                  "credit override must lie in [0, 1)");
    }
    for (auto& [bidder_id, bidder] : effective.bidders) {
      if (bidder.designated) bidder.credit_fraction = *overrides.credit_fraction;
    }
  }

  bool needs_order =
      effective.mechanism.kind == mechanisms::MechanismKind::SEQ_AMR ||
      (effective.mechanism.kind == mechanisms::MechanismKind::HAMR &&
       effective.mechanism.ordering == mechanisms::OrderingPolicy::FIXED);
  if (needs_order &&
      !is_full_order(effective.mechanism.fixed_order, effective.licenses)) {
    effective.mechanism.fixed_order.clear();
    for (const auto& license : effective.licenses) {
      effective.mechanism.fixed_order.push_back(license.id);
    }
  }
  if (effective.mechanism.kind == mechanisms::MechanismKind::SEQ_AMR) {
    effective.mechanism.ordering = mechanisms::OrderingPolicy::FIXED;
  }
  if (effective.mechanism.kind == mechanisms::MechanismKind::HAMR) {
    for (const auto& license : effective.licenses) {
      if (!effective.mechanism.tsf.count(license.id)) {
        effective.mechanism.tsf[license.id] =
            overrides.tsf ? *overrides.tsf : 1;
      }
    }
  }

  scenarios::validate_scenario(effective);
  return effective;
}

model::AuctionOutcome run_auction(const scenarios::Scenario& scenario) {
  mechanisms::AuctionSetup setup;
  setup.licenses = scenario.licenses;
  setup.bidders = scenario.bidders;
  setup.valuations = scenario.valuations;
  setup.config = scenario.mechanism;
  setup.seed = scenario.seed;

  std::vector<std::unique_ptr<strategies::Strategy>> owned;
  std::vector<std::pair<model::BidderId, strategies::Strategy*>> agents;
  mechanisms::AgentMap agent_map;
  for (const auto& assignment : scenario.assignments) {
    owned.push_back(strategies::make_strategy(
        assignment, scenario.bidder_index(assignment.bidder_id),
        scenario.cartel));
    agents.emplace_back(assignment.bidder_id, owned.back().get());
    agent_map[assignment.bidder_id] = owned.back().get();
  }

  switch (scenario.mechanism.kind) {
    case mechanisms::MechanismKind::FPSB:
      return mechanisms::run_fpsb(setup, collect_sealed_bids(scenario, agents));
    case mechanisms::MechanismKind::VICKREY:
      return mechanisms::run_vickrey(setup,
                                     collect_sealed_bids(scenario, agents));
    case mechanisms::MechanismKind::SEQ_AMR:
      return mechanisms::run_sequential_amr(setup, agent_map);
    case mechanisms::MechanismKind::SAMR:
      return mechanisms::run_samr(setup, agent_map);
    case mechanisms::MechanismKind::HAMR:
      return mechanisms::run_hamr(setup, agent_map);
  }
  throw Error(ErrorCode::kInvalidArgument, "unhandled mechanism kind");
}

RunResult run(const scenarios::Scenario& scenario,
              const RunOverrides& overrides) {
  RunResult result;
  result.effective = apply_overrides(scenario, overrides);
  result.outcome = run_auction(result.effective);
  result.metrics = metrics::score(result.effective, result.outcome);
  return result;
}

}  // namespace spectra::runner
