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

#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/engines.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace spectra::metrics {

Money realized_utility(const scenarios::Scenario& scenario,
                       const model::BidderId& bidder,
                       const model::AuctionOutcome& outcome) {
  auto profile = scenario.valuations.find(bidder);
  if (profile == scenario.valuations.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no valuation profile for bidder '" + bidder + "'");
  }
  Money value = profile->second.value(outcome.licenses_won_by(bidder));
  Money paid = 0;
  auto payment = outcome.payments.find(bidder);
  if (payment != outcome.payments.end()) paid = payment->second;
  return value - paid;
}

MetricsReport score(const scenarios::Scenario& scenario,
                    const model::AuctionOutcome& outcome) {
  MetricsReport report;
  report.rounds = outcome.rounds_elapsed;

  for (const auto& [license_id, price] : outcome.gross_prices) {
    report.revenue += price;
  }
  for (const auto& [license_id, winner] : outcome.allocation) {
    if (!winner) ++report.unsold_count;
  }
  for (const auto& [bidder_id, profile] : scenario.valuations) {
    report.welfare_achieved +=
        profile.value(outcome.licenses_won_by(bidder_id));
  }

  if (scenario.within_oracle_bounds()) {
    std::vector<model::ValuationProfile> profiles;
    for (const auto& [bidder_id, profile] : scenario.valuations) {
      profiles.push_back(profile);
    }
    model::AllocationResult best = model::optimal_allocation(
        scenario.licenses, profiles, scenario.bidders);
    report.welfare_optimal = best.welfare;
    if (best.welfare > 0) {
      double ratio = static_cast<double>(report.welfare_achieved) /
                     static_cast<double>(best.welfare);
      report.efficiency = std::clamp(ratio, 0.0, 1.0);
    } else {
      report.efficiency = report.welfare_achieved == 0 ? 1.0 : 0.0;
    }
  }

  if (!outcome.sealed_bids.empty()) {
    Money gap = 0;
    for (const auto& [license_id, winner] : outcome.allocation) {
      if (!winner) continue;
      auto book = outcome.sealed_bids.find(license_id);
      if (book == outcome.sealed_bids.end()) continue;
      Money top = 0;
      Money second = 0;
      for (const auto& [bidder_id, amount] : book->second) {
        if (amount >= top) {
          second = top;
          top = amount;
        } else if (amount > second) {
          second = amount;
        }
      }
      Money reserve = 0;
      for (const auto& license : scenario.licenses) {
        if (license.id == license_id) reserve = license.reserve_price;
      }
      gap += top - std::max(second, reserve);
    }
    report.winners_curse_gap = gap;
  }
  return report;
}

MonteCarloResult monte_carlo_revenue(mechanisms::MechanismKind kind,
                                     int n_bidders, int n_draws,
                                     std::uint64_t seed, double shading,
                                     Money scale) {
  if (kind != mechanisms::MechanismKind::FPSB &&
      kind != mechanisms::MechanismKind::VICKREY) {
    throw Error(ErrorCode::kInvalidArgument,
                "revenue study supports sealed mechanisms only");
  }
  if (n_bidders < 1 || n_draws < 1 || scale < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "revenue study needs positive bidders, draws, and scale");
  }

  mechanisms::AuctionSetup setup;
  model::License license;
  license.id = "item";
  license.bandwidth_mhz = 1.0;
  license.reserve_price = 0;
  setup.licenses.push_back(license);
  setup.config.kind = kind;

  std::vector<model::BidderId> ids;
  for (int b = 0; b < n_bidders; ++b) {
    model::BidderId id = "b" + std::to_string(b);
    model::Bidder bidder;
    bidder.id = id;
    setup.bidders[id] = bidder;
    ids.push_back(id);
  }

  std::vector<double> revenues;
  revenues.reserve(static_cast<std::size_t>(n_draws));
  for (int draw = 0; draw < n_draws; ++draw) {
    setup.seed = seed;
    std::vector<model::Bid> bids;
    for (int b = 0; b < n_bidders; ++b) {
      RandomStream stream(seed, "mc-value/" + std::to_string(b),
                          static_cast<std::uint64_t>(draw));
      Money value = static_cast<Money>(
          stream.next_index(static_cast<std::size_t>(scale) + 1));
      Money amount =
          shading == 1.0
              ? value
              : round_half_up(shading * static_cast<double>(value));
      bids.push_back({ids[static_cast<std::size_t>(b)], "item", amount, 1, 0});
    }
    model::AuctionOutcome outcome =
        kind == mechanisms::MechanismKind::FPSB
            ? mechanisms::run_fpsb(setup, bids)
            : mechanisms::run_vickrey(setup, bids);
    Money revenue = 0;
    for (const auto& [license_id, price] : outcome.gross_prices) {
      revenue += price;
    }
    revenues.push_back(static_cast<double>(revenue) /
                       static_cast<double>(scale));
  }

  MonteCarloResult result;
  result.n_draws = n_draws;
  double sum = 0.0;
  for (double value : revenues) sum += value;
  result.mean = sum / static_cast<double>(n_draws);
  if (n_draws > 1) {
    double squares = 0.0;
    for (double value : revenues) {
      double diff = value - result.mean;
      squares += diff * diff;
    }
    double variance = squares / static_cast<double>(n_draws - 1);
    result.std_error =
        std::sqrt(variance / static_cast<double>(n_draws));
  }
  return result;
}

}  // namespace spectra::metrics
