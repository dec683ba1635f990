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
#include <optional>

#include "core/mechanism_config.hpp"
#include "core/model.hpp"
#include "core/scenario.hpp"

namespace spectra::metrics {

struct MetricsReport {
  // Sum of gross clearing prices over sold licenses.
  Money revenue = 0;
  // Sum over bidders of their valuation of the bundle they won.
  Money welfare_achieved = 0;
  // Cap-constrained optimum from the welfare oracle; absent when the
  // instance exceeds the oracle bounds (efficiency is then unavailable).
  std::optional<Money> welfare_optimal;
  std::optional<double> efficiency;
  int rounds = 0;
  int unsold_count = 0;
  // Sealed mechanisms only: sum over sold licenses of the winning bid minus
  // the price-setting alternative (second valid bid or reserve). Large gaps
  // flag winner's-curse exposure.
  std::optional<Money> winners_curse_gap;
};

MetricsReport score(const scenarios::Scenario& scenario,
                    const model::AuctionOutcome& outcome);

// Utility a bidder realized in an outcome: bundle value of its winnings
// minus its credit-adjusted payments.
Money realized_utility(const scenarios::Scenario& scenario,
                       const model::BidderId& bidder,
                       const model::AuctionOutcome& outcome);

struct MonteCarloResult {
  // Revenue statistics normalized to the value scale, so a Uniform[0,1]
  // closed form compares directly.
  double mean = 0.0;
  double std_error = 0.0;
  int n_draws = 0;
};

// Single-license sealed-bid revenue study: per draw, `n_bidders` IID values
// uniform on [0, scale] in minor units, run through the real engine.
// `shading` applies a ShadedSealed factor (FPSB equilibrium shading is
// (n-1)/n); pass 1.0 for truthful Vickrey. Bit-exact for a fixed seed.
MonteCarloResult monte_carlo_revenue(mechanisms::MechanismKind kind,
                                     int n_bidders, int n_draws,
                                     std::uint64_t seed, double shading,
                                     Money scale = 1'000'000);

}  // namespace spectra::metrics
