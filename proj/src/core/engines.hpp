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
#include <vector>

#include "core/bidding.hpp"
#include "core/mechanism_config.hpp"
#include "core/model.hpp"

namespace spectra::mechanisms {

// Everything an engine needs to run one auction. Valuations are carried for
// the agents' private contexts; engines never read them for allocation or
// pricing decisions.
struct AuctionSetup {
  std::vector<model::License> licenses;
  std::map<model::BidderId, model::Bidder> bidders;
  std::map<model::BidderId, model::ValuationProfile> valuations;
  MechanismConfig config;
  std::uint64_t seed = 0;

  std::uint64_t effective_seed() const {
    return config.tie_break_seed ? *config.tie_break_seed : seed;
  }
};

using AgentMap = std::map<model::BidderId, strategies::Strategy*>;

// Sealed-bid mechanisms. Bids below reserve are dropped; duplicate
// (bidder, license) pairs are an input error. Budgets and bandwidth caps
// are settled license by license in descending order of the top bid: a
// winner who cannot cover the payment forfeits to the next-highest bid.
model::AuctionOutcome run_fpsb(const AuctionSetup& setup,
                               const std::vector<model::Bid>& sealed_bids);
model::AuctionOutcome run_vickrey(const AuctionSetup& setup,
                                  const std::vector<model::Bid>& sealed_bids);

// Ascending multi-round mechanisms. All solicited agents decide
// simultaneously against the previous round's state; equal top bids form a
// joint standing set whose tie is resolved by the seeded tie-break only at
// award time.
model::AuctionOutcome run_sequential_amr(const AuctionSetup& setup,
                                         const AgentMap& agents);
model::AuctionOutcome run_samr(const AuctionSetup& setup,
                               const AgentMap& agents);
model::AuctionOutcome run_hamr(const AuctionSetup& setup,
                               const AgentMap& agents);

}  // namespace spectra::mechanisms
