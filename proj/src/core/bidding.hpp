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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/mechanism_config.hpp"
#include "core/model.hpp"

namespace spectra::strategies {

// What an agent is shown about one license in the current round. Identity
// fields honor the mechanism's disclosure policy; a bidder always knows its
// own standing status.
struct LicenseView {
  model::LicenseId id;
  Money reserve = 0;
  double activity_weight = 1.0;
  double bandwidth_mhz = 0.0;
  std::string region_id;

  bool has_standing = false;
  Money standing_bid = 0;
  // Populated only under BIDS_AND_IDENTITIES disclosure.
  std::vector<model::BidderId> standing_bidders;
  bool self_standing = false;
  bool self_sole_standing = false;

  Money min_next_bid = 0;
  int sf = 0;
  int tsf = 0;
};

struct ClosedLicenseView {
  model::LicenseId id;
  std::optional<model::BidderId> winner;  // award results are public
  Money price = 0;
};

// The round state disclosed to agents. Never contains another bidder's
// valuation or budget.
struct PublicView {
  mechanisms::MechanismKind kind = mechanisms::MechanismKind::SAMR;
  int round_index = 1;
  int cycle_index = 0;
  // When set, only this license accepts bids in the current solicitation
  // (sequential rounds and hybrid visits).
  std::optional<model::LicenseId> biddable;
  std::vector<LicenseView> open_licenses;
  std::vector<ClosedLicenseView> closed_licenses;
  double eligibility = 0.0;
  double required_activity_fraction = 1.0;

  const LicenseView* find_open(const model::LicenseId& id) const {
    for (const auto& license : open_licenses) {
      if (license.id == id) return &license;
    }
    return nullptr;
  }
};

// Private per-agent context supplied by the engine alongside the view.
struct PrivateContext {
  const model::Bidder* bidder = nullptr;
  const model::ValuationProfile* profile = nullptr;
  // Licenses already won (closed in this bidder's favor).
  std::set<model::LicenseId> holdings;
  // Credit-adjusted budget still uncommitted (standing exposure and closed
  // payments deducted); empty when the bidder has no budget.
  std::optional<Money> remaining_budget;
  // Bandwidth provisionally held per region (standing plus won), for cap
  // accounting.
  std::map<std::string, double> region_bandwidth_held;
};

struct BidIntent {
  model::LicenseId license_id;
  Money amount = 0;
};

// Ordering interface between engines and bidding policies. Policies are
// memoryful within a run (observe() feeds them each completed round) and
// are constructed fresh for every run.
class Strategy {
 public:
  virtual ~Strategy() = default;

  // One-shot sealed offer per license, for FPSB and Vickrey runs.
  virtual std::map<model::LicenseId, Money> sealed_bids(
      const PublicView& view, const PrivateContext& context) = 0;

  // New bids for the current solicitation of a multi-round mechanism. All
  // agents decide simultaneously against the previous round's state.
  virtual std::vector<BidIntent> decide(const PublicView& view,
                                        const PrivateContext& context) = 0;

  // Called after each completed round with the engine's record.
  virtual void observe(const model::RoundRecord& record) { (void)record; }
};

}  // namespace spectra::strategies
