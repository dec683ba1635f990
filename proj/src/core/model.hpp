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
#include <set>
#include <string>
#include <vector>

#include "core/money.hpp"

namespace spectra::model {

using LicenseId = std::string;
using BidderId = std::string;

// A spectrum license: a block of bandwidth over a service region. Size in
// MHz-pop (bandwidth times covered population) is the standard yardstick
// for comparing licenses of different shapes.
struct License {
  LicenseId id;
  double bandwidth_mhz = 0.0;
  std::int64_t population = 0;
  double area_km2 = 0.0;
  Money reserve_price = 0;
  // Weight of this license in activity-rule accounting. Usually 1; bigger
  // licenses can be given more weight so that activity tracks spectrum
  // share rather than license count.
  double activity_weight = 1.0;
  std::string region_id;
};

double license_size(const License& license);

struct Bidder {
  BidderId id;
  // Empty budget means unconstrained. Budgets bind on credit-adjusted
  // exposure: the amount the bidder would actually pay.
  std::optional<Money> budget;
  // Designated bidders (new entrants, set-aside categories) may receive a
  // bidding credit: they pay only (1 - credit_fraction) of the gross price.
  bool designated = false;
  double credit_fraction = 0.0;
  // Per-region cap on total bandwidth won or provisionally held. Empty
  // means uncapped.
  std::optional<double> bandwidth_cap_mhz;
};

// Amount actually charged for a license won at `gross`:
// gross * (1 - credit_fraction), rounded half-up to a minor unit.
Money credit_adjusted_payment(Money gross, const Bidder& bidder);

// A valuation adjustment for a specific set of two or more licenses.
// Positive amounts model complements (the set is worth more than its
// parts), negative amounts model substitutes.
struct BundleAdjustment {
  std::set<LicenseId> licenses;
  Money amount = 0;
};

// Additive base values plus bundle adjustments. The value of a bundle S is
// the sum of base values of its members plus every adjustment whose license
// set is fully contained in S. value({}) == 0 by construction.
class ValuationProfile {
 public:
  ValuationProfile() = default;
  ValuationProfile(BidderId bidder_id, std::map<LicenseId, Money> base_values,
                   std::vector<BundleAdjustment> adjustments);

  const BidderId& bidder_id() const { return bidder_id_; }
  const std::map<LicenseId, Money>& base_values() const { return base_values_; }
  const std::vector<BundleAdjustment>& adjustments() const {
    return adjustments_;
  }

  // Throws kValidation when the bundle names a license this profile does
  // not know (loaders fill base_values for every scenario license, so an
  // unknown id is a configuration error, not a zero).
  Money value(const std::set<LicenseId>& bundle) const;
  Money base_value(const LicenseId& id) const;

  // Marginal value of adding `candidate` to `held`.
  Money marginal_value(const std::set<LicenseId>& held,
                       const LicenseId& candidate) const;

 private:
  BidderId bidder_id_;
  std::map<LicenseId, Money> base_values_;
  std::vector<BundleAdjustment> adjustments_;
};

Money bundle_value(const ValuationProfile& profile,
                   const std::set<LicenseId>& bundle);

struct Bid {
  BidderId bidder_id;
  LicenseId license_id;
  Money amount = 0;
  int round_index = 0;
  int cycle_index = 0;
};

// ---------------------------------------------------------------------------
// Run records. Engines append one RoundRecord per round (per cycle for the
// hybrid mechanism); everything an outcome consumer may need to audit a run
// lives here, because agents are the only other observers and they see a
// disclosure-filtered view.

struct TieEvent {
  LicenseId license_id;
  int round_index = 0;
  std::vector<BidderId> candidates;
  BidderId winner;
  Money amount = 0;
};

struct RejectedBid {
  BidderId bidder_id;
  LicenseId license_id;
  Money amount = 0;
  int round_index = 0;
  std::string reason;
};

struct CloseEvent {
  LicenseId license_id;
  int round_index = 0;
  int cycle_index = 0;
  // Position of the license in its closing cycle's visit order. Only
  // meaningful for the hybrid mechanism; -1 elsewhere.
  int visit_position = -1;
  std::optional<BidderId> winner;
  Money price = 0;
};

struct LicenseRoundInfo {
  bool open = true;
  bool has_standing = false;
  Money standing_bid = 0;
  // All bidders holding the standing amount (joint when a round produced
  // equal top bids; the tie is resolved at award time). Empty when the
  // mechanism's disclosure policy hides identities.
  std::vector<BidderId> standing_bidders;
  bool identities_hidden = false;
  int new_bid_count = 0;
  int sf = 0;  // saturation factor; hybrid mechanism only
};

struct BidderRoundInfo {
  double eligibility_units = 0.0;
  double active_units = 0.0;
  bool activity_satisfied = true;
};

struct RoundRecord {
  int round_index = 0;
  int cycle_index = 0;
  // License being auctioned this round (sequential mechanism) or empty.
  std::optional<LicenseId> active_license;
  std::map<LicenseId, LicenseRoundInfo> licenses;
  std::map<BidderId, BidderRoundInfo> bidders;
  std::vector<TieEvent> ties;
  std::vector<RejectedBid> rejections;
  std::vector<CloseEvent> closes;
};

struct AuctionOutcome {
  std::string mechanism;
  std::uint64_t seed = 0;
  // license -> winner; empty optional means unsold.
  std::map<LicenseId, std::optional<BidderId>> allocation;
  // Credit-adjusted totals per bidder, summed over won licenses with
  // per-license rounding.
  std::map<BidderId, Money> payments;
  // Gross clearing price per sold license; unsold licenses are absent.
  std::map<LicenseId, Money> gross_prices;
  int rounds_elapsed = 0;
  std::vector<RoundRecord> history;
  // Valid sealed bids as considered by a sealed mechanism (after dropping
  // below-reserve offers); empty for multi-round mechanisms.
  std::map<LicenseId, std::map<BidderId, Money>> sealed_bids;

  std::set<LicenseId> licenses_won_by(const BidderId& bidder) const;
};

// ---------------------------------------------------------------------------
// Welfare oracle.

struct AllocationResult {
  std::map<LicenseId, std::optional<BidderId>> allocation;
  Money welfare = 0;
};

// Hard bounds for the exhaustive welfare search. Instances beyond these
// raise kOracleBound; callers that can degrade (efficiency metric) report
// the figure as unavailable instead.
constexpr std::size_t kOracleMaxLicenses = 12;
constexpr std::size_t kOracleMaxBidders = 8;

// Welfare-maximizing assignment of licenses to bidders (or unsold),
// respecting per-region bandwidth caps. Exact: a per-bidder subset dynamic
// program computes the optimum, then the allocation is pinned license by
// license to the lexicographically least maximizer (licenses in id order,
// candidates in bidder-id order with unsold last), which is the same
// assignment a naive first-hit exhaustive enumeration would keep.
AllocationResult optimal_allocation(const std::vector<License>& licenses,
                                    const std::vector<ValuationProfile>& profiles,
                                    const std::map<BidderId, Bidder>& bidders);

}  // namespace spectra::model
