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

#include "core/model.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace spectra::model {

double license_size(const License& license) {
  return license.bandwidth_mhz * static_cast<double>(license.population);
}

Money credit_adjusted_payment(Money gross, const Bidder& bidder) {
  if (gross < 0) {
    throw Error(ErrorCode::kInvalidArgument, "payment amount must be >= 0");
  }
  if (bidder.credit_fraction == 0.0) return gross;
  double net = static_cast<double>(gross) * (1.0 - bidder.credit_fraction);
  return round_half_up(net);
}

ValuationProfile::ValuationProfile(BidderId bidder_id,
                                   std::map<LicenseId, Money> base_values,
                                   std::vector<BundleAdjustment> adjustments)
    : bidder_id_(std::move(bidder_id)),
      base_values_(std::move(base_values)),
      adjustments_(std::move(adjustments)) {}

Money ValuationProfile::value(const std::set<LicenseId>& bundle) const {
  Money total = 0;
  for (const auto& id : bundle) {
    auto it = base_values_.find(id);
    if (it == base_values_.end()) {
      throw Error(ErrorCode::kValidation,
                  "bundle names unknown license '" + id + "' for bidder '" +
                      bidder_id_ + "'");
    }
    total += it->second;
  }
  for (const auto& adjustment : adjustments_) {
    bool contained = std::includes(bundle.begin(), bundle.end(),
                                   adjustment.licenses.begin(),
                                   adjustment.licenses.end());
    if (contained) total += adjustment.amount;
  }
  return total;
}

Money ValuationProfile::base_value(const LicenseId& id) const {
  auto it = base_values_.find(id);
  if (it == base_values_.end()) {
    throw Error(ErrorCode::kValidation,
                "unknown license '" + id + "' for bidder '" + bidder_id_ + "'");
  }
  return it->second;
}

Money ValuationProfile::marginal_value(const std::set<LicenseId>& held,
                                       const LicenseId& candidate) const {
  if (held.count(candidate) != 0) return 0;
  std::set<LicenseId> with = held;
  with.insert(candidate);
  return value(with) - value(held);
}

Money bundle_value(const ValuationProfile& profile,
                   const std::set<LicenseId>& bundle) {
  return profile.value(bundle);
}

std::set<LicenseId> AuctionOutcome::licenses_won_by(
    const BidderId& bidder) const {
  std::set<LicenseId> won;
  for (const auto& [license, winner] : allocation) {
    if (winner && *winner == bidder) won.insert(license);
  }
  return won;
}

}  // namespace spectra::model
