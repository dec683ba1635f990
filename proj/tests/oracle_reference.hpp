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

// Reference welfare maximizer written independently of the library's
// subset-DP oracle: plain first-hit exhaustive enumeration. Licenses are
// considered in sorted id order; candidates for each license are the
// bidders in sorted id order followed by "unsold"; the first assignment
// attaining the maximum welfare wins. Bundle values and cap feasibility
// are recomputed from the raw profile data, not through the library's
// bundle_value.

#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"

namespace oracle_reference {

struct Instance {
  std::vector<spectra::model::License> licenses;
  std::vector<spectra::model::ValuationProfile> profiles;
  std::map<spectra::model::BidderId, spectra::model::Bidder> bidders;
};

inline spectra::Money naive_value(
    const spectra::model::ValuationProfile& profile,
    const std::set<spectra::model::LicenseId>& bundle) {
  spectra::Money total = 0;
  for (const auto& id : bundle) total += profile.base_values().at(id);
  for (const auto& adjustment : profile.adjustments()) {
    bool contained = true;
    for (const auto& id : adjustment.licenses) {
      if (!bundle.count(id)) {
        contained = false;
        break;
      }
    }
    if (contained) total += adjustment.amount;
  }
  return total;
}

inline bool naive_feasible(const Instance& instance,
                           const spectra::model::Bidder& bidder,
                           const std::set<spectra::model::LicenseId>& bundle) {
  if (!bidder.bandwidth_cap_mhz) return true;
  std::map<std::string, double> per_region;
  for (const auto& license : instance.licenses) {
    if (bundle.count(license.id)) {
      per_region[license.region_id] += license.bandwidth_mhz;
    }
  }
  for (const auto& [region, total] : per_region) {
    if (total > *bidder.bandwidth_cap_mhz + 1e-9) return false;
  }
  return true;
}

inline spectra::model::AllocationResult enumerate_best(
    const Instance& instance) {
  using spectra::Money;
  using spectra::model::LicenseId;
  using spectra::model::ValuationProfile;

  std::vector<const spectra::model::License*> licenses;
  for (const auto& license : instance.licenses) licenses.push_back(&license);
  std::sort(licenses.begin(), licenses.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });
  std::vector<const ValuationProfile*> profiles;
  for (const auto& profile : instance.profiles) profiles.push_back(&profile);
  std::sort(profiles.begin(), profiles.end(), [](const auto* a, const auto* b) {
    return a->bidder_id() < b->bidder_id();
  });

  spectra::model::AllocationResult best;
  best.welfare = std::numeric_limits<Money>::min();
  // choice[i] = index into profiles, or profiles.size() for unsold.
  std::vector<std::size_t> choice(licenses.size(), 0);

  auto score_leaf = [&]() {
    std::vector<std::set<LicenseId>> bundles(profiles.size());
    for (std::size_t i = 0; i < licenses.size(); ++i) {
      if (choice[i] < profiles.size()) {
        bundles[choice[i]].insert(licenses[i]->id);
      }
    }
    Money welfare = 0;
    for (std::size_t b = 0; b < profiles.size(); ++b) {
      const auto& bidder =
          instance.bidders.at(profiles[b]->bidder_id());
      if (!naive_feasible(instance, bidder, bundles[b])) return;
      welfare += naive_value(*profiles[b], bundles[b]);
    }
    if (welfare > best.welfare) {
      best.welfare = welfare;
      best.allocation.clear();
      for (std::size_t i = 0; i < licenses.size(); ++i) {
        if (choice[i] < profiles.size()) {
          best.allocation[licenses[i]->id] = profiles[choice[i]]->bidder_id();
        } else {
          best.allocation[licenses[i]->id] = std::nullopt;
        }
      }
    }
  };

  auto recurse = [&](auto&& self, std::size_t index) -> void {
    if (index == licenses.size()) {
      score_leaf();
      return;
    }
    for (std::size_t c = 0; c <= profiles.size(); ++c) {
      choice[index] = c;
      self(self, index + 1);
    }
  };
  recurse(recurse, 0);
  return best;
}

// Random small instance for the two-oracle agreement checks. Values and
// adjustments are integers in minor units; roughly half the bidders carry
// a bandwidth cap and adjacent licenses may share a region so caps bind.
inline Instance random_instance(std::uint64_t seed, std::uint64_t trial) {
  using spectra::Money;
  spectra::RandomStream stream(seed, "oracle-instance", trial);
  static const char* kLicenseIds[] = {"la", "lb", "lc"};
  static const char* kBidderIds[] = {"p", "q", "r"};
  static const char* kRegions[] = {"east", "west"};

  Instance instance;
  std::size_t n_licenses = 1 + stream.next_index(3);
  std::size_t n_bidders = 1 + stream.next_index(3);
  for (std::size_t i = 0; i < n_licenses; ++i) {
    spectra::model::License license;
    license.id = kLicenseIds[i];
    license.bandwidth_mhz = 5.0 * (1 + stream.next_index(4));
    license.population = 1000;
    license.region_id = kRegions[stream.next_index(2)];
    instance.licenses.push_back(license);
  }
  for (std::size_t b = 0; b < n_bidders; ++b) {
    spectra::model::BidderId id = kBidderIds[b];
    std::map<spectra::model::LicenseId, Money> base;
    for (const auto& license : instance.licenses) {
      base[license.id] = static_cast<Money>(stream.next_index(500));
    }
    std::vector<spectra::model::BundleAdjustment> adjustments;
    if (n_licenses >= 2 && stream.next_index(2) == 1) {
      std::set<spectra::model::LicenseId> bundle;
      if (n_licenses == 3 && stream.next_index(2) == 1) {
        bundle = {"la", "lb", "lc"};
      } else {
        std::size_t skip = stream.next_index(n_licenses);
        for (std::size_t i = 0; i < n_licenses; ++i) {
          if (n_licenses == 2 || i != skip) {
            bundle.insert(instance.licenses[i].id);
          }
        }
      }
      Money amount = static_cast<Money>(stream.next_index(600)) - 200;
      adjustments.push_back({bundle, amount});
    }
    instance.profiles.emplace_back(id, base, adjustments);

    spectra::model::Bidder bidder;
    bidder.id = id;
    if (stream.next_index(2) == 1) {
      bidder.bandwidth_cap_mhz = 5.0 * (1 + stream.next_index(5));
    }
    instance.bidders[id] = bidder;
  }
  return instance;
}

}  // namespace oracle_reference
