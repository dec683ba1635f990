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

#include <algorithm>
#include <limits>
#include <vector>

#include "core/error.hpp"
#include "core/model.hpp"

namespace spectra::model {
namespace {

// The oracle works on bitmask bundles: licenses are indexed in sorted-id
// order and a bundle is the set of bits. Everything below is sized for the
// kOracleMaxLicenses/kOracleMaxBidders bounds checked on entry.

struct OracleInstance {
  std::vector<const License*> licenses;        // sorted by id
  std::vector<const ValuationProfile*> profiles;  // sorted by bidder id
  std::vector<const Bidder*> bidders;             // parallel to profiles
  // value_table[b][mask] = profile value of the bundle encoded by mask.
  std::vector<std::vector<Money>> value_table;
  // feasible[b][mask] = bundle respects bidder b's per-region bandwidth cap.
  std::vector<std::vector<char>> feasible;
  unsigned full_mask = 0;
};

std::vector<Money> build_value_table(const OracleInstance& inst,
                                     const ValuationProfile& profile) {
  std::size_t n = inst.licenses.size();
  std::vector<Money> table(std::size_t(1) << n, 0);
  std::vector<Money> base(n);
  for (std::size_t i = 0; i < n; ++i) {
    base[i] = profile.base_value(inst.licenses[i]->id);
  }
  for (unsigned mask = 1; mask < table.size(); ++mask) {
    unsigned low = mask & (mask - 1);
    unsigned bit = mask ^ low;
    int index = __builtin_ctz(bit);
    table[mask] = table[low] + base[static_cast<std::size_t>(index)];
  }
  for (const auto& adjustment : profile.adjustments()) {
    unsigned adj_mask = 0;
    for (const auto& id : adjustment.licenses) {
      auto it = std::find_if(inst.licenses.begin(), inst.licenses.end(),
                             [&](const License* l) { return l->id == id; });
      if (it == inst.licenses.end()) {
        throw Error(ErrorCode::kValidation,
                    "bundle adjustment names unknown license '" + id + "'");
      }
      adj_mask |= 1u << (it - inst.licenses.begin());
    }
    // Add the adjustment to every superset of its license set.
    unsigned rest = inst.full_mask & ~adj_mask;
    unsigned sub = rest;
    while (true) {
      table[adj_mask | sub] += adjustment.amount;
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }
  return table;
}

std::vector<char> build_feasibility(const OracleInstance& inst,
                                    const Bidder* bidder) {
  std::size_t n = inst.licenses.size();
  std::vector<char> feasible(std::size_t(1) << n, 1);
  if (bidder == nullptr || !bidder->bandwidth_cap_mhz) return feasible;
  double cap = *bidder->bandwidth_cap_mhz;
  for (unsigned mask = 1; mask < feasible.size(); ++mask) {
    // Region totals per mask; license counts are tiny so recompute directly.
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      double region_total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if ((mask & (1u << j)) &&
            inst.licenses[j]->region_id == inst.licenses[i]->region_id) {
          region_total += inst.licenses[j]->bandwidth_mhz;
        }
      }
      if (region_total > cap + 1e-9) ok = false;
    }
    feasible[mask] = ok ? 1 : 0;
  }
  return feasible;
}

// Maximum welfare achievable when profiles[b] (for b >= index) may still
// pick any feasible sub-bundle of `mask` on top of their already-fixed
// licenses. fixed[b] holds licenses pinned during lexicographic extraction.
Money best_completion(const OracleInstance& inst,
                      const std::vector<unsigned>& fixed, std::size_t index,
                      unsigned mask, std::vector<std::vector<Money>>& memo,
                      std::vector<std::vector<char>>& seen) {
  if (index == inst.profiles.size()) return 0;
  if (seen[index][mask]) return memo[index][mask];
  Money best = -1;
  unsigned sub = mask;
  while (true) {
    unsigned bundle = fixed[index] | sub;
    if (inst.feasible[index][bundle]) {
      Money candidate =
          inst.value_table[index][bundle] -
          inst.value_table[index][fixed[index]] +
          best_completion(inst, fixed, index + 1, mask & ~sub, memo, seen);
      best = std::max(best, candidate);
    }
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
  if (best < 0) {
    // fixed[index] itself violates the cap; pinning chose an infeasible
    // candidate and the caller will discard this branch.
    best = std::numeric_limits<Money>::min() / 4;
  }
  seen[index][mask] = 1;
  memo[index][mask] = best;
  return best;
}

Money constrained_max(const OracleInstance& inst,
                      const std::vector<unsigned>& fixed, unsigned free_mask) {
  std::size_t slots = std::size_t(1) << inst.licenses.size();
  std::vector<std::vector<Money>> memo(inst.profiles.size(),
                                       std::vector<Money>(slots, 0));
  std::vector<std::vector<char>> seen(inst.profiles.size(),
                                      std::vector<char>(slots, 0));
  Money fixed_value = 0;
  for (std::size_t b = 0; b < inst.profiles.size(); ++b) {
    if (!inst.feasible[b][fixed[b]]) {
      return std::numeric_limits<Money>::min() / 4;
    }
    fixed_value += inst.value_table[b][fixed[b]];
  }
  return fixed_value + best_completion(inst, fixed, 0, free_mask, memo, seen);
}

}  // namespace

AllocationResult optimal_allocation(
    const std::vector<License>& licenses,
    const std::vector<ValuationProfile>& profiles,
    const std::map<BidderId, Bidder>& bidders) {
  if (licenses.size() > kOracleMaxLicenses ||
      profiles.size() > kOracleMaxBidders) {
    throw Error(ErrorCode::kOracleBound,
                "welfare search bound exceeded (max " +
                    std::to_string(kOracleMaxLicenses) + " licenses, " +
                    std::to_string(kOracleMaxBidders) + " bidders)");
  }

  OracleInstance inst;
  for (const auto& license : licenses) inst.licenses.push_back(&license);
  std::sort(inst.licenses.begin(), inst.licenses.end(),
            [](const License* a, const License* b) { return a->id < b->id; });
  for (const auto& profile : profiles) inst.profiles.push_back(&profile);
  std::sort(inst.profiles.begin(), inst.profiles.end(),
            [](const ValuationProfile* a, const ValuationProfile* b) {
              return a->bidder_id() < b->bidder_id();
            });
  for (std::size_t b = 1; b < inst.profiles.size(); ++b) {
    if (inst.profiles[b]->bidder_id() == inst.profiles[b - 1]->bidder_id()) {
      throw Error(ErrorCode::kValidation,
                  "duplicate valuation profile for bidder '" +
                      inst.profiles[b]->bidder_id() + "'");
    }
  }
  inst.full_mask =
      static_cast<unsigned>((std::size_t(1) << inst.licenses.size()) - 1);
  for (const ValuationProfile* profile : inst.profiles) {
    auto it = bidders.find(profile->bidder_id());
    inst.bidders.push_back(it == bidders.end() ? nullptr : &it->second);
    inst.value_table.push_back(build_value_table(inst, *profile));
    inst.feasible.push_back(build_feasibility(inst, inst.bidders.back()));
  }

  std::vector<unsigned> fixed(inst.profiles.size(), 0);
  Money optimum = constrained_max(inst, fixed, inst.full_mask);

  // Pin the allocation license by license to the first candidate (bidders
  // in id order, unsold last) that still attains the optimum. This yields
  // exactly the assignment a first-hit exhaustive enumeration returns.
  AllocationResult result;
  result.welfare = optimum;
  unsigned free_mask = inst.full_mask;
  for (std::size_t i = 0; i < inst.licenses.size(); ++i) {
    unsigned bit = 1u << i;
    free_mask &= ~bit;
    bool assigned = false;
    for (std::size_t b = 0; b < inst.profiles.size(); ++b) {
      fixed[b] |= bit;
      if (constrained_max(inst, fixed, free_mask) == optimum) {
        result.allocation[inst.licenses[i]->id] = inst.profiles[b]->bidder_id();
        assigned = true;
        break;
      }
      fixed[b] &= ~bit;
    }
    if (!assigned) {
      result.allocation[inst.licenses[i]->id] = std::nullopt;
    }
  }
  return result;
}

}  // namespace spectra::model
