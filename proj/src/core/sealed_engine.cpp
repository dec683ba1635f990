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
#include <set>

#include "core/engines.hpp"
#include "core/error.hpp"

namespace spectra::mechanisms {
namespace {

struct SealedCandidate {
  model::BidderId bidder;
  Money amount = 0;
  bool forfeited = false;
};

struct LicenseBook {
  const model::License* license = nullptr;
  std::vector<SealedCandidate> candidates;  // sorted amount desc, bidder asc

  Money top_amount() const {
    return candidates.empty() ? 0 : candidates.front().amount;
  }
};

// Highest non-forfeited bid amount, excluding `exclude`; reserve when none.
Money second_price(const LicenseBook& book, const model::BidderId& exclude) {
  for (const auto& candidate : book.candidates) {
    if (candidate.forfeited || candidate.bidder == exclude) continue;
    return std::max(candidate.amount, book.license->reserve_price);
  }
  return book.license->reserve_price;
}

model::AuctionOutcome run_sealed(const AuctionSetup& setup,
                                 const std::vector<model::Bid>& sealed_bids,
                                 bool second_price_rule) {
  model::AuctionOutcome outcome;
  outcome.mechanism =
      to_string(second_price_rule ? MechanismKind::VICKREY : MechanismKind::FPSB);
  outcome.seed = setup.seed;
  outcome.rounds_elapsed = 1;

  model::RoundRecord record;
  record.round_index = 1;

  std::map<model::LicenseId, LicenseBook> books;
  for (const auto& license : setup.licenses) {
    books[license.id].license = &license;
  }

  std::set<std::pair<model::BidderId, model::LicenseId>> seen;
  for (const auto& bid : sealed_bids) {
    auto book = books.find(bid.license_id);
    if (book == books.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sealed bid on unknown license '" + bid.license_id + "'");
    }
    if (setup.bidders.find(bid.bidder_id) == setup.bidders.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sealed bid from unknown bidder '" + bid.bidder_id + "'");
    }
    if (bid.amount < 0) {
      throw Error(ErrorCode::kInvalidArgument, "sealed bid amount must be >= 0");
    }
    if (!seen.insert({bid.bidder_id, bid.license_id}).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate sealed bid: bidder '" + bid.bidder_id +
                      "', license '" + bid.license_id + "'");
    }
    if (bid.amount < book->second.license->reserve_price) {
      record.rejections.push_back(
          {bid.bidder_id, bid.license_id, bid.amount, 1, "BELOW_RESERVE"});
      continue;
    }
    book->second.candidates.push_back({bid.bidder_id, bid.amount, false});
    outcome.sealed_bids[bid.license_id][bid.bidder_id] = bid.amount;
  }

  for (auto& [id, book] : books) {
    std::sort(book.candidates.begin(), book.candidates.end(),
              [](const SealedCandidate& a, const SealedCandidate& b) {
                if (a.amount != b.amount) return a.amount > b.amount;
                return a.bidder < b.bidder;
              });
  }

  // Licenses settle in descending order of their top bid so that budget and
  // cap exhaustion hits the cheapest wins last.
  std::vector<LicenseBook*> order;
  for (auto& [id, book] : books) order.push_back(&book);
  std::sort(order.begin(), order.end(), [](LicenseBook* a, LicenseBook* b) {
    if (a->top_amount() != b->top_amount())
      return a->top_amount() > b->top_amount();
    return a->license->id < b->license->id;
  });

  std::map<model::BidderId, Money> spent_net;
  std::map<model::BidderId, std::map<std::string, double>> bandwidth_held;

  for (LicenseBook* book : order) {
    const model::License& license = *book->license;
    std::optional<model::BidderId> winner;
    Money gross = 0;

    while (true) {
      // Leading group: all non-forfeited candidates tied at the current
      // best amount. The seeded tie-break picks the provisional winner.
      std::vector<model::BidderId> leaders;
      Money lead_amount = 0;
      for (const auto& candidate : book->candidates) {
        if (candidate.forfeited) continue;
        if (leaders.empty()) {
          lead_amount = candidate.amount;
          leaders.push_back(candidate.bidder);
        } else if (candidate.amount == lead_amount) {
          leaders.push_back(candidate.bidder);
        }
      }
      if (leaders.empty()) break;

      model::BidderId chosen = leaders.front();
      if (leaders.size() > 1) {
        chosen = resolve_tie(leaders, license.id, 1, setup.effective_seed());
        record.ties.push_back({license.id, 1, leaders, chosen, lead_amount});
      }

      const model::Bidder& bidder = setup.bidders.at(chosen);
      Money price = second_price_rule ? second_price(*book, chosen) : lead_amount;
      Money net = model::credit_adjusted_payment(price, bidder);

      bool affordable = true;
      if (bidder.budget && spent_net[chosen] + net > *bidder.budget) {
        affordable = false;
        record.rejections.push_back(
            {chosen, license.id, lead_amount, 1, "EXCEEDS_BUDGET"});
      }
      if (affordable && bidder.bandwidth_cap_mhz) {
        double held = bandwidth_held[chosen][license.region_id];
        if (held + license.bandwidth_mhz > *bidder.bandwidth_cap_mhz + 1e-9) {
          affordable = false;
          record.rejections.push_back(
              {chosen, license.id, lead_amount, 1, "EXCEEDS_CAP"});
        }
      }
      if (!affordable) {
        for (auto& candidate : book->candidates) {
          if (candidate.bidder == chosen) candidate.forfeited = true;
        }
        continue;
      }

      winner = chosen;
      gross = price;
      spent_net[chosen] += net;
      bandwidth_held[chosen][license.region_id] += license.bandwidth_mhz;
      break;
    }

    outcome.allocation[license.id] = winner;
    model::LicenseRoundInfo info;
    info.open = false;
    info.new_bid_count = static_cast<int>(book->candidates.size());
    if (winner) {
      outcome.gross_prices[license.id] = gross;
      outcome.payments[*winner] +=
          model::credit_adjusted_payment(gross, setup.bidders.at(*winner));
      info.has_standing = true;
      info.standing_bid = gross;
      info.standing_bidders = {*winner};
    }
    record.licenses[license.id] = info;
    record.closes.push_back(
        {license.id, 1, 0, -1, winner, winner ? gross : 0});
  }

  outcome.history.push_back(std::move(record));
  return outcome;
}

}  // namespace

model::AuctionOutcome run_fpsb(const AuctionSetup& setup,
                               const std::vector<model::Bid>& sealed_bids) {
  return run_sealed(setup, sealed_bids, false);
}

model::AuctionOutcome run_vickrey(const AuctionSetup& setup,
                                  const std::vector<model::Bid>& sealed_bids) {
  return run_sealed(setup, sealed_bids, true);
}

}  // namespace spectra::mechanisms
