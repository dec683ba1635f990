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
#include <string>
#include <vector>

#include "core/engines.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace spectra::mechanisms {
namespace {

constexpr double kUnitsEpsilon = 1e-9;

struct LicenseState {
  const model::License* license = nullptr;
  bool open = true;
  bool has_standing = false;
  Money standing = 0;
  // Every bidder holding the current top amount, sorted by id. A multi-way
  // top persists as a joint standing set until award time.
  std::vector<model::BidderId> standers;
  int sf = 0;
  int prev_new_bids = 0;
  int new_bids_this = 0;
  // Bidders whose new bid was accepted in the current round, top or not;
  // feeds the activity rule.
  std::set<model::BidderId> bid_this_round;

  bool is_member(const model::BidderId& bidder) const {
    return std::binary_search(standers.begin(), standers.end(), bidder);
  }

  Money min_next_bid(const IncrementSchedule& schedule) const {
    if (!has_standing) return license->reserve_price;
    return standing + compute_min_increment(schedule, standing, prev_new_bids);
  }
};

struct BidderState {
  const model::Bidder* bidder = nullptr;
  const model::ValuationProfile* profile = nullptr;
  strategies::Strategy* agent = nullptr;
  Money committed_net = 0;
  std::set<model::LicenseId> holdings;
  std::map<std::string, double> won_bandwidth;
  double eligibility = 0.0;
  double active_units = 0.0;
  bool activity_satisfied = true;
};

// Shared state machine behind the three multi-round mechanisms. Drivers
// differ in which licenses a solicitation covers, when the stop rule fires,
// and how solicitations map onto recorded rounds; bid validation, standing
// updates, awards, and activity accounting are common.
class OpenAuction {
 public:
  OpenAuction(const AuctionSetup& setup, const AgentMap& agents)
      : setup_(setup) {
    outcome_.mechanism = to_string(setup.config.kind);
    outcome_.seed = setup.seed;

    double total_weight = 0.0;
    for (const auto& license : setup.licenses) {
      states_[license.id].license = &license;
      total_weight += license.activity_weight;
    }
    for (const auto& [id, bidder] : setup.bidders) {
      auto agent = agents.find(id);
      if (agent == agents.end() || agent->second == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "no agent supplied for bidder '" + id + "'");
      }
      auto profile = setup.valuations.find(id);
      if (profile == setup.valuations.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "no valuation profile for bidder '" + id + "'");
      }
      BidderState state;
      state.bidder = &bidder;
      state.profile = &profile->second;
      state.agent = agent->second;
      state.eligibility = total_weight;
      bidders_[id] = state;
    }
  }

  // One license at a time, in the configured order; a license closes after
  // its first round with no accepted bid, and later licenses see the
  // completed results of earlier ones.
  model::AuctionOutcome run_sequential() {
    require_full_order();
    int round = 0;
    for (const auto& id : setup_.config.fixed_order) {
      LicenseState& state = states_.at(id);
      while (state.open) {
        advance_round(&round);
        model::RoundRecord record = new_record(round, 0);
        record.active_license = id;
        int accepted = run_solicitation(round, 0, id, &record);
        if (accepted == 0) {
          close_license(&state, round, 0, -1, &record);
        } else {
          state.prev_new_bids = accepted;
        }
        refresh_activity(round, false);
        finish_round(std::move(record));
      }
    }
    outcome_.rounds_elapsed = round;
    return std::move(outcome_);
  }

  // All licenses take bids every round; the auction ends after the first
  // round with no accepted bid anywhere, including round one.
  model::AuctionOutcome run_simultaneous() {
    int round = 0;
    while (true) {
      advance_round(&round);
      model::RoundRecord record = new_record(round, 0);
      int accepted = run_solicitation(round, 0, std::nullopt, &record);
      refresh_activity(round, true);
      if (accepted == 0) {
        for (auto& [id, state] : states_) {
          if (state.open) close_license(&state, round, 0, -1, &record);
        }
      } else {
        for (auto& [id, state] : states_) {
          if (state.open) state.prev_new_bids = state.new_bids_this;
        }
      }
      finish_round(std::move(record));
      if (accepted == 0) break;
    }
    outcome_.rounds_elapsed = round;
    return std::move(outcome_);
  }

  // Cycles of single-bid visits over the open licenses. A visit with no
  // accepted bid raises the license's saturation factor; the license closes
  // at its own visit once the factor reaches its threshold, so closings of
  // different licenses always land on distinct (cycle, visit) pairs.
  model::AuctionOutcome run_hybrid() {
    for (const auto& license : setup_.licenses) {
      auto tsf = setup_.config.tsf.find(license.id);
      if (tsf == setup_.config.tsf.end() || tsf->second < 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "hybrid mechanism needs a TSF >= 1 for license '" +
                        license.id + "'");
      }
    }
    if (setup_.config.ordering == OrderingPolicy::FIXED) require_full_order();

    int cycle = 0;
    while (open_count() > 0) {
      advance_round(&cycle);
      model::RoundRecord record = new_record(cycle, cycle);
      int visit_position = 0;
      for (const auto& id : cycle_order(cycle)) {
        LicenseState& state = states_.at(id);
        ++visit_position;
        int accepted = run_solicitation(cycle, cycle, id, &record);
        if (accepted == 0) {
          ++state.sf;
          if (state.sf >= setup_.config.tsf.at(id)) {
            close_license(&state, cycle, cycle, visit_position, &record);
          }
        }
        state.prev_new_bids = accepted;
      }
      refresh_activity(cycle, true);
      finish_round(std::move(record));
    }
    outcome_.rounds_elapsed = cycle;
    return std::move(outcome_);
  }

 private:
  void advance_round(int* counter) {
    if (++*counter > setup_.config.round_limit) {
      throw Error(ErrorCode::kEngine,
                  "round limit exceeded after " +
                      std::to_string(setup_.config.round_limit) + " rounds");
    }
    for (auto& [id, state] : states_) {
      state.new_bids_this = 0;
      state.bid_this_round.clear();
    }
  }

  void require_full_order() const {
    std::set<model::LicenseId> ordered(setup_.config.fixed_order.begin(),
                                       setup_.config.fixed_order.end());
    if (ordered.size() != setup_.config.fixed_order.size() ||
        ordered.size() != states_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixed ordering must be a full permutation of license ids");
    }
    for (const auto& id : ordered) {
      if (states_.find(id) == states_.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "fixed ordering names unknown license '" + id + "'");
      }
    }
  }

  int open_count() const {
    int count = 0;
    for (const auto& [id, state] : states_) count += state.open ? 1 : 0;
    return count;
  }

  std::vector<model::LicenseId> cycle_order(int cycle) const {
    std::vector<model::LicenseId> order;
    if (setup_.config.ordering == OrderingPolicy::FIXED) {
      for (const auto& id : setup_.config.fixed_order) {
        if (states_.at(id).open) order.push_back(id);
      }
      return order;
    }
    for (const auto& [id, state] : states_) {
      if (state.open) order.push_back(id);
    }
    RandomStream stream(setup_.effective_seed(), "cycle-order",
                        static_cast<std::uint64_t>(cycle));
    stream.shuffle(order);
    return order;
  }

  Money net_amount(const BidderState& bidder, Money gross) const {
    return model::credit_adjusted_payment(gross, *bidder.bidder);
  }

  // Credit-adjusted amount the bidder is on the hook for if every license
  // it currently tops closed now, plus payments already committed.
  Money exposure(const model::BidderId& id) const {
    const BidderState& bidder = bidders_.at(id);
    Money total = bidder.committed_net;
    for (const auto& [license_id, state] : states_) {
      if (state.open && state.is_member(id)) {
        total += net_amount(bidder, state.standing);
      }
    }
    return total;
  }

  std::map<std::string, double> held_bandwidth(
      const model::BidderId& id) const {
    const BidderState& bidder = bidders_.at(id);
    std::map<std::string, double> held = bidder.won_bandwidth;
    for (const auto& [license_id, state] : states_) {
      if (state.open && state.is_member(id)) {
        held[state.license->region_id] += state.license->bandwidth_mhz;
      }
    }
    return held;
  }

  double membership_units(const model::BidderId& id) const {
    double units = 0.0;
    for (const auto& [license_id, state] : states_) {
      if (state.open && state.is_member(id)) {
        units += state.license->activity_weight;
      }
    }
    return units;
  }

  strategies::PublicView base_view(
      int round, int cycle,
      const std::optional<model::LicenseId>& only) const {
    strategies::PublicView view;
    view.kind = setup_.config.kind;
    view.round_index = round;
    view.cycle_index = cycle;
    view.biddable = only;
    bool identities =
        setup_.config.disclosure == Disclosure::BIDS_AND_IDENTITIES;
    for (const auto& [id, state] : states_) {
      if (!state.open) {
        strategies::ClosedLicenseView closed;
        closed.id = id;
        auto winner = outcome_.allocation.at(id);
        closed.winner = winner;
        if (winner) closed.price = outcome_.gross_prices.at(id);
        view.closed_licenses.push_back(closed);
        continue;
      }
      strategies::LicenseView open;
      open.id = id;
      open.reserve = state.license->reserve_price;
      open.activity_weight = state.license->activity_weight;
      open.bandwidth_mhz = state.license->bandwidth_mhz;
      open.region_id = state.license->region_id;
      open.has_standing = state.has_standing;
      open.standing_bid = state.standing;
      if (identities) open.standing_bidders = state.standers;
      open.min_next_bid = state.min_next_bid(setup_.config.increment);
      open.sf = state.sf;
      if (setup_.config.kind == MechanismKind::HAMR) {
        open.tsf = setup_.config.tsf.at(id);
      }
      view.open_licenses.push_back(open);
    }
    view.required_activity_fraction =
        setup_.config.required_fraction_for_round(round);
    return view;
  }

  // Solicits every agent once, validates intents against the
  // pre-solicitation state, applies the accepted bids, and returns how many
  // were accepted. `only` restricts bidding to a single license (sequential
  // rounds and hybrid visits); agents are asked in bidder-id order but all
  // decide against the same snapshot.
  int run_solicitation(int round, int cycle,
                       const std::optional<model::LicenseId>& only,
                       model::RoundRecord* record) {
    strategies::PublicView snapshot = base_view(round, cycle, only);
    bool activity_rule = setup_.config.kind == MechanismKind::SAMR ||
                         setup_.config.kind == MechanismKind::HAMR;
    std::map<model::LicenseId, Money> min_next;
    for (const auto& [id, state] : states_) {
      if (state.open) min_next[id] = state.min_next_bid(setup_.config.increment);
    }

    std::map<model::LicenseId, std::vector<model::Bid>> accepted;
    for (auto& [bidder_id, bidder] : bidders_) {
      strategies::PublicView view = snapshot;
      for (auto& license : view.open_licenses) {
        const LicenseState& ls = states_.at(license.id);
        license.self_standing = ls.is_member(bidder_id);
        license.self_sole_standing =
            license.self_standing && ls.standers.size() == 1;
      }
      view.eligibility = bidder.eligibility;

      strategies::PrivateContext context;
      context.bidder = bidder.bidder;
      context.profile = bidder.profile;
      context.holdings = bidder.holdings;
      if (bidder.bidder->budget) {
        context.remaining_budget = *bidder.bidder->budget - exposure(bidder_id);
      }
      context.region_bandwidth_held = held_bandwidth(bidder_id);

      Money provisional_exposure = exposure(bidder_id);
      std::map<std::string, double> provisional_bw = held_bandwidth(bidder_id);
      double provisional_active = membership_units(bidder_id);
      std::set<model::LicenseId> bid_on;

      for (const auto& intent : bidder.agent->decide(view, context)) {
        auto reject = [&](const char* reason) {
          record->rejections.push_back(
              {bidder_id, intent.license_id, intent.amount, round, reason});
        };
        auto found = states_.find(intent.license_id);
        if (found == states_.end()) {
          reject("UNKNOWN_LICENSE");
          continue;
        }
        LicenseState& state = found->second;
        if (!state.open) {
          reject("LICENSE_CLOSED");
          continue;
        }
        if (only && intent.license_id != *only) {
          reject("NOT_BIDDABLE");
          continue;
        }
        if (!bid_on.insert(intent.license_id).second) {
          reject("DUPLICATE_INTENT");
          continue;
        }
        if (intent.amount < min_next.at(intent.license_id)) {
          reject("BELOW_MIN");
          continue;
        }
        bool member = state.is_member(bidder_id);
        Money delta = net_amount(bidder, intent.amount) -
                      (member ? net_amount(bidder, state.standing) : 0);
        if (bidder.bidder->budget &&
            provisional_exposure + delta > *bidder.bidder->budget) {
          reject("EXCEEDS_BUDGET");
          continue;
        }
        double add_bandwidth = member ? 0.0 : state.license->bandwidth_mhz;
        if (bidder.bidder->bandwidth_cap_mhz &&
            provisional_bw[state.license->region_id] + add_bandwidth >
                *bidder.bidder->bandwidth_cap_mhz + kUnitsEpsilon) {
          reject("EXCEEDS_CAP");
          continue;
        }
        double add_units = member ? 0.0 : state.license->activity_weight;
        if (activity_rule && provisional_active + add_units >
                                 bidder.eligibility + kUnitsEpsilon) {
          reject("EXCEEDS_ELIGIBILITY");
          continue;
        }
        accepted[intent.license_id].push_back(
            {bidder_id, intent.license_id, intent.amount, round, cycle});
        provisional_exposure += delta;
        provisional_bw[state.license->region_id] += add_bandwidth;
        provisional_active += add_units;
      }
    }

    int total = 0;
    for (auto& [id, bids] : accepted) {
      LicenseState& state = states_.at(id);
      Money top = 0;
      for (const auto& bid : bids) top = std::max(top, bid.amount);
      std::vector<model::BidderId> standers;
      for (const auto& bid : bids) {
        if (bid.amount == top) standers.push_back(bid.bidder_id);
        state.bid_this_round.insert(bid.bidder_id);
      }
      state.has_standing = true;
      state.standing = top;
      state.standers = std::move(standers);
      state.new_bids_this = static_cast<int>(bids.size());
      total += static_cast<int>(bids.size());
    }
    return total;
  }

  void close_license(LicenseState* state, int round, int cycle,
                     int visit_position, model::RoundRecord* record) {
    state->open = false;
    model::CloseEvent close;
    close.license_id = state->license->id;
    close.round_index = round;
    close.cycle_index = cycle;
    close.visit_position = visit_position;
    if (state->has_standing) {
      model::BidderId winner = state->standers.front();
      if (state->standers.size() > 1) {
        winner = resolve_tie(state->standers, state->license->id, round,
                             setup_.effective_seed());
        record->ties.push_back({state->license->id, round, state->standers,
                                winner, state->standing});
      }
      BidderState& bidder = bidders_.at(winner);
      Money payment = net_amount(bidder, state->standing);
      outcome_.allocation[state->license->id] = winner;
      outcome_.gross_prices[state->license->id] = state->standing;
      outcome_.payments[winner] += payment;
      bidder.committed_net += payment;
      bidder.holdings.insert(state->license->id);
      bidder.won_bandwidth[state->license->region_id] +=
          state->license->bandwidth_mhz;
      close.winner = winner;
      close.price = state->standing;
    } else {
      outcome_.allocation[state->license->id] = std::nullopt;
    }
    record->closes.push_back(std::move(close));
  }

  // Recomputes per-bidder activity over open licenses: active units are the
  // weights of licenses where the bidder stands or placed an accepted bid
  // this round. When enforced and a bidder fell short of the required
  // fraction of its eligibility, eligibility shrinks to active / fraction,
  // binding from the next round on. It never grows back.
  void refresh_activity(int round, bool enforce) {
    double fraction = setup_.config.required_fraction_for_round(round);
    for (auto& [bidder_id, bidder] : bidders_) {
      double units = 0.0;
      for (const auto& [license_id, state] : states_) {
        if (!state.open) continue;
        if (state.is_member(bidder_id) ||
            state.bid_this_round.count(bidder_id)) {
          units += state.license->activity_weight;
        }
      }
      bidder.active_units = units;
      bidder.activity_satisfied =
          units + kUnitsEpsilon >= fraction * bidder.eligibility;
      if (enforce && !bidder.activity_satisfied) {
        bidder.eligibility = units / fraction;
      }
    }
  }

  model::RoundRecord new_record(int round, int cycle) {
    model::RoundRecord record;
    record.round_index = round;
    record.cycle_index = cycle;
    return record;
  }

  void finish_round(model::RoundRecord record) {
    bool hidden = setup_.config.disclosure == Disclosure::BIDS_ONLY;
    for (const auto& [id, state] : states_) {
      model::LicenseRoundInfo info;
      info.open = state.open;
      info.has_standing = state.has_standing;
      info.standing_bid = state.standing;
      info.identities_hidden = hidden;
      if (!hidden) info.standing_bidders = state.standers;
      info.new_bid_count = state.new_bids_this;
      info.sf = state.sf;
      record.licenses[id] = info;
    }
    for (const auto& [id, bidder] : bidders_) {
      record.bidders[id] = {bidder.eligibility, bidder.active_units,
                            bidder.activity_satisfied};
    }
    outcome_.history.push_back(std::move(record));
    for (auto& [id, bidder] : bidders_) {
      bidder.agent->observe(outcome_.history.back());
    }
  }

  const AuctionSetup& setup_;
  std::map<model::LicenseId, LicenseState> states_;
  std::map<model::BidderId, BidderState> bidders_;
  model::AuctionOutcome outcome_;
};

}  // namespace

model::AuctionOutcome run_sequential_amr(const AuctionSetup& setup,
                                         const AgentMap& agents) {
  return OpenAuction(setup, agents).run_sequential();
}

model::AuctionOutcome run_samr(const AuctionSetup& setup,
                               const AgentMap& agents) {
  return OpenAuction(setup, agents).run_simultaneous();
}

model::AuctionOutcome run_hamr(const AuctionSetup& setup,
                               const AgentMap& agents) {
  return OpenAuction(setup, agents).run_hybrid();
}

}  // namespace spectra::mechanisms
