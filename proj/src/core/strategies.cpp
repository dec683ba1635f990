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

#include "core/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace spectra::strategies {
namespace {

constexpr double kUnitsEpsilon = 1e-9;
constexpr std::size_t kNoCapacityLimit = std::numeric_limits<std::size_t>::max();

Money net_of(const model::Bidder& bidder, Money gross) {
  return model::credit_adjusted_payment(gross, bidder);
}

// Largest gross amount whose credit-adjusted payment stays within
// `net_cap`. Inverts the rounded payment formula; the adjustment loops run
// at most a couple of steps around the analytic seed.
Money max_gross_for_net(const model::Bidder& bidder, Money net_cap) {
  if (net_cap < 0) return -1;
  if (bidder.credit_fraction <= 0.0) return net_cap;
  double keep = 1.0 - bidder.credit_fraction;
  Money gross = static_cast<Money>(
      (static_cast<double>(net_cap) + 0.5) / keep);
  while (gross > 0 && net_of(bidder, gross) > net_cap) --gross;
  while (net_of(bidder, gross + 1) <= net_cap) ++gross;
  return gross;
}

// Accumulates raise intents while mirroring the engine's feasibility
// checks, so no emitted bid can be rejected for budget, bandwidth cap, or
// eligibility reasons.
class IntentBuilder {
 public:
  IntentBuilder(const PublicView& view, const PrivateContext& context)
      : view_(view), context_(context) {
    bandwidth_ = context.region_bandwidth_held;
    for (const auto& license : view.open_licenses) {
      if (license.self_standing) units_ += license.activity_weight;
    }
  }

  bool try_raise(const LicenseView& license) {
    if (license.self_sole_standing) return false;
    if (view_.biddable && license.id != *view_.biddable) return false;
    if (emitted_.count(license.id)) return false;
    Money amount = license.min_next_bid;
    Money delta = net_of(*context_.bidder, amount) -
                  (license.self_standing
                       ? net_of(*context_.bidder, license.standing_bid)
                       : 0);
    if (context_.remaining_budget &&
        spent_ + delta > *context_.remaining_budget) {
      return false;
    }
    if (!license.self_standing) {
      if (context_.bidder->bandwidth_cap_mhz &&
          bandwidth_[license.region_id] + license.bandwidth_mhz >
              *context_.bidder->bandwidth_cap_mhz + kUnitsEpsilon) {
        return false;
      }
      bool activity_rule = view_.kind == mechanisms::MechanismKind::SAMR ||
                           view_.kind == mechanisms::MechanismKind::HAMR;
      if (activity_rule && units_ + license.activity_weight >
                               view_.eligibility + kUnitsEpsilon) {
        return false;
      }
    }
    spent_ += delta;
    if (!license.self_standing) {
      bandwidth_[license.region_id] += license.bandwidth_mhz;
      units_ += license.activity_weight;
    }
    emitted_.insert(license.id);
    intents_.push_back({license.id, amount});
    return true;
  }

  std::vector<BidIntent> take() { return std::move(intents_); }

 private:
  const PublicView& view_;
  const PrivateContext& context_;
  Money spent_ = 0;
  std::map<std::string, double> bandwidth_;
  double units_ = 0.0;
  std::set<model::LicenseId> emitted_;
  std::vector<BidIntent> intents_;
};

struct Candidate {
  const LicenseView* license = nullptr;
  Money cap = 0;
  Money surplus = 0;
};

// Rotates every run of equal-key candidates left by `bidder_index`, so
// that bidders facing identical options spread across them instead of all
// picking the first. Candidates must already be sorted.
template <typename KeyFn>
void rotate_equal_groups(std::vector<Candidate>& candidates, int bidder_index,
                         KeyFn key) {
  std::size_t start = 0;
  while (start < candidates.size()) {
    std::size_t end = start + 1;
    while (end < candidates.size() &&
           key(candidates[end]) == key(candidates[start])) {
      ++end;
    }
    std::size_t size = end - start;
    if (size > 1) {
      std::rotate(candidates.begin() + start,
                  candidates.begin() + start +
                      static_cast<std::size_t>(bidder_index) % size,
                  candidates.begin() + end);
    }
    start = end;
  }
}

// Straightforward raising against per-license value caps, pursuing at most
// `capacity` licenses at a time (current standings count toward capacity).
// A candidate blocked by budget, bandwidth, or eligibility is skipped
// without consuming capacity; a candidate that merely is not biddable in
// this solicitation still consumes capacity, since the policy is saving its
// demand for that license's turn.
template <typename CapFn>
std::vector<BidIntent> plan_raises(const PublicView& view,
                                   const PrivateContext& context, CapFn cap_of,
                                   std::size_t capacity, int bidder_index) {
  std::vector<Candidate> candidates;
  for (const auto& license : view.open_licenses) {
    Candidate candidate;
    candidate.license = &license;
    candidate.cap = cap_of(license);
    Money entry = net_of(*context.bidder, license.min_next_bid);
    if (!license.self_standing && entry > candidate.cap) continue;
    Money floor = license.self_standing
                      ? net_of(*context.bidder, license.standing_bid)
                      : entry;
    candidate.surplus = candidate.cap - floor;
    candidates.push_back(candidate);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.surplus != b.surplus) return a.surplus > b.surplus;
              return a.license->id < b.license->id;
            });
  rotate_equal_groups(candidates, bidder_index,
                      [](const Candidate& c) { return c.surplus; });

  IntentBuilder builder(view, context);
  std::size_t pursued = 0;
  for (const Candidate& candidate : candidates) {
    if (pursued >= capacity) break;
    const LicenseView& license = *candidate.license;
    Money next_cost = net_of(*context.bidder, license.min_next_bid);
    if (license.self_standing) {
      ++pursued;
      if (!license.self_sole_standing && next_cost <= candidate.cap) {
        builder.try_raise(license);
      }
      continue;
    }
    if (view.biddable && license.id != *view.biddable) {
      ++pursued;
      continue;
    }
    if (builder.try_raise(license)) ++pursued;
  }
  return builder.take();
}

// Sealed offer at `target`, clamped to what the budget can cover and
// dropped when the license alone would break the bandwidth cap or the
// clamped amount falls below reserve.
void add_sealed_bid(std::map<model::LicenseId, Money>* out,
                    const LicenseView& license, const PrivateContext& context,
                    Money target) {
  Money gross = target;
  if (context.remaining_budget) {
    gross = std::min(gross,
                     max_gross_for_net(*context.bidder,
                                       *context.remaining_budget));
  }
  if (context.bidder->bandwidth_cap_mhz) {
    auto held = context.region_bandwidth_held.find(license.region_id);
    double in_region = held == context.region_bandwidth_held.end()
                           ? 0.0
                           : held->second;
    if (in_region + license.bandwidth_mhz >
        *context.bidder->bandwidth_cap_mhz + kUnitsEpsilon) {
      return;
    }
  }
  if (gross < license.reserve) return;
  (*out)[license.id] = gross;
}

std::map<model::LicenseId, Money> sealed_scaled_values(
    const PublicView& view, const PrivateContext& context, double factor) {
  std::map<model::LicenseId, Money> bids;
  for (const auto& license : view.open_licenses) {
    Money value = context.profile->base_value(license.id);
    Money target = factor == 1.0
                       ? value
                       : round_half_up(factor * static_cast<double>(value));
    add_sealed_bid(&bids, license, context, target);
  }
  return bids;
}

double require_param(const StrategyAssignment& assignment, const char* name) {
  auto found = assignment.params.find(name);
  if (found == assignment.params.end()) {
    throw Error(ErrorCode::kValidation,
                "policy '" + assignment.policy + "' for bidder '" +
                    assignment.bidder_id + "' needs parameter '" + name + "'");
  }
  return found->second;
}

}  // namespace

TruthfulSealed::TruthfulSealed(int bidder_index)
    : bidder_index_(bidder_index) {}

std::map<model::LicenseId, Money> TruthfulSealed::sealed_bids(
    const PublicView& view, const PrivateContext& context) {
  return sealed_scaled_values(view, context, 1.0);
}

std::vector<BidIntent> TruthfulSealed::decide(const PublicView& view,
                                              const PrivateContext& context) {
  return plan_raises(
      view, context,
      [&](const LicenseView& license) {
        return context.profile->marginal_value(context.holdings, license.id);
      },
      kNoCapacityLimit, bidder_index_);
}

ShadedSealed::ShadedSealed(double factor, int bidder_index)
    : factor_(factor), bidder_index_(bidder_index) {}

std::map<model::LicenseId, Money> ShadedSealed::sealed_bids(
    const PublicView& view, const PrivateContext& context) {
  return sealed_scaled_values(view, context, factor_);
}

std::vector<BidIntent> ShadedSealed::decide(const PublicView& view,
                                            const PrivateContext& context) {
  return plan_raises(
      view, context,
      [&](const LicenseView& license) {
        Money marginal =
            context.profile->marginal_value(context.holdings, license.id);
        return round_half_up(factor_ * static_cast<double>(marginal));
      },
      kNoCapacityLimit, bidder_index_);
}

StraightforwardAscending::StraightforwardAscending(int bidder_index)
    : bidder_index_(bidder_index) {}

std::map<model::LicenseId, Money> StraightforwardAscending::sealed_bids(
    const PublicView& view, const PrivateContext& context) {
  return sealed_scaled_values(view, context, 1.0);
}

std::vector<BidIntent> StraightforwardAscending::decide(
    const PublicView& view, const PrivateContext& context) {
  return plan_raises(
      view, context,
      [&](const LicenseView& license) {
        return context.profile->marginal_value(context.holdings, license.id);
      },
      kNoCapacityLimit, bidder_index_);
}

ExposureChaser::ExposureChaser(std::set<model::LicenseId> bundle,
                               std::optional<Money> forecast, int bidder_index)
    : bundle_(std::move(bundle)),
      forecast_(forecast),
      bidder_index_(bidder_index) {}

std::set<model::LicenseId> ExposureChaser::partners(
    const model::LicenseId& id, const model::ValuationProfile& profile) const {
  std::set<model::LicenseId> result;
  if (!bundle_.empty()) {
    if (bundle_.count(id)) {
      result = bundle_;
      result.erase(id);
    }
    return result;
  }
  for (const auto& adjustment : profile.adjustments()) {
    if (adjustment.amount > 0 && adjustment.licenses.count(id)) {
      for (const auto& partner : adjustment.licenses) {
        if (partner != id) result.insert(partner);
      }
    }
  }
  return result;
}

Money ExposureChaser::chase_cap(const PublicView& view,
                                const PrivateContext& context,
                                const LicenseView& license) const {
  Money marginal =
      context.profile->marginal_value(context.holdings, license.id);
  Money bonus = 0;
  for (const auto& partner : partners(license.id, *context.profile)) {
    if (context.holdings.count(partner)) continue;
    const LicenseView* open = view.find_open(partner);
    if (open == nullptr) continue;
    bonus += forecast_ ? *forecast_ : open->reserve;
  }
  return std::max(marginal,
                  context.profile->base_value(license.id) + bonus);
}

std::map<model::LicenseId, Money> ExposureChaser::sealed_bids(
    const PublicView& view, const PrivateContext& context) {
  std::map<model::LicenseId, Money> bids;
  for (const auto& license : view.open_licenses) {
    add_sealed_bid(&bids, license, context,
                   chase_cap(view, context, license));
  }
  return bids;
}

std::vector<BidIntent> ExposureChaser::decide(const PublicView& view,
                                              const PrivateContext& context) {
  return plan_raises(
      view, context,
      [&](const LicenseView& license) {
        return chase_cap(view, context, license);
      },
      kNoCapacityLimit, bidder_index_);
}

DemandReducer::DemandReducer(int max_licenses, int bidder_index)
    : max_licenses_(max_licenses), bidder_index_(bidder_index) {}

std::map<model::LicenseId, Money> DemandReducer::sealed_bids(
    const PublicView& view, const PrivateContext& context) {
  std::vector<Candidate> candidates;
  for (const auto& license : view.open_licenses) {
    Candidate candidate;
    candidate.license = &license;
    candidate.cap = context.profile->base_value(license.id);
    candidate.surplus = candidate.cap;
    candidates.push_back(candidate);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.surplus != b.surplus) return a.surplus > b.surplus;
              return a.license->id < b.license->id;
            });
  rotate_equal_groups(candidates, bidder_index_,
                      [](const Candidate& c) { return c.surplus; });
  std::map<model::LicenseId, Money> bids;
  for (const Candidate& candidate : candidates) {
    if (bids.size() >= static_cast<std::size_t>(max_licenses_)) break;
    add_sealed_bid(&bids, *candidate.license, context, candidate.cap);
  }
  return bids;
}

std::vector<BidIntent> DemandReducer::decide(const PublicView& view,
                                             const PrivateContext& context) {
  return plan_raises(
      view, context,
      [&](const LicenseView& license) {
        return context.profile->marginal_value(context.holdings, license.id);
      },
      static_cast<std::size_t>(max_licenses_), bidder_index_);
}

CartelMember::CartelMember(CartelAgreement agreement, int bidder_index)
    : agreement_(std::move(agreement)), bidder_index_(bidder_index) {}

void CartelMember::note_standers(const model::LicenseId& license,
                                 const std::vector<model::BidderId>& standers) {
  auto designated = agreement_.designated_winner.find(license);
  if (designated == agreement_.designated_winner.end()) return;
  for (const auto& stander : standers) {
    if (stander != designated->second && agreement_.is_member(stander)) {
      defectors_.insert(stander);
    }
  }
}

void CartelMember::observe(const model::RoundRecord& record) {
  for (const auto& [license, info] : record.licenses) {
    if (!info.identities_hidden && info.has_standing) {
      note_standers(license, info.standing_bidders);
    }
  }
}

std::map<model::LicenseId, Money> CartelMember::sealed_bids(
    const PublicView& view, const PrivateContext& context) {
  std::map<model::LicenseId, Money> bids;
  for (const auto& license : view.open_licenses) {
    auto designated = agreement_.designated_winner.find(license.id);
    if (designated == agreement_.designated_winner.end() ||
        designated->second != context.bidder->id) {
      continue;
    }
    add_sealed_bid(&bids, license, context, license.reserve);
  }
  return bids;
}

std::vector<BidIntent> CartelMember::decide(const PublicView& view,
                                            const PrivateContext& context) {
  for (const auto& license : view.open_licenses) {
    if (license.has_standing) {
      note_standers(license.id, license.standing_bidders);
    }
  }

  IntentBuilder builder(view, context);
  const model::BidderId& self = context.bidder->id;
  for (const auto& license : view.open_licenses) {
    auto designated = agreement_.designated_winner.find(license.id);
    if (designated == agreement_.designated_winner.end()) continue;
    if (designated->second == self) {
      Money cap =
          context.profile->marginal_value(context.holdings, license.id);
      if (!license.self_sole_standing &&
          net_of(*context.bidder, license.min_next_bid) <= cap) {
        builder.try_raise(license);
      }
      continue;
    }
    if (agreement_.punishment != CartelAgreement::Punishment::RAISE_ON_DEFECTOR)
      continue;
    if (!defectors_.count(designated->second)) continue;
    bool defector_standing =
        std::find(license.standing_bidders.begin(),
                  license.standing_bidders.end(),
                  designated->second) != license.standing_bidders.end();
    if (!defector_standing) continue;
    Money cap = round_half_up(
        (1.0 + agreement_.markup_fraction) *
        static_cast<double>(context.profile->base_value(license.id)));
    if (!license.self_sole_standing &&
        net_of(*context.bidder, license.min_next_bid) <= cap) {
      builder.try_raise(license);
    }
  }
  return builder.take();
}

CartelDefector::CartelDefector(CartelAgreement agreement, Trigger trigger,
                               int bidder_index)
    : agreement_(std::move(agreement)),
      trigger_(trigger),
      loyal_(agreement_, bidder_index),
      sincere_(bidder_index) {}

void CartelDefector::observe(const model::RoundRecord& record) {
  loyal_.observe(record);
}

std::map<model::LicenseId, Money> CartelDefector::sealed_bids(
    const PublicView& view, const PrivateContext& context) {
  return loyal_.sealed_bids(view, context);
}

std::vector<BidIntent> CartelDefector::decide(const PublicView& view,
                                              const PrivateContext& context) {
  if (!triggered_ && trigger_ == Trigger::OWN_DESIGNATED_CLOSED) {
    for (const auto& closed : view.closed_licenses) {
      auto designated = agreement_.designated_winner.find(closed.id);
      if (designated != agreement_.designated_winner.end() &&
          designated->second == context.bidder->id) {
        triggered_ = true;
        break;
      }
    }
  }
  return triggered_ ? sincere_.decide(view, context)
                    : loyal_.decide(view, context);
}

std::unique_ptr<Strategy> make_strategy(
    const StrategyAssignment& assignment, int bidder_index,
    const std::optional<CartelAgreement>& cartel) {
  const std::string& policy = assignment.policy;
  if (policy == "TruthfulSealed") {
    return std::make_unique<TruthfulSealed>(bidder_index);
  }
  if (policy == "ShadedSealed") {
    double factor = require_param(assignment, "f");
    if (factor <= 0.0 || factor >= 10.0) {
      throw Error(ErrorCode::kValidation,
                  "ShadedSealed factor must lie in (0, 10), got " +
                      std::to_string(factor));
    }
    return std::make_unique<ShadedSealed>(factor, bidder_index);
  }
  if (policy == "StraightforwardAscending") {
    return std::make_unique<StraightforwardAscending>(bidder_index);
  }
  if (policy == "ExposureChaser") {
    std::optional<Money> forecast;
    auto param = assignment.params.find("forecast");
    if (param != assignment.params.end()) {
      forecast = money_from_decimal(param->second, "forecast");
    }
    return std::make_unique<ExposureChaser>(assignment.bundle, forecast,
                                            bidder_index);
  }
  if (policy == "DemandReducer") {
    double k = require_param(assignment, "k");
    if (k < 1.0 || k != std::floor(k)) {
      throw Error(ErrorCode::kValidation,
                  "DemandReducer needs an integer k >= 1, got " +
                      std::to_string(k));
    }
    return std::make_unique<DemandReducer>(static_cast<int>(k), bidder_index);
  }
  if (policy == "CartelMember" || policy == "CartelDefector") {
    if (!cartel) {
      throw Error(ErrorCode::kValidation,
                  policy + " for bidder '" + assignment.bidder_id +
                      "' requires a cartel agreement in the scenario");
    }
    if (!cartel->is_member(assignment.bidder_id)) {
      throw Error(ErrorCode::kValidation,
                  "bidder '" + assignment.bidder_id +
                      "' plays " + policy + " but is not a cartel member");
    }
    if (policy == "CartelMember") {
      return std::make_unique<CartelMember>(*cartel, bidder_index);
    }
    if (assignment.trigger != "OWN_DESIGNATED_CLOSED") {
      throw Error(ErrorCode::kValidation,
                  "unknown CartelDefector trigger '" + assignment.trigger +
                      "'");
    }
    return std::make_unique<CartelDefector>(
        *cartel, CartelDefector::Trigger::OWN_DESIGNATED_CLOSED, bidder_index);
  }
  throw Error(ErrorCode::kValidation, "unknown policy '" + policy + "'");
}

const std::vector<std::string>& known_policies() {
  static const std::vector<std::string> names = {
      "TruthfulSealed",     "ShadedSealed",  "StraightforwardAscending",
      "ExposureChaser",     "DemandReducer", "CartelMember",
      "CartelDefector"};
  return names;
}

}  // namespace spectra::strategies
