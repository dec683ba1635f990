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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/bidding.hpp"
#include "core/cartel.hpp"

namespace spectra::strategies {

// Policy choice for one bidder as declared in a scenario file. `params`
// carries numeric knobs (shading factor "f", demand cap "k", forecast
// override "forecast" in major units); `bundle` is the license set an
// exposure-prone bidder treats as complements.
struct StrategyAssignment {
  model::BidderId bidder_id;
  std::string policy;
  std::map<std::string, double> params;
  std::set<model::LicenseId> bundle;
  std::string trigger = "OWN_DESIGNATED_CLOSED";
};

// Bids every license at its full standalone value in sealed formats; in
// ascending formats raises minimally while price stays within marginal
// value, i.e. behaves like StraightforwardAscending.
class TruthfulSealed : public Strategy {
 public:
  explicit TruthfulSealed(int bidder_index);

  std::map<model::LicenseId, Money> sealed_bids(
      const PublicView& view, const PrivateContext& context) override;
  std::vector<BidIntent> decide(const PublicView& view,
                                const PrivateContext& context) override;

 private:
  int bidder_index_;
};

// Scales every valuation by a fixed factor before bidding. Factors below 1
// shade (classic first-price behavior); factors above 1 model overbidding
// and exist for deviation searches.
class ShadedSealed : public Strategy {
 public:
  ShadedSealed(double factor, int bidder_index);

  std::map<model::LicenseId, Money> sealed_bids(
      const PublicView& view, const PrivateContext& context) override;
  std::vector<BidIntent> decide(const PublicView& view,
                                const PrivateContext& context) override;

 private:
  double factor_;
  int bidder_index_;
};

// Raises by exactly the minimum acceptable amount on every license whose
// next price stays within marginal value, whenever not the sole standing
// bidder. The textbook sincere bidder.
class StraightforwardAscending : public Strategy {
 public:
  explicit StraightforwardAscending(int bidder_index);

  std::map<model::LicenseId, Money> sealed_bids(
      const PublicView& view, const PrivateContext& context) override;
  std::vector<BidIntent> decide(const PublicView& view,
                                const PrivateContext& context) override;

 private:
  int bidder_index_;
};

// Complement bidder that prices unfinished parts of its target bundle into
// early licenses: willingness to pay is standalone value plus a forecast
// (each missing partner's reserve unless overridden) while partners remain
// open, and plain marginal value afterwards, even when completing the
// bundle locks in a loss.
class ExposureChaser : public Strategy {
 public:
  ExposureChaser(std::set<model::LicenseId> bundle,
                 std::optional<Money> forecast, int bidder_index);

  std::map<model::LicenseId, Money> sealed_bids(
      const PublicView& view, const PrivateContext& context) override;
  std::vector<BidIntent> decide(const PublicView& view,
                                const PrivateContext& context) override;

 private:
  Money chase_cap(const PublicView& view, const PrivateContext& context,
                  const LicenseView& license) const;
  std::set<model::LicenseId> partners(
      const model::LicenseId& id, const model::ValuationProfile& profile) const;

  std::set<model::LicenseId> bundle_;
  std::optional<Money> forecast_;
  int bidder_index_;
};

// Straightforward bidding restricted to the `k` highest-surplus licenses at
// a time; the strategic demand-reduction archetype.
class DemandReducer : public Strategy {
 public:
  DemandReducer(int max_licenses, int bidder_index);

  std::map<model::LicenseId, Money> sealed_bids(
      const PublicView& view, const PrivateContext& context) override;
  std::vector<BidIntent> decide(const PublicView& view,
                                const PrivateContext& context) override;

 private:
  int max_licenses_;
  int bidder_index_;
};

// Loyal cartel participant: bids only on its designated licenses (opening
// at reserve, defending with minimum raises up to its own value). Under
// RAISE_ON_DEFECTOR punishment it also raises against a member observed on
// another member's designated license, on the defector's own designated
// licenses, up to (1 + markup) times its own value there. Detection needs
// identity disclosure.
class CartelMember : public Strategy {
 public:
  CartelMember(CartelAgreement agreement, int bidder_index);

  std::map<model::LicenseId, Money> sealed_bids(
      const PublicView& view, const PrivateContext& context) override;
  std::vector<BidIntent> decide(const PublicView& view,
                                const PrivateContext& context) override;
  void observe(const model::RoundRecord& record) override;

  const std::set<model::BidderId>& known_defectors() const {
    return defectors_;
  }

 private:
  void note_standers(const model::LicenseId& license,
                     const std::vector<model::BidderId>& standers);

  CartelAgreement agreement_;
  std::set<model::BidderId> defectors_;
  int bidder_index_;
};

// Plays CartelMember until its trigger fires, then abandons the agreement
// and plays StraightforwardAscending on every open license.
class CartelDefector : public Strategy {
 public:
  enum class Trigger { OWN_DESIGNATED_CLOSED };

  CartelDefector(CartelAgreement agreement, Trigger trigger, int bidder_index);

  std::map<model::LicenseId, Money> sealed_bids(
      const PublicView& view, const PrivateContext& context) override;
  std::vector<BidIntent> decide(const PublicView& view,
                                const PrivateContext& context) override;
  void observe(const model::RoundRecord& record) override;

  bool triggered() const { return triggered_; }

 private:
  CartelAgreement agreement_;
  Trigger trigger_;
  bool triggered_ = false;
  CartelMember loyal_;
  StraightforwardAscending sincere_;
};

// Instantiates the policy named by `assignment`. `bidder_index` is the
// bidder's position among the scenario's sorted bidder ids; policies use it
// to break ties between equally attractive licenses so that symmetric
// bidders spread out deterministically instead of piling onto the same
// license. Cartel policies require `cartel` and membership of the bidder.
std::unique_ptr<Strategy> make_strategy(
    const StrategyAssignment& assignment, int bidder_index,
    const std::optional<CartelAgreement>& cartel);

const std::vector<std::string>& known_policies();

}  // namespace spectra::strategies
