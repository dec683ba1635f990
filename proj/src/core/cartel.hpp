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
#include <set>
#include <string>

#include "core/model.hpp"

namespace spectra::strategies {

// A bid-rotation agreement: each agreed license has exactly one member who
// is supposed to win it (everyone else abstains). Punishment describes what
// loyal members do when they observe a member bidding on another member's
// designated license.
struct CartelAgreement {
  enum class Punishment { NONE, RAISE_ON_DEFECTOR };

  std::set<model::BidderId> members;
  std::map<model::LicenseId, model::BidderId> designated_winner;
  Punishment punishment = Punishment::NONE;
  // Ceiling of punishment raises: a loyal member keeps raising against a
  // defector while the price stays within (1 + markup) times the
  // punisher's own value of the license.
  double markup_fraction = 0.0;

  bool is_member(const model::BidderId& bidder) const {
    return members.count(bidder) != 0;
  }

  std::set<model::LicenseId> designated_to(const model::BidderId& bidder) const {
    std::set<model::LicenseId> licenses;
    for (const auto& [license, winner] : designated_winner) {
      if (winner == bidder) licenses.insert(license);
    }
    return licenses;
  }
};

}  // namespace spectra::strategies
