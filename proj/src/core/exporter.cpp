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

#include "core/exporter.hpp"

#include <map>
#include <sstream>

#include "json.hpp"

namespace spectra::exporter {
namespace {

using nlohmann::json;

json money_json(Money amount) { return money_to_decimal(amount); }

json round_record_to_json(const model::RoundRecord& record) {
  json node;
  node["round_index"] = record.round_index;
  node["cycle_index"] = record.cycle_index;
  if (record.active_license) node["active_license"] = *record.active_license;

  json licenses = json::object();
  for (const auto& [license_id, info] : record.licenses) {
    json entry;
    entry["open"] = info.open;
    entry["has_standing"] = info.has_standing;
    entry["standing_bid"] = money_json(info.standing_bid);
    if (info.identities_hidden) {
      entry["standing_high_bidder"] = "hidden";
    } else {
      entry["standing_bidders"] = info.standing_bidders;
    }
    entry["new_bid_count"] = info.new_bid_count;
    entry["sf"] = info.sf;
    licenses[license_id] = entry;
  }
  node["licenses"] = licenses;

  json bidders = json::object();
  for (const auto& [bidder_id, info] : record.bidders) {
    json entry;
    entry["eligibility_units"] = info.eligibility_units;
    entry["active_units"] = info.active_units;
    entry["activity_satisfied"] = info.activity_satisfied;
    bidders[bidder_id] = entry;
  }
  node["bidders"] = bidders;

  node["ties"] = json::array();
  for (const auto& tie : record.ties) {
    json entry;
    entry["license_id"] = tie.license_id;
    entry["round_index"] = tie.round_index;
    entry["candidates"] = tie.candidates;
    entry["winner"] = tie.winner;
    entry["amount"] = money_json(tie.amount);
    node["ties"].push_back(entry);
  }

  node["rejections"] = json::array();
  for (const auto& rejection : record.rejections) {
    json entry;
    entry["bidder_id"] = rejection.bidder_id;
    entry["license_id"] = rejection.license_id;
    entry["amount"] = money_json(rejection.amount);
    entry["round_index"] = rejection.round_index;
    entry["reason"] = rejection.reason;
    node["rejections"].push_back(entry);
  }

  node["closes"] = json::array();
  for (const auto& close : record.closes) {
    json entry;
    entry["license_id"] = close.license_id;
    entry["round_index"] = close.round_index;
    entry["cycle_index"] = close.cycle_index;
    entry["visit_position"] = close.visit_position;
    if (close.winner) {
      entry["winner"] = *close.winner;
      entry["price"] = money_json(close.price);
    } else {
      entry["winner"] = nullptr;
    }
    node["closes"].push_back(entry);
  }
  return node;
}

}  // namespace

std::string outcome_to_json(const model::AuctionOutcome& outcome) {
  json doc;
  doc["mechanism"] = outcome.mechanism;
  doc["seed"] = outcome.seed;
  doc["rounds_elapsed"] = outcome.rounds_elapsed;

  json allocation = json::object();
  for (const auto& [license_id, winner] : outcome.allocation) {
    allocation[license_id] = winner ? json(*winner) : json(nullptr);
  }
  doc["allocation"] = allocation;

  json prices = json::object();
  for (const auto& [license_id, price] : outcome.gross_prices) {
    prices[license_id] = money_json(price);
  }
  doc["gross_prices"] = prices;

  json payments = json::object();
  for (const auto& [bidder_id, payment] : outcome.payments) {
    payments[bidder_id] = money_json(payment);
  }
  doc["payments"] = payments;

  if (!outcome.sealed_bids.empty()) {
    json sealed = json::object();
    for (const auto& [license_id, book] : outcome.sealed_bids) {
      json entry = json::object();
      for (const auto& [bidder_id, amount] : book) {
        entry[bidder_id] = money_json(amount);
      }
      sealed[license_id] = entry;
    }
    doc["sealed_bids"] = sealed;
  }

  doc["history"] = json::array();
  for (const auto& record : outcome.history) {
    doc["history"].push_back(round_record_to_json(record));
  }
  return doc.dump(2) + "\n";
}

std::string metrics_to_json(const metrics::MetricsReport& report) {
  json doc;
  doc["revenue"] = money_json(report.revenue);
  doc["welfare_achieved"] = money_json(report.welfare_achieved);
  if (report.welfare_optimal) {
    doc["welfare_optimal"] = money_json(*report.welfare_optimal);
    doc["efficiency"] = *report.efficiency;
  } else {
    doc["welfare_optimal"] = nullptr;
    doc["efficiency"] = nullptr;
    doc["efficiency_note"] = "instance exceeds welfare oracle bounds";
  }
  doc["rounds"] = report.rounds;
  doc["unsold_count"] = report.unsold_count;
  if (report.winners_curse_gap) {
    doc["winners_curse_gap"] = money_json(*report.winners_curse_gap);
  }
  return doc.dump(2) + "\n";
}

std::string summary_csv(const scenarios::Scenario& scenario,
                        const model::AuctionOutcome& outcome) {
  std::map<model::LicenseId, const model::CloseEvent*> closes;
  std::map<model::LicenseId, int> final_sf;
  for (const auto& record : outcome.history) {
    for (const auto& close : record.closes) {
      closes[close.license_id] = &close;
    }
    for (const auto& [license_id, info] : record.licenses) {
      final_sf[license_id] = info.sf;
    }
  }

  std::ostringstream out;
  out << "license_id,winner,gross_price,rounds_open,final_sf\n";
  for (const auto& license : scenario.licenses) {
    auto winner = outcome.allocation.find(license.id);
    bool sold = winner != outcome.allocation.end() && winner->second;
    auto close = closes.find(license.id);
    int rounds_open =
        close != closes.end() ? close->second->round_index : 0;
    out << license.id << ',' << (sold ? *winner->second : "") << ','
        << (sold ? format_money(outcome.gross_prices.at(license.id)) : "")
        << ',' << rounds_open << ',' << final_sf[license.id] << '\n';
  }
  return out.str();
}

std::string trace_text(const scenarios::Scenario& scenario,
                       const model::AuctionOutcome& outcome) {
  bool hybrid = outcome.mechanism == "HAMR";
  std::ostringstream out;
  out << outcome.mechanism << " run of scenario '" << scenario.name
      << "' (seed " << outcome.seed << ")\n";
  for (const auto& record : outcome.history) {
    out << (hybrid ? "cycle " : "round ") << record.round_index;
    if (record.active_license) out << " [license " << *record.active_license << "]";
    out << "\n";
    for (const auto& [license_id, info] : record.licenses) {
      out << "  " << license_id << ": ";
      if (!info.open) {
        out << "closed";
      } else if (info.has_standing) {
        out << "standing " << format_money(info.standing_bid);
        if (info.identities_hidden) {
          out << " (identities hidden)";
        } else {
          out << " by ";
          for (std::size_t i = 0; i < info.standing_bidders.size(); ++i) {
            if (i > 0) out << "+";
            out << info.standing_bidders[i];
          }
        }
      } else {
        out << "no bids yet";
      }
      if (info.open) out << ", new bids " << info.new_bid_count;
      if (hybrid && info.open) {
        out << ", SF " << info.sf << "/" << scenario.mechanism.tsf.at(license_id);
      }
      out << "\n";
    }
    for (const auto& tie : record.ties) {
      out << "  tie on " << tie.license_id << " at "
          << format_money(tie.amount) << " among ";
      for (std::size_t i = 0; i < tie.candidates.size(); ++i) {
        if (i > 0) out << ", ";
        out << tie.candidates[i];
      }
      out << " -> " << tie.winner << "\n";
    }
    for (const auto& close : record.closes) {
      out << "  close " << close.license_id;
      if (hybrid) out << " (visit " << close.visit_position << ")";
      if (close.winner) {
        out << ": won by " << *close.winner << " at "
            << format_money(close.price);
      } else {
        out << ": unsold";
      }
      out << "\n";
    }
  }
  out << "allocation:\n";
  for (const auto& [license_id, winner] : outcome.allocation) {
    out << "  " << license_id << " -> " << (winner ? *winner : "(unsold)");
    if (winner) {
      out << " at " << format_money(outcome.gross_prices.at(license_id));
    }
    out << "\n";
  }
  return out.str();
}

std::string collusion_to_json(const deviation::CollusionReport& report) {
  json doc;
  doc["verdict"] = report.verdict;
  doc["breaks"] = report.breaks;
  doc["alternatives_tried"] = report.alternatives_tried;
  doc["members"] = json::array();
  for (const auto& member : report.members) {
    json node;
    node["bidder"] = member.bidder;
    node["baseline_utility"] = money_json(member.baseline_utility);
    node["max_gain"] = money_json(member.max_gain);
    node["trials"] = json::array();
    for (const auto& trial : member.trials) {
      json entry;
      entry["policy"] = trial.alternative.policy;
      entry["utility"] = money_json(trial.utility);
      entry["gain"] = money_json(trial.gain);
      entry["summary"] = trial.summary;
      node["trials"].push_back(entry);
    }
    doc["members"].push_back(node);
  }
  if (!report.witness.empty()) doc["witness"] = report.witness;
  return doc.dump(2) + "\n";
}

}  // namespace spectra::exporter
