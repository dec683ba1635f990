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

#include <string>

#include "core/deviation.hpp"
#include "core/metrics.hpp"
#include "core/model.hpp"
#include "core/scenario.hpp"

namespace spectra::exporter {

// All exports are deterministic byte for byte: object keys are sorted and
// money renders as fixed two-decimal major units.

std::string outcome_to_json(const model::AuctionOutcome& outcome);

std::string metrics_to_json(const metrics::MetricsReport& report);

// One row per license: license_id,winner,gross_price,rounds_open,final_sf.
// rounds_open is the round in which the license closed; winner and price
// are empty for unsold licenses.
std::string summary_csv(const scenarios::Scenario& scenario,
                        const model::AuctionOutcome& outcome);

// Human-readable round-by-round account, including per-cycle SF/TSF for
// the hybrid mechanism.
std::string trace_text(const scenarios::Scenario& scenario,
                       const model::AuctionOutcome& outcome);

std::string collusion_to_json(const deviation::CollusionReport& report);

}  // namespace spectra::exporter
