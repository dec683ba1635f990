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

#include "spectra/spectra.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "core/catalog.hpp"
#include "core/deviation.hpp"
#include "core/error.hpp"
#include "core/exporter.hpp"
#include "core/runner.hpp"
#include "core/scenario.hpp"

namespace {

using nlohmann::json;

thread_local std::string t_last_error;

int status_of(spectra::ErrorCode code) { return static_cast<int>(code); }

// Runs `body` and translates every escaping exception into a status code
// plus the thread-local message. Nothing may throw across the C boundary.
template <typename Fn>
int guarded(Fn&& body) {
  try {
    body();
    t_last_error.clear();
    return SPECTRA_OK;
  } catch (const spectra::Error& error) {
    t_last_error = error.what();
    return status_of(error.code());
  } catch (const json::exception& error) {
    t_last_error = error.what();
    return SPECTRA_ERR_PARSE;
  } catch (const std::exception& error) {
    t_last_error = error.what();
    return SPECTRA_ERR_ENGINE;
  } catch (...) {
    t_last_error = "unknown error";
    return SPECTRA_ERR_ENGINE;
  }
}

int fail_invalid(const std::string& message) {
  t_last_error = message;
  return SPECTRA_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& text) {
  char* copy = static_cast<char*>(std::malloc(text.size() + 1));
  if (copy == nullptr) {
    throw spectra::Error(spectra::ErrorCode::kEngine, "out of memory");
  }
  std::memcpy(copy, text.c_str(), text.size() + 1);
  return copy;
}

json parse_object(const char* text, const std::string& what) {
  json doc = json::parse(text);
  if (!doc.is_object()) {
    throw spectra::Error(spectra::ErrorCode::kValidation,
                         what + " must be a JSON object");
  }
  return doc;
}

spectra::runner::RunOverrides parse_overrides(const char* overrides_json) {
  spectra::runner::RunOverrides overrides;
  if (overrides_json == nullptr) {
    return overrides;
  }
  json doc = parse_object(overrides_json, "overrides");
  for (const auto& [key, value] : doc.items()) {
    if (key == "mechanism") {
      if (!value.is_string()) {
        throw spectra::Error(spectra::ErrorCode::kValidation,
                             "overrides.mechanism must be a string");
      }
      overrides.mechanism =
          spectra::mechanisms::mechanism_from_string(value.get<std::string>());
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw spectra::Error(
            spectra::ErrorCode::kValidation,
            "overrides.seed must be a non-negative integer");
      }
      overrides.seed = value.get<std::uint64_t>();
    } else if (key == "inc") {
      if (!value.is_number()) {
        throw spectra::Error(spectra::ErrorCode::kValidation,
                             "overrides.inc must be a number");
      }
      overrides.increment =
          spectra::money_from_decimal(value.get<double>(), "overrides.inc");
    } else if (key == "tsf") {
      if (!value.is_number_integer()) {
        throw spectra::Error(spectra::ErrorCode::kValidation,
                             "overrides.tsf must be an integer");
      }
      overrides.tsf = value.get<int>();
    } else if (key == "activity") {
      if (!value.is_number()) {
        throw spectra::Error(spectra::ErrorCode::kValidation,
                             "overrides.activity must be a number");
      }
      overrides.activity_fraction = value.get<double>();
    } else if (key == "credit") {
      if (!value.is_number()) {
        throw spectra::Error(spectra::ErrorCode::kValidation,
                             "overrides.credit must be a number");
      }
      overrides.credit_fraction = value.get<double>();
    } else {
      throw spectra::Error(spectra::ErrorCode::kValidation,
                           "overrides: unknown key '" + key + "'");
    }
  }
  return overrides;
}

std::map<std::string, double> parse_params(const char* params_json) {
  std::map<std::string, double> params;
  if (params_json == nullptr) {
    return params;
  }
  json doc = parse_object(params_json, "params");
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) {
      throw spectra::Error(spectra::ErrorCode::kValidation,
                           "params." + key + " must be a number");
    }
    params[key] = value.get<double>();
  }
  return params;
}

}  // namespace

struct spectra_scenario {
  spectra::scenarios::Scenario scenario;
};

struct spectra_run_result {
  std::string outcome_json;
  std::string metrics_json;
  std::string summary_csv;
  std::string trace_text;
};

extern "C" {

const char* spectra_version(void) { return "1.0.0"; }

const char* spectra_last_error(void) { return t_last_error.c_str(); }

void spectra_string_free(char* text) { std::free(text); }

int spectra_catalog_list(char** out_json) {
  if (out_json == nullptr) {
    return fail_invalid("out_json must not be null");
  }
  return guarded([&] {
    json names = json::array();
    for (const auto& name : spectra::scenarios::catalog_names()) {
      names.push_back(name);
    }
    *out_json = dup_string(names.dump());
  });
}

int spectra_scenario_load_json(const char* json_text, spectra_scenario** out) {
  if (json_text == nullptr || out == nullptr) {
    return fail_invalid("json_text and out must not be null");
  }
  return guarded([&] {
    auto scenario = spectra::scenarios::load_scenario(json_text);
    *out = new spectra_scenario{std::move(scenario)};
  });
}

int spectra_scenario_from_catalog(const char* name, const char* params_json,
                                  spectra_scenario** out) {
  if (name == nullptr || out == nullptr) {
    return fail_invalid("name and out must not be null");
  }
  return guarded([&] {
    auto scenario =
        spectra::scenarios::build_scenario(name, parse_params(params_json));
    *out = new spectra_scenario{std::move(scenario)};
  });
}

int spectra_scenario_to_json(const spectra_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) {
    return fail_invalid("scenario and out must not be null");
  }
  return guarded([&] {
    *out = dup_string(spectra::scenarios::save_scenario(scenario->scenario));
  });
}

void spectra_scenario_free(spectra_scenario* scenario) { delete scenario; }

int spectra_run(const spectra_scenario* scenario, const char* overrides_json,
                spectra_run_result** out) {
  if (scenario == nullptr || out == nullptr) {
    return fail_invalid("scenario and out must not be null");
  }
  return guarded([&] {
    auto overrides = parse_overrides(overrides_json);
    auto result = spectra::runner::run(scenario->scenario, overrides);
    auto* boxed = new spectra_run_result{
        spectra::exporter::outcome_to_json(result.outcome),
        spectra::exporter::metrics_to_json(result.metrics),
        spectra::exporter::summary_csv(result.effective, result.outcome),
        spectra::exporter::trace_text(result.effective, result.outcome)};
    *out = boxed;
  });
}

const char* spectra_result_outcome_json(const spectra_run_result* result) {
  return result == nullptr ? nullptr : result->outcome_json.c_str();
}

const char* spectra_result_metrics_json(const spectra_run_result* result) {
  return result == nullptr ? nullptr : result->metrics_json.c_str();
}

const char* spectra_result_summary_csv(const spectra_run_result* result) {
  return result == nullptr ? nullptr : result->summary_csv.c_str();
}

const char* spectra_result_trace_text(const spectra_run_result* result) {
  return result == nullptr ? nullptr : result->trace_text.c_str();
}

void spectra_result_free(spectra_run_result* result) { delete result; }

int spectra_collusion_viability(const spectra_scenario* scenario,
                                const char* overrides_json, char** out_json) {
  if (scenario == nullptr || out_json == nullptr) {
    return fail_invalid("scenario and out_json must not be null");
  }
  return guarded([&] {
    auto overrides = parse_overrides(overrides_json);
    auto effective =
        spectra::runner::apply_overrides(scenario->scenario, overrides);
    auto report = spectra::deviation::collusion_viability(effective);
    *out_json = dup_string(spectra::exporter::collusion_to_json(report));
  });
}

}  // extern "C"
