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

// Batch front end for the auction laboratory. Talks to the engine
// exclusively through the shared library's C interface; every artifact it
// writes is a pure function of (scenario, flags, seed).
//
// Exit codes: 0 success, 2 usage error, 3 scenario load error, 4 engine
// error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectra/spectra.h"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitLoad = 3;
constexpr int kExitEngine = 4;

const std::vector<std::string> kAllMechanisms = {"FPSB", "VICKREY", "SEQ_AMR",
                                                 "SAMR", "HAMR"};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ToolError : std::runtime_error {
  ToolError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code(exit_code) {}
  int exit_code;
};

int exit_code_for(int status) {
  return status == SPECTRA_ERR_ENGINE || status == SPECTRA_ERR_ORACLE_BOUND
             ? kExitEngine
             : kExitLoad;
}

void check(int status) {
  if (status != SPECTRA_OK) {
    throw ToolError(exit_code_for(status), spectra_last_error());
  }
}

struct ScenarioDeleter {
  void operator()(spectra_scenario* s) const { spectra_scenario_free(s); }
};
struct ResultDeleter {
  void operator()(spectra_run_result* r) const { spectra_result_free(r); }
};
using ScenarioPtr = std::unique_ptr<spectra_scenario, ScenarioDeleter>;
using ResultPtr = std::unique_ptr<spectra_run_result, ResultDeleter>;

std::string take_string(char* owned) {
  std::string copy = owned == nullptr ? "" : owned;
  spectra_string_free(owned);
  return copy;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// Common inputs shared by run, compare, and sweep.
struct CommonArgs {
  std::string scenario;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

void add_common_flags(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--scenario", args->scenario,
                  "Catalog scenario name or path to a scenario JSON file")
      ->required();
  cmd->add_option("--param", args->params,
                  "Catalog scenario parameter as key=value (repeatable)");
  cmd->add_option("--seed", args->seed,
                  "Seed override (default: SPECTRA_SEED env, then scenario)");
  cmd->add_option("--out", args->out_dir,
                  "Directory for output artifacts (default: .)");
}

std::optional<std::uint64_t> effective_seed(
    const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return flag_seed;
  const char* env = std::getenv("SPECTRA_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    unsigned long long value = std::stoull(env, &used);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return static_cast<std::uint64_t>(value);
  } catch (const std::exception&) {
    throw UsageError(std::string("SPECTRA_SEED is not a valid seed: ") + env);
  }
}

std::string params_to_json(const std::vector<std::string>& params) {
  if (params.empty()) return "";
  json doc = json::object();
  for (const auto& pair : params) {
    auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--param expects key=value, got '" + pair + "'");
    }
    std::string key = pair.substr(0, eq);
    std::string text = pair.substr(eq + 1);
    try {
      std::size_t used = 0;
      double value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      doc[key] = value;
    } catch (const std::exception&) {
      throw UsageError("--param " + key + ": '" + text + "' is not a number");
    }
  }
  return doc.dump();
}

ScenarioPtr load_scenario_arg(const CommonArgs& args) {
  spectra_scenario* raw = nullptr;
  if (std::filesystem::exists(args.scenario) &&
      !std::filesystem::is_directory(args.scenario)) {
    if (!args.params.empty()) {
      throw UsageError("--param only applies to catalog scenarios");
    }
    std::ifstream in(args.scenario, std::ios::binary);
    if (!in) {
      throw ToolError(kExitLoad, "cannot read " + args.scenario);
    }
    std::ostringstream text;
    text << in.rdbuf();
    check(spectra_scenario_load_json(text.str().c_str(), &raw));
  } else {
    std::string params = params_to_json(args.params);
    check(spectra_scenario_from_catalog(
        args.scenario.c_str(), params.empty() ? nullptr : params.c_str(),
        &raw));
  }
  return ScenarioPtr(raw);
}

// Overrides document for spectra_run; fields left unset are omitted.
struct Overrides {
  std::optional<std::string> mechanism;
  std::optional<std::uint64_t> seed;
  std::optional<double> inc;
  std::optional<int> tsf;
  std::optional<double> activity;
  std::optional<double> credit;

  std::string to_json() const {
    json doc = json::object();
    if (mechanism) doc["mechanism"] = *mechanism;
    if (seed) doc["seed"] = *seed;
    if (inc) doc["inc"] = *inc;
    if (tsf) doc["tsf"] = *tsf;
    if (activity) doc["activity"] = *activity;
    if (credit) doc["credit"] = *credit;
    return doc.dump();
  }
};

ResultPtr run_scenario(const spectra_scenario* scenario,
                       const Overrides& overrides) {
  spectra_run_result* raw = nullptr;
  std::string doc = overrides.to_json();
  check(spectra_run(scenario, doc == "{}" ? nullptr : doc.c_str(), &raw));
  return ResultPtr(raw);
}

// Writes via a temp file plus rename so partially written artifacts are
// never observed at the final path.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ToolError(kExitEngine, "cannot write " + tmp.string());
    }
    out << content;
    if (!out.good()) {
      throw ToolError(kExitEngine, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw ToolError(kExitEngine,
                    "cannot move " + tmp.string() + " to " + path.string());
  }
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw ToolError(kExitEngine, "cannot create directory " + out_dir);
  }
}

bool scenario_has_cartel(const spectra_scenario* scenario) {
  char* owned = nullptr;
  check(spectra_scenario_to_json(scenario, &owned));
  json doc = json::parse(take_string(owned));
  return doc.contains("cartel") && !doc["cartel"].is_null();
}

std::string collusion_verdict(const spectra_scenario* scenario,
                              const Overrides& overrides) {
  char* owned = nullptr;
  std::string doc_text = overrides.to_json();
  check(spectra_collusion_viability(
      scenario, doc_text == "{}" ? nullptr : doc_text.c_str(), &owned));
  json doc = json::parse(take_string(owned));
  return doc.at("verdict").get<std::string>();
}

std::string format_number(const json& value) {
  if (value.is_null()) return "";
  if (value.is_number()) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value.get<double>());
    return buffer;
  }
  return value.dump();
}

std::string format_money_cell(const json& value) {
  if (value.is_null()) return "";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value.get<double>());
  return buffer;
}

int cmd_list() {
  char* owned = nullptr;
  check(spectra_catalog_list(&owned));
  json names = json::parse(take_string(owned));
  for (const auto& name : names) {
    std::cout << name.get<std::string>() << "\n";
  }
  return 0;
}

struct RunFlags {
  CommonArgs common;
  std::optional<std::string> mechanism;
  std::optional<double> inc;
  std::optional<int> tsf;
  std::optional<double> activity;
  std::optional<double> credit;
  std::string format = "all";
  bool verbose = false;
};

Overrides overrides_from(const RunFlags& flags) {
  Overrides overrides;
  overrides.mechanism = flags.mechanism;
  overrides.seed = effective_seed(flags.common.seed);
  overrides.inc = flags.inc;
  overrides.tsf = flags.tsf;
  overrides.activity = flags.activity;
  overrides.credit = flags.credit;
  return overrides;
}

int cmd_run(const RunFlags& flags) {
  if (flags.format != "all" && flags.format != "json" &&
      flags.format != "csv") {
    throw UsageError("--format must be one of: json, csv, all");
  }
  ScenarioPtr scenario = load_scenario_arg(flags.common);
  ResultPtr result = run_scenario(scenario.get(), overrides_from(flags));

  ensure_out_dir(flags.common.out_dir);
  std::filesystem::path dir(flags.common.out_dir);
  bool want_json = flags.format == "all" || flags.format == "json";
  bool want_csv = flags.format == "all" || flags.format == "csv";
  if (want_json) {
    write_file_atomic(dir / "outcome.json",
                      spectra_result_outcome_json(result.get()));
    write_file_atomic(dir / "metrics.json",
                      spectra_result_metrics_json(result.get()));
  }
  if (want_csv) {
    write_file_atomic(dir / "summary.csv",
                      spectra_result_summary_csv(result.get()));
  }
  if (flags.format == "all") {
    write_file_atomic(dir / "trace.txt",
                      spectra_result_trace_text(result.get()));
  }

  json metrics = json::parse(spectra_result_metrics_json(result.get()));
  json outcome = json::parse(spectra_result_outcome_json(result.get()));
  std::cout << "mechanism " << outcome.at("mechanism").get<std::string>()
            << ", seed " << outcome.at("seed").get<std::uint64_t>()
            << ", rounds " << metrics.at("rounds").get<int>() << "\n";
  std::cout << "revenue " << format_money_cell(metrics.at("revenue"));
  if (!metrics.at("efficiency").is_null()) {
    std::cout << ", efficiency " << format_number(metrics.at("efficiency"));
  }
  std::cout << "\n";
  for (const auto& [license_id, winner] : outcome.at("allocation").items()) {
    std::cout << "  " << license_id << " -> ";
    if (winner.is_null()) {
      std::cout << "(unsold)\n";
    } else {
      std::cout << winner.get<std::string>() << " at "
                << format_money_cell(
                       outcome.at("gross_prices").at(license_id))
                << "\n";
    }
  }
  if (flags.verbose) {
    std::cout << spectra_result_trace_text(result.get());
  }
  std::cout << "artifacts written to " << dir.string() << "\n";
  return 0;
}

struct CompareFlags {
  CommonArgs common;
  std::string mechanisms;
};

int cmd_compare(const CompareFlags& flags) {
  std::vector<std::string> mechanisms = flags.mechanisms.empty()
                                            ? kAllMechanisms
                                            : split_list(flags.mechanisms);
  if (mechanisms.empty()) {
    throw UsageError("--mechanism list is empty");
  }
  ScenarioPtr scenario = load_scenario_arg(flags.common);
  bool with_collusion = scenario_has_cartel(scenario.get());
  std::optional<std::uint64_t> seed = effective_seed(flags.common.seed);

  std::ostringstream csv;
  csv << "mechanism,revenue,efficiency,rounds";
  if (with_collusion) csv << ",collusion";
  csv << "\n";

  std::printf("%-8s  %12s  %10s  %7s%s\n", "mech", "revenue", "efficiency",
              "rounds", with_collusion ? "  collusion" : "");
  for (const auto& mechanism : mechanisms) {
    Overrides overrides;
    overrides.mechanism = mechanism;
    overrides.seed = seed;
    ResultPtr result = run_scenario(scenario.get(), overrides);
    json metrics = json::parse(spectra_result_metrics_json(result.get()));
    std::string revenue = format_money_cell(metrics.at("revenue"));
    std::string efficiency = format_number(metrics.at("efficiency"));
    int rounds = metrics.at("rounds").get<int>();
    std::string verdict;
    if (with_collusion) {
      verdict = collusion_verdict(scenario.get(), overrides);
    }
    csv << mechanism << ',' << revenue << ',' << efficiency << ',' << rounds;
    if (with_collusion) csv << ',' << verdict;
    csv << "\n";
    std::printf("%-8s  %12s  %10s  %7d%s%s\n", mechanism.c_str(),
                revenue.c_str(), efficiency.c_str(), rounds,
                with_collusion ? "  " : "", verdict.c_str());
  }

  ensure_out_dir(flags.common.out_dir);
  write_file_atomic(std::filesystem::path(flags.common.out_dir) /
                        "comparison.csv",
                    csv.str());
  return 0;
}

struct SweepFlags {
  CommonArgs common;
  std::optional<std::string> mechanism;
  std::string inc_list;
  std::string tsf_list;
  std::string activity_list;
  std::string credit_list;
};

int cmd_sweep(const SweepFlags& flags) {
  struct Axis {
    std::string name;
    const std::string* list;
  };
  std::vector<Axis> axes = {{"inc", &flags.inc_list},
                            {"tsf", &flags.tsf_list},
                            {"activity", &flags.activity_list},
                            {"credit", &flags.credit_list}};
  const Axis* chosen = nullptr;
  int given = 0;
  for (const auto& axis : axes) {
    if (!axis.list->empty()) {
      ++given;
      chosen = &axis;
    }
  }
  if (given != 1) {
    throw UsageError(
        "sweep needs exactly one axis: --inc, --tsf, --activity, or "
        "--credit with a comma-separated list");
  }
  std::vector<std::string> values = split_list(*chosen->list);
  if (values.empty()) {
    throw UsageError("--" + chosen->name + " list is empty");
  }

  ScenarioPtr scenario = load_scenario_arg(flags.common);
  bool with_collusion = scenario_has_cartel(scenario.get());
  std::optional<std::uint64_t> seed = effective_seed(flags.common.seed);

  std::ostringstream csv;
  csv << "parameter,value,revenue,rounds,efficiency";
  if (with_collusion) csv << ",collusion";
  csv << "\n";

  for (const auto& text : values) {
    Overrides overrides;
    overrides.mechanism = flags.mechanism;
    overrides.seed = seed;
    try {
      std::size_t used = 0;
      if (chosen->name == "tsf") {
        overrides.tsf = std::stoi(text, &used);
      } else {
        double value = std::stod(text, &used);
        if (chosen->name == "inc") overrides.inc = value;
        if (chosen->name == "activity") overrides.activity = value;
        if (chosen->name == "credit") overrides.credit = value;
      }
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw UsageError("--" + chosen->name + ": '" + text +
                       "' is not a number");
    }

    ResultPtr result = run_scenario(scenario.get(), overrides);
    json metrics = json::parse(spectra_result_metrics_json(result.get()));
    csv << chosen->name << ',' << text << ','
        << format_money_cell(metrics.at("revenue")) << ','
        << metrics.at("rounds").get<int>() << ','
        << format_number(metrics.at("efficiency"));
    if (with_collusion) {
      csv << ',' << collusion_verdict(scenario.get(), overrides);
    }
    csv << "\n";
  }

  std::cout << csv.str();
  if (flags.common.out_dir != ".") {
    ensure_out_dir(flags.common.out_dir);
    write_file_atomic(
        std::filesystem::path(flags.common.out_dir) / "sweep.csv", csv.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic auction mechanism laboratory"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "List built-in scenarios");

  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand(
      "run", "Run one auction and write outcome/metrics/summary/trace");
  add_common_flags(run_cmd, &run_flags.common);
  run_cmd->add_option("--mechanism", run_flags.mechanism,
                      "Mechanism override: FPSB, VICKREY, SEQ_AMR, SAMR, "
                      "HAMR");
  run_cmd->add_option("--inc", run_flags.inc,
                      "Absolute minimum increment override, major units");
  run_cmd->add_option("--tsf", run_flags.tsf,
                      "Saturation threshold override (all licenses)");
  run_cmd->add_option("--activity", run_flags.activity,
                      "Flat required activity fraction override");
  run_cmd->add_option("--credit", run_flags.credit,
                      "Credit fraction override for designated bidders");
  run_cmd->add_option("--format", run_flags.format,
                      "Artifacts to write: json, csv, all (default all)");
  run_cmd->add_flag("--verbose", run_flags.verbose,
                    "Also print the round-by-round trace");

  CompareFlags compare_flags;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Run several mechanisms on one scenario and tabulate");
  add_common_flags(compare_cmd, &compare_flags.common);
  compare_cmd->add_option(
      "--mechanism", compare_flags.mechanisms,
      "Comma-separated mechanism list (default: all five)");

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Run a scenario across one parameter axis and emit CSV");
  add_common_flags(sweep_cmd, &sweep_flags.common);
  sweep_cmd->add_option("--mechanism", sweep_flags.mechanism,
                        "Mechanism override applied to every grid point");
  sweep_cmd->add_option("--inc", sweep_flags.inc_list,
                        "Comma-separated increment values, major units");
  sweep_cmd->add_option("--tsf", sweep_flags.tsf_list,
                        "Comma-separated saturation thresholds");
  sweep_cmd->add_option("--activity", sweep_flags.activity_list,
                        "Comma-separated activity fractions");
  sweep_cmd->add_option("--credit", sweep_flags.credit_list,
                        "Comma-separated credit fractions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    int code = app.exit(error);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (list_cmd->parsed()) return cmd_list();
    if (run_cmd->parsed()) return cmd_run(run_flags);
    if (compare_cmd->parsed()) return cmd_compare(compare_flags);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_flags);
  } catch (const UsageError& error) {
    std::cerr << "usage error: " << error.what() << "\n";
    return kExitUsage;
  } catch (const ToolError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return error.exit_code;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitEngine;
  }
  return 0;
}
