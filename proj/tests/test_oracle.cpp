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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/model.hpp"
#include "core/money.hpp"
#include "oracle_reference.hpp"

using namespace spectra;
using oracle_reference::Instance;

namespace {

model::License license(const std::string& id, double mhz,
                       const std::string& region) {
  model::License result;
  result.id = id;
  result.bandwidth_mhz = mhz;
  result.population = 1000;
  result.region_id = region;
  return result;
}

model::Bidder bidder(const std::string& id,
                     std::optional<double> cap = std::nullopt) {
  model::Bidder result;
  result.id = id;
  result.bandwidth_cap_mhz = cap;
  return result;
}

}  // namespace

TEST_CASE("single license single bidder") {
  Instance instance;
  instance.licenses = {license("only", 10, "r")};
  instance.profiles.emplace_back("solo",
                                 std::map<model::LicenseId, Money>{{"only", 7}},
                                 std::vector<model::BundleAdjustment>{});
  instance.bidders["solo"] = bidder("solo");

  auto result = model::optimal_allocation(instance.licenses, instance.profiles,
                                          instance.bidders);
  CHECK(result.welfare == 7);
  REQUIRE(result.allocation.at("only").has_value());
  CHECK(*result.allocation.at("only") == "solo");
}

TEST_CASE("complement bonus beats the pair of singles on equal welfare") {
  // A values the pair at 300 (100 + 100 + 100 bonus); B and C take either
  // slot at 150. Both "A takes both" and "B and C split" reach 300; the
  // lexicographic rule pins slot s1 to A first.
  Instance instance;
  instance.licenses = {license("s1", 10, "r"), license("s2", 10, "r")};
  instance.profiles.emplace_back(
      "A",
      std::map<model::LicenseId, Money>{{"s1", money_from_major(100)},
                                        {"s2", money_from_major(100)}},
      std::vector<model::BundleAdjustment>{
          {{"s1", "s2"}, money_from_major(100)}});
  for (const char* id : {"B", "C"}) {
    instance.profiles.emplace_back(
        id,
        std::map<model::LicenseId, Money>{{"s1", money_from_major(150)},
                                          {"s2", money_from_major(150)}},
        std::vector<model::BundleAdjustment>{
            {{"s1", "s2"}, -money_from_major(150)}});
    instance.bidders[id] = bidder(id);
  }
  instance.bidders["A"] = bidder("A");

  auto result = model::optimal_allocation(instance.licenses, instance.profiles,
                                          instance.bidders);
  CHECK(result.welfare == money_from_major(300));
  CHECK(*result.allocation.at("s1") == "A");
  CHECK(*result.allocation.at("s2") == "A");
  auto reference = oracle_reference::enumerate_best(instance);
  CHECK(reference.welfare == result.welfare);
  CHECK(reference.allocation == result.allocation);
}

TEST_CASE("weak complement loses and welfare tops at 250") {
  // A's pair is worth only 200 (each slot alone 100); B wants one slot at
  // 150, C one slot at 100. The optimum is 250. Several assignments reach
  // it; the lexicographic rule gives s1 to A (with B on s2), which the
  // reference enumerator must reproduce exactly.
  Instance instance;
  instance.licenses = {license("s1", 10, "r"), license("s2", 10, "r")};
  instance.profiles.emplace_back(
      "A",
      std::map<model::LicenseId, Money>{{"s1", money_from_major(100)},
                                        {"s2", money_from_major(100)}},
      std::vector<model::BundleAdjustment>{});
  instance.profiles.emplace_back(
      "B",
      std::map<model::LicenseId, Money>{{"s1", money_from_major(150)},
                                        {"s2", money_from_major(150)}},
      std::vector<model::BundleAdjustment>{
          {{"s1", "s2"}, -money_from_major(150)}});
  instance.profiles.emplace_back(
      "C",
      std::map<model::LicenseId, Money>{{"s1", money_from_major(100)},
                                        {"s2", money_from_major(100)}},
      std::vector<model::BundleAdjustment>{
          {{"s1", "s2"}, -money_from_major(100)}});
  for (const char* id : {"A", "B", "C"}) instance.bidders[id] = bidder(id);

  auto result = model::optimal_allocation(instance.licenses, instance.profiles,
                                          instance.bidders);
  CHECK(result.welfare == money_from_major(250));
  auto reference = oracle_reference::enumerate_best(instance);
  CHECK(reference.welfare == result.welfare);
  CHECK(reference.allocation == result.allocation);
  CHECK(*result.allocation.at("s1") == "A");
  CHECK(*result.allocation.at("s2") == "B");
}

TEST_CASE("bandwidth cap forbids holding both licenses in a region") {
  Instance instance;
  instance.licenses = {license("g1", 10, "metro"), license("g2", 10, "metro")};
  instance.profiles.emplace_back(
      "greedy",
      std::map<model::LicenseId, Money>{{"g1", 100}, {"g2", 100}},
      std::vector<model::BundleAdjustment>{});
  instance.profiles.emplace_back(
      "small",
      std::map<model::LicenseId, Money>{{"g1", 30}, {"g2", 30}},
      std::vector<model::BundleAdjustment>{});
  instance.bidders["greedy"] = bidder("greedy", 10.0);
  instance.bidders["small"] = bidder("small");

  auto result = model::optimal_allocation(instance.licenses, instance.profiles,
                                          instance.bidders);
  CHECK(result.welfare == 130);
  CHECK(*result.allocation.at("g1") == "greedy");
  CHECK(*result.allocation.at("g2") == "small");

  SUBCASE("cap is per region, not global") {
    instance.licenses[1].region_id = "rural";
    auto uncapped = model::optimal_allocation(
        instance.licenses, instance.profiles, instance.bidders);
    CHECK(uncapped.welfare == 200);
    CHECK(*uncapped.allocation.at("g2") == "greedy");
  }
}

TEST_CASE("negative bundle value is never forced") {
  // Strong substitutes: holding both is worth less than nothing, so the
  // oracle leaves one license unsold rather than pairing them up.
  Instance instance;
  instance.licenses = {license("n1", 10, "r"), license("n2", 10, "r")};
  instance.profiles.emplace_back(
      "only",
      std::map<model::LicenseId, Money>{{"n1", 10}, {"n2", 10}},
      std::vector<model::BundleAdjustment>{{{"n1", "n2"}, -100}});
  instance.bidders["only"] = bidder("only");

  auto result = model::optimal_allocation(instance.licenses, instance.profiles,
                                          instance.bidders);
  CHECK(result.welfare == 10);
  auto reference = oracle_reference::enumerate_best(instance);
  CHECK(reference.welfare == result.welfare);
  CHECK(reference.allocation == result.allocation);
}

TEST_CASE("search bound is enforced, not approximated") {
  Instance instance;
  for (int i = 0; i < 13; ++i) {
    instance.licenses.push_back(license("l" + std::to_string(i), 1, "r"));
  }
  instance.profiles.emplace_back(
      "p", std::map<model::LicenseId, Money>{},
      std::vector<model::BundleAdjustment>{});
  instance.bidders["p"] = bidder("p");
  try {
    (void)model::optimal_allocation(instance.licenses, instance.profiles,
                                    instance.bidders);
    FAIL("expected oracle bound error");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::kOracleBound);
  }
}

TEST_CASE("two oracle implementations agree on random instances") {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    auto instance = oracle_reference::random_instance(31, trial);
    auto fast = model::optimal_allocation(instance.licenses, instance.profiles,
                                          instance.bidders);
    auto reference = oracle_reference::enumerate_best(instance);
    REQUIRE(fast.welfare == reference.welfare);
    REQUIRE(fast.allocation == reference.allocation);
  }
}
