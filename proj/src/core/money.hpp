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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "core/error.hpp"

namespace spectra {

// All monetary amounts are held in integer minor units (1/100 of a currency
// unit). Integer money keeps golden tests bit-exact: no accumulation of
// floating-point error across thousands of rounds, and serialized outcomes
// are reproducible byte for byte.
using Money = std::int64_t;

constexpr Money kMinorPerMajor = 100;

// Half-up rounding of a non-negative floating amount to minor units.
inline Money round_half_up(double amount_minor) {
  return static_cast<Money>(std::floor(amount_minor + 0.5));
}

inline Money money_from_major(std::int64_t major) {
  return major * kMinorPerMajor;
}

// Accepts a decimal amount in major units (e.g. parsed from JSON) and
// converts to minor units. Rejects anything finer than two decimals, since
// such an amount is not representable.
inline Money money_from_decimal(double major, const std::string& field) {
  if (!std::isfinite(major)) {
    throw Error(ErrorCode::kValidation, field + ": money must be finite");
  }
  double scaled = major * static_cast<double>(kMinorPerMajor);
  double rounded = std::floor(scaled + 0.5);
  if (std::fabs(scaled - rounded) > 1e-6) {
    throw Error(ErrorCode::kValidation,
                field + ": money supports at most 2 decimal places");
  }
  if (rounded > 9.0e15 || rounded < -9.0e15) {
    throw Error(ErrorCode::kValidation, field + ": money out of range");
  }
  return static_cast<Money>(rounded);
}

// Exact decimal reconstruction of a minor-unit amount. Minor counts below
// 2^52 divide exactly enough that the shortest round-trip representation
// used by the JSON writer prints the intended two-decimal value.
inline double money_to_decimal(Money minor) {
  return static_cast<double>(minor) / static_cast<double>(kMinorPerMajor);
}

// Fixed two-decimal rendering for CSV and trace output.
inline std::string format_money(Money minor) {
  bool negative = minor < 0;
  std::uint64_t abs = negative ? static_cast<std::uint64_t>(-minor)
                               : static_cast<std::uint64_t>(minor);
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%s%llu.%02llu", negative ? "-" : "",
                static_cast<unsigned long long>(abs / kMinorPerMajor),
                static_cast<unsigned long long>(abs % kMinorPerMajor));
  return buffer;
}

}  // namespace spectra
