// Copyright 2026 The qtomo Authors
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

// Result tables.
//
// A curve file is CSV preceded by a block of "# key: value" comment lines
// carrying the configuration echo, seed and tool version. Columns:
//
//   loss_kind,N,empirical_mean,empirical_stderr,approx,crb,n_star
//
// Missing values are written as NA; an infinite N* as inf. Doubles use 17
// significant digits so every row parses back to the same values.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtomo/losses.hpp"

namespace qtomo {

inline constexpr std::string_view kToolVersion = "qtomo 1.0.0";

inline constexpr std::string_view kCurveCsvHeader =
    "loss_kind,N,empirical_mean,empirical_stderr,approx,crb,n_star";

struct LossCurveRecord {
  LossKind loss_kind = LossKind::kHilbertSchmidt;
  std::int64_t n = 0;
  std::optional<double> empirical_mean;
  std::optional<double> empirical_stderr;
  std::optional<double> approx;
  std::optional<double> crb;
  std::optional<double> n_star;

  friend bool operator==(const LossCurveRecord&, const LossCurveRecord&) = default;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// "NA" for empty, "inf"/"-inf", otherwise %.17g.
std::string format_value(const std::optional<double>& v);
std::optional<double> parse_value(std::string_view field);

std::string format_curve_row(const LossCurveRecord& r);
LossCurveRecord parse_curve_row(std::string_view line);

std::string format_curve_csv(const Metadata& meta, const std::vector<LossCurveRecord>& rows);

struct CurveTable {
  Metadata metadata;
  std::vector<LossCurveRecord> rows;
};

/// Inverse of format_curve_csv. Throws ConfigError on malformed input.
CurveTable parse_curve_csv(std::string_view text);

}  // namespace qtomo
