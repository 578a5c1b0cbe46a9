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

// Orchestration behind the command-line front end: N* reports, loss curves
// (empirical / closed-form / Cramer-Rao / N*) and the canonical figure
// configurations.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtomo/config.hpp"
#include "qtomo/montecarlo.hpp"
#include "qtomo/report.hpp"

namespace qtomo {

/// States with |s| >= 1 - kPureRegimeThreshold use the pure-state formulas.
inline constexpr double kPureRegimeThreshold = 1e-9;

enum class Regime { kMaximallyMixed, kMixed, kPure };

Regime select_regime(const BlochVector& s);
std::string_view to_string(Regime r);

struct NStarReport {
  double value = 0.0;                 // +inf for pure states
  std::optional<std::int64_t> floor;  // empty when infinite
  std::string text;                   // "114.00000 (floor 114)" or "infinity"
};

/// Throws UndefinedDirectionError for s = 0.
NStarReport nstar_report(const BlochVector& s, const Povm& p);

struct CurveSet {
  BlochVector s;
  Regime regime = Regime::kMixed;
  std::optional<double> n_star;
  std::vector<LossCurveRecord> records;  // N-major, losses in config order
  Metadata metadata;
  std::vector<std::string> warnings;
};

/// Plan that compute_curves() would run, as printable text.
std::string describe_plan(const ExperimentConfig& c);

/// Runs every requested series for every N in the grid.
CurveSet compute_curves(const ExperimentConfig& c, const ParallelOptions& par = {});

/// Writes curves_<loss>.csv per loss and series.tsv (long format:
/// series, loss_kind, N, value). Returns the paths written.
std::vector<std::filesystem::path> write_curve_files(const CurveSet& curves,
                                                     const std::filesystem::path& out_dir);

/// Panels: EHS-1, EHS-2, EIF-1, EIF-2, EIF-3, EIF-4, EIF-pure, TypN.
const std::vector<std::string>& figure_ids();

/// Canonical configuration of a curve panel. Throws ConfigError listing the
/// valid ids for an unknown id, and for TypN (which is not a curve panel).
ExperimentConfig figure_config(std::string_view id);

struct TypNRow {
  double r = 0.0;
  double axis = 0.0;      // s = (r, 0, 0)
  double diagonal = 0.0;  // s = (r, pi/4, pi/4)
};

/// N*(r) for both state families over r = step, 2 step, ..., r_max.
std::vector<TypNRow> typn_table(double r_max = 0.999, double step = 0.001);

/// Writes typn.csv; returns its path.
std::filesystem::path write_typn(const std::vector<TypNRow>& rows,
                                 const std::filesystem::path& out_dir);

}  // namespace qtomo
