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

// Experiment configuration. The on-disk format is JSON (comments allowed);
// the schema is documented in docs/config.md. Unknown keys are errors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qtomo/estimators.hpp"
#include "qtomo/losses.hpp"
#include "qtomo/qubit_core.hpp"

namespace qtomo {

struct StateSpec {
  enum class Form { kSpherical, kCartesian };
  Form form = Form::kCartesian;
  SphericalCoords spherical;
  Vec3 cartesian = Vec3::Zero();

  static StateSpec from_spherical(const SphericalCoords& c);
  static StateSpec from_cartesian(const Vec3& s);

  /// Throws DomainError for out-of-range coordinates.
  BlochVector bloch() const;
  std::string describe() const;
};

struct PovmSpec {
  std::string name = "xyz";  // "xyz" or "custom"
  Povm povm = xyz_povm();
};

enum class OutputKind { kEmpirical, kApprox, kCrb, kNstar };

std::string_view to_string(OutputKind k);

struct ExperimentConfig {
  StateSpec state;
  PovmSpec povm;
  std::vector<std::int64_t> n_grid;
  std::string n_grid_description;
  std::int64_t sequences = 10000;
  std::uint64_t seed = 20140101;
  std::vector<LossKind> losses{LossKind::kHilbertSchmidt, LossKind::kInfidelity};
  std::vector<OutputKind> outputs{OutputKind::kEmpirical, OutputKind::kApprox,
                                  OutputKind::kCrb, OutputKind::kNstar};
  MleOptions mle;

  bool wants(OutputKind k) const;
  bool wants(LossKind k) const;
};

/// 10^1 .. 10^6 with 20 log-spaced points.
std::vector<std::int64_t> default_n_grid();

/// `points` log-spaced integers in [lo, hi], rounded and deduplicated.
std::vector<std::int64_t> log_spaced_grid(double lo, double hi, int points);

/// Parses "pi", "pi/4", "3pi/4", "3*pi/4", "-pi/2" or a plain number.
double parse_angle(std::string_view text);

/// Throws ConfigError with the offending key path.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Validates the POVM and the state against it; throws ConfigError.
void validate_config(const ExperimentConfig& c);

/// Canonical JSON echo, one line.
std::string config_to_json(const ExperimentConfig& c);

}  // namespace qtomo
