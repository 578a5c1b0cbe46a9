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

// One-qubit states and measurements in the Bloch parametrization.
//
// A state is rho(s) = (1 + s.sigma)/2 with s in the unit ball B, and a POVM
// effect is v*1 + w.sigma. Everything downstream works on (s, v, w) directly;
// 2x2 complex matrices are never formed.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qtomo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Slack used by every physicality test (|s| <= 1 + kNormSlack).
inline constexpr double kNormSlack = 1e-12;

/// A point in R^3. Physical states satisfy |s| <= 1; points outside the ball
/// are still representable because linear estimates can land there.
class BlochVector {
 public:
  BlochVector() : s_(Vec3::Zero()) {}
  BlochVector(double s1, double s2, double s3) : s_(s1, s2, s3) {}
  explicit BlochVector(const Vec3& s) : s_(s) {}

  double s1() const { return s_.x(); }
  double s2() const { return s_.y(); }
  double s3() const { return s_.z(); }
  const Vec3& vec() const { return s_; }

  double norm() const { return s_.norm(); }
  bool physical() const { return s_.norm() <= 1.0 + kNormSlack; }
  bool pure() const { return std::abs(s_.norm() - 1.0) <= kNormSlack; }

  /// e_s = s/|s|. Throws UndefinedDirectionError at the origin.
  Vec3 direction() const;

  friend bool operator==(const BlochVector& a, const BlochVector& b) {
    return a.s_ == b.s_;
  }

 private:
  Vec3 s_;
};

/// Physics convention: theta from +z, phi from +x in the xy-plane.
struct SphericalCoords {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

BlochVector bloch_from_spherical(const SphericalCoords& c);

struct PovmEffect {
  double v = 0.0;
  Vec3 w = Vec3::Zero();

  /// The eigenvalues of v*1 + w.sigma are v +- |w|.
  bool positive_semidefinite(double slack = kNormSlack) const {
    return v >= w.norm() - slack;
  }
};

/// Ordered list of effects; outcome x is the index into effects().
class Povm {
 public:
  Povm() = default;
  explicit Povm(std::vector<PovmEffect> effects,
                std::vector<std::string> labels = {});

  std::size_t size() const { return effects_.size(); }
  const std::vector<PovmEffect>& effects() const { return effects_; }
  const PovmEffect& effect(std::size_t x) const { return effects_.at(x); }

  /// Label of outcome x; falls back to the decimal index.
  std::string label(std::size_t x) const;
  /// Index of the outcome with the given label, or size() if absent.
  std::size_t find(const std::string& label) const;

  /// K x 3 matrix whose rows are the w_x.
  Eigen::MatrixX3d stacked_w() const;

 private:
  std::vector<PovmEffect> effects_;
  std::vector<std::string> labels_;
};

/// p(x|s) = v_x + w_x.s
double outcome_probability(const Povm& p, const BlochVector& s, std::size_t x);

/// All outcome probabilities, in outcome order.
std::vector<double> outcome_probabilities(const Povm& p, const BlochVector& s);

struct PovmValidation {
  bool complete = false;  // sum v = 1, sum w = 0
  bool positive = false;  // every effect PSD
  bool informationally_complete = false;
  int w_rank = 0;
  std::vector<std::string> failures;

  bool ok() const { return complete && positive && informationally_complete; }
};

/// Never throws; collects every failed check.
PovmValidation validate_povm(const Povm& p);

/// Rank of the stacked w_x matrix, with a relative singular-value cutoff.
int w_rank(const Povm& p);

/// Three orthogonal projective measurements, each picked with probability
/// 1/3. Outcomes are ordered 1+, 1-, 2+, 2-, 3+, 3-.
Povm xyz_povm();

}  // namespace qtomo
