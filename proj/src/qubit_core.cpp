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

#include "qtomo/qubit_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qtomo/errors.hpp"

namespace qtomo {

Vec3 BlochVector::direction() const {
  const double n = s_.norm();
  if (n == 0.0) {
    throw UndefinedDirectionError("direction of the zero Bloch vector is undefined");
  }
  return s_ / n;
}

BlochVector bloch_from_spherical(const SphericalCoords& c) {
  constexpr double pi = std::numbers::pi;
  if (!(c.r >= 0.0 && c.r <= 1.0 + kNormSlack)) {
    throw DomainError("spherical radius must lie in [0, 1]");
  }
  if (!(c.theta >= 0.0 && c.theta <= pi)) {
    throw DomainError("polar angle theta must lie in [0, pi]");
  }
  if (!(c.phi >= 0.0 && c.phi < 2.0 * pi)) {
    throw DomainError("azimuthal angle phi must lie in [0, 2pi)");
  }
  const double st = std::sin(c.theta);
  return BlochVector(c.r * st * std::cos(c.phi), c.r * st * std::sin(c.phi),
                     c.r * std::cos(c.theta));
}

Povm::Povm(std::vector<PovmEffect> effects, std::vector<std::string> labels)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != effects_.size()) {
    throw DomainError("POVM label count does not match effect count");
  }
}

std::string Povm::label(std::size_t x) const {
  if (x < labels_.size()) return labels_[x];
  return std::to_string(x);
}

std::size_t Povm::find(const std::string& label) const {
  for (std::size_t x = 0; x < effects_.size(); ++x) {
    if (this->label(x) == label) return x;
  }
  return effects_.size();
}

Eigen::MatrixX3d Povm::stacked_w() const {
  Eigen::MatrixX3d m(effects_.size(), 3);
  for (std::size_t x = 0; x < effects_.size(); ++x) {
    m.row(static_cast<Eigen::Index>(x)) = effects_[x].w.transpose();
  }
  return m;
}

double outcome_probability(const Povm& p, const BlochVector& s, std::size_t x) {
  if (x >= p.size()) {
    throw DomainError("outcome index " + std::to_string(x) + " out of range");
  }
  if (!s.physical()) {
    throw DomainError("Born rule evaluated at an unphysical Bloch vector");
  }
  const auto& e = p.effect(x);
  return e.v + e.w.dot(s.vec());
}

std::vector<double> outcome_probabilities(const Povm& p, const BlochVector& s) {
  std::vector<double> probs(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    probs[x] = outcome_probability(p, s, x);
  }
  return probs;
}

int w_rank(const Povm& p) {
  if (p.size() == 0) return 0;
  // Rank of sum w w^T equals rank of the stacked w.
  Mat3 gram = Mat3::Zero();
  for (const auto& e : p.effects()) gram += e.w * e.w.transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> eig(gram);
  const auto& ev = eig.eigenvalues();
  const double top = ev.maxCoeff();
  if (top <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < 3; ++i) {
    if (ev(i) > 1e-12 * top) ++rank;
  }
  return rank;
}

PovmValidation validate_povm(const Povm& p) {
  PovmValidation r;
  if (p.size() == 0) {
    r.failures.emplace_back("POVM has no effects");
    return r;
  }

  double sum_v = 0.0;
  Vec3 sum_w = Vec3::Zero();
  for (const auto& e : p.effects()) {
    sum_v += e.v;
    sum_w += e.w;
  }
  const double tol = 1e-12 * static_cast<double>(p.size());
  r.complete = std::abs(sum_v - 1.0) <= tol && sum_w.norm() <= tol;
  if (!r.complete) {
    std::ostringstream os;
    os << "effects do not sum to identity: sum v = " << sum_v
       << ", |sum w| = " << sum_w.norm();
    r.failures.push_back(os.str());
  }

  r.positive = true;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto& e = p.effect(x);
    if (!e.positive_semidefinite()) {
      r.positive = false;
      std::ostringstream os;
      os << "effect " << p.label(x) << " is not positive semidefinite: v = " << e.v
         << " < |w| = " << e.w.norm();
      r.failures.push_back(os.str());
    }
  }

  r.w_rank = w_rank(p);
  r.informationally_complete = r.w_rank == 3;
  if (!r.informationally_complete) {
    r.failures.push_back("not informationally complete: rank of {w_x} is " +
                         std::to_string(r.w_rank) + " < 3");
  }
  return r;
}

Povm xyz_povm() {
  std::vector<PovmEffect> effects;
  std::vector<std::string> labels;
  effects.reserve(6);
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign : {+1, -1}) {
      PovmEffect e;
      e.v = 1.0 / 6.0;
      e.w = Vec3::Zero();
      e.w(axis) = sign / 6.0;
      effects.push_back(e);
      labels.push_back(std::to_string(axis + 1) + (sign > 0 ? "+" : "-"));
    }
  }
  return Povm(std::move(effects), std::move(labels));
}

}  // namespace qtomo
