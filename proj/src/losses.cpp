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

#include "qtomo/losses.hpp"

#include <algorithm>
#include <cmath>

#include "qtomo/errors.hpp"

namespace qtomo {

std::string_view to_string(LossKind k) {
  return k == LossKind::kHilbertSchmidt ? "hs" : "if";
}

LossKind loss_kind_from_string(std::string_view s) {
  if (s == "hs") return LossKind::kHilbertSchmidt;
  if (s == "if") return LossKind::kInfidelity;
  throw ConfigError("unknown loss kind '" + std::string(s) + "' (expected hs or if)");
}

double hs_distance(const BlochVector& s, const BlochVector& t) {
  return 0.25 * (s.vec() - t.vec()).squaredNorm();
}

double infidelity(const BlochVector& s, const BlochVector& t) {
  if (!s.physical() || !t.physical()) {
    throw DomainError("infidelity is undefined outside the Bloch ball");
  }
  // Clamp the slack region |s| in (1, 1 + eps] onto the sphere.
  const double ms = std::sqrt(std::max(0.0, 1.0 - s.vec().squaredNorm()));
  const double mt = std::sqrt(std::max(0.0, 1.0 - t.vec().squaredNorm()));
  const double v = 0.5 * (1.0 - s.vec().dot(t.vec()) - ms * mt);
  return std::clamp(v, 0.0, 1.0);
}

LossHessian hesse_hs() { return {0.25 * Mat3::Identity()}; }

LossHessian hesse_if(const BlochVector& s) {
  const double n2 = s.vec().squaredNorm();
  if (n2 >= 1.0) {
    throw SingularityError("infidelity Hessian diverges at |s| = 1");
  }
  const Vec3& v = s.vec();
  return {0.25 * (Mat3::Identity() + v * v.transpose() / (1.0 - n2))};
}

double quadratic_loss(const LossHessian& h, const BlochVector& s, const BlochVector& t) {
  const Vec3 d = t.vec() - s.vec();
  return d.dot(h.h * d);
}

double infidelity_quadratic(const BlochVector& s, const BlochVector& t) {
  return quadratic_loss(hesse_if(s), s, t);
}

}  // namespace qtomo
