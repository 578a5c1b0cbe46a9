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

// Loss functions between Bloch vectors and their local quadratic forms.
//
// For one qubit the Hilbert-Schmidt distance coincides with the trace
// distance, so no separate trace-distance function is provided.

#pragma once

#include <string>
#include <string_view>

#include "qtomo/qubit_core.hpp"

namespace qtomo {

enum class LossKind { kHilbertSchmidt, kInfidelity };

/// "hs" / "if"
std::string_view to_string(LossKind k);
LossKind loss_kind_from_string(std::string_view s);

/// Symmetric PSD matrix H such that loss(s, s+d) ~ d^T H d.
struct LossHessian {
  Mat3 h = Mat3::Zero();
};

/// (1/4)|s - t|^2. Defined on all of R^3.
double hs_distance(const BlochVector& s, const BlochVector& t);

/// 1 - fidelity between rho(s) and rho(t). Both arguments must be physical.
double infidelity(const BlochVector& s, const BlochVector& t);

/// H^HS = I/4.
LossHessian hesse_hs();

/// H^IF_s = (I + s s^T / (1 - |s|^2)) / 4; throws SingularityError for |s| >= 1.
LossHessian hesse_if(const BlochVector& s);

/// (t - s)^T H (t - s).
double quadratic_loss(const LossHessian& h, const BlochVector& s, const BlochVector& t);

/// Second-order Taylor expansion of infidelity(s, .) around s.
double infidelity_quadratic(const BlochVector& s, const BlochVector& t);

}  // namespace qtomo
