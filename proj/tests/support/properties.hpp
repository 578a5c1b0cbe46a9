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

// Randomized property checks shared by the unit tests and the acceptance
// runner. Each returns ok plus a one-line summary of the worst case seen.

#pragma once

#include <cstdint>
#include <string>

namespace qtomo::testing {

struct PropertyResult {
  bool ok = true;
  std::string detail;
};

/// Nonnegativity, zero diagonal and symmetry of both losses; infidelity in
/// [0, 1]; H^IF - H^HS PSD.
PropertyResult check_loss_axioms(std::uint64_t seed, int pairs);

/// Finite-difference checks: Hessian of the infidelity at t = s equals
/// 2 H^IF (1e-5 relative), the Taylor remainder over h^3 stays bounded, and the
/// log-likelihood gradient/Hessian match central differences (1e-5 relative).
PropertyResult check_derivatives(std::uint64_t seed, int points);

/// project_to_tangent: idempotent (bit-exact), lands on the tangent plane,
/// and no random point of the half-space has a smaller F-weighted distance.
PropertyResult check_projection(std::uint64_t seed, int cases, int samples_per_case);

/// Serial and OpenMP kernels with 1, 2 and 4 threads give bit-identical
/// results for both the tomography simulation and the oracle.
PropertyResult check_thread_determinism(std::uint64_t seed);

}  // namespace qtomo::testing
