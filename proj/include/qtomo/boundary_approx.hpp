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

// Closed-form expected losses of the boundary-projected estimator.
//
// The model: the unconstrained estimate is Gaussian with mean s and
// covariance F^-1/N, the Bloch sphere is replaced by its tangent plane at
// e_s, and estimates beyond the plane are moved back onto it along F^-1 e_s
// (project_to_tangent). Every formula below is the exact expectation of the
// corresponding loss under that model; montecarlo::gaussian_projection_oracle
// samples the same model.
//
// With a = e.F^-1 e, b = e.F^-2 e, d = 1 - |s|, N* = 2a/d^2 and
// E = erfc(sqrt(N/N*)):
//
//   HS, mixed:  (tr F^-1 - (b/2a) E)/(4N) - d b e^{-N/N*} / (4 a sqrt(2 pi a N))
//               + (b/a) E / (4 N*)
//   HS, pure:   (tr F^-1 - b/2a)/(4N)
//   IF, mixed:  T/(4N) - B E/(8N) - d B e^{-N/N*} / (4 sqrt(2 pi a N)) + B E/(4 N*)
//   IF, pure:   sqrt(a/(2 pi)) / (2 sqrt(N))
//
// where T = tr F^-1 + s.F^-1 s/(1-|s|^2) and
// B = tr F^-1 - tr[(Q F Q)^+] + s.F^-1 s/(1-|s|^2), Q = I - e e^T.
// The infidelity results use its second-order expansion for mixed states and
// the exact (linear) infidelity for pure states.

#pragma once

#include <cstdint>

#include "qtomo/information.hpp"
#include "qtomo/qubit_core.hpp"

namespace qtomo {

struct ApproxLossInputs {
  BlochVector s;
  FisherMatrix f;
  std::int64_t n = 1;
};

/// Q_s F Q_s, the information restricted to the plane orthogonal to s.
Mat3 tangent_information(const BlochVector& s, const FisherMatrix& f);

/// Moore-Penrose inverse of tangent_information().
Mat3 tangent_information_pinv(const BlochVector& s, const FisherMatrix& f);

/// Requires 0 < |s| < 1; RegimeError otherwise.
double expected_hs_mixed(const ApproxLossInputs& in);
double expected_if_mixed(const ApproxLossInputs& in);

/// Requires |s| = 1 within kNormSlack; RegimeError otherwise.
double expected_hs_pure(const BlochVector& s, const FisherMatrix& f, std::int64_t n);
double expected_if_pure(const BlochVector& s, const FisherMatrix& f, std::int64_t n);

}  // namespace qtomo
