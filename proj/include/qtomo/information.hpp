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

// Per-trial Fisher information, Cramer-Rao bounds and the sample-size
// threshold N* beyond which the Bloch-sphere boundary stops mattering.

#pragma once

#include <cstdint>

#include "qtomo/losses.hpp"
#include "qtomo/qubit_core.hpp"

namespace qtomo {

/// Probabilities at or below this make the Fisher information divergent.
inline constexpr double kProbabilityFloor = 1e-12;

/// Symmetric PSD 3x3 information matrix with its inverse cached on
/// construction.
class FisherMatrix {
 public:
  explicit FisherMatrix(const Mat3& f);

  const Mat3& matrix() const { return f_; }
  bool invertible() const { return invertible_; }
  /// Throws SingularMatrixError when not invertible.
  const Mat3& inverse() const;

 private:
  Mat3 f_;
  Mat3 f_inv_;
  bool invertible_ = false;
};

/// F_s = sum_x w_x w_x^T / p(x|s).
FisherMatrix fisher_matrix(const Povm& p, const BlochVector& s);

/// tr[H F^-1] / N.
double cramer_rao_bound(const LossHessian& h, const FisherMatrix& f, std::int64_t n);

/// N* = 2 e.F^-1 e / (1 - |s|)^2 for a given information matrix. Real valued;
/// +infinity for pure states.
double n_star(const BlochVector& s, const FisherMatrix& f);

/// n_star with F = fisher_matrix(p, s).
double n_star(const Povm& p, const BlochVector& s);

/// Closed form of N* for the XYZ measurement.
double n_star_xyz(const BlochVector& s);

/// (3/4)(3 - |s|^2)/N.
double crb_hs_xyz(const BlochVector& s, std::int64_t n);

/// (3/4)(3 + 2((s1 s2)^2 + (s2 s3)^2 + (s3 s1)^2)/(1 - |s|^2))/N.
double crb_if_xyz(const BlochVector& s, std::int64_t n);

}  // namespace qtomo
