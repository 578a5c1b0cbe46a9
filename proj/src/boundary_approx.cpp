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

#include "qtomo/boundary_approx.hpp"

#include <cmath>
#include <numbers>

#include "qtomo/errors.hpp"
#include "qtomo/linalg.hpp"
#include "qtomo/special_functions.hpp"

namespace qtomo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Quantities shared by both mixed-state formulas.
struct MixedTerms {
  double r = 0.0;       // |s|
  double d = 0.0;       // 1 - |s|
  double a = 0.0;       // e.F^-1 e
  double b = 0.0;       // e.F^-2 e
  double trace = 0.0;   // tr F^-1
  double n_star = 0.0;
  double erfc_term = 0.0;
  double exp_term = 0.0;  // e^{-N/N*} / sqrt(N)
  double n = 0.0;
};

MixedTerms mixed_terms(const ApproxLossInputs& in) {
  const double r = in.s.norm();
  if (r == 0.0) {
    throw RegimeError("boundary correction is undefined at s = 0 (no boundary direction)");
  }
  if (r >= 1.0 - kNormSlack) {
    throw RegimeError("mixed-state formula called for a pure state; use the pure-state form");
  }
  if (in.n < 1) throw DomainError("trial count must be >= 1");
  const Mat3& fi = in.f.inverse();
  const Vec3 e = in.s.direction();
  const Vec3 fe = fi * e;

  MixedTerms t;
  t.r = r;
  t.d = 1.0 - r;
  t.a = e.dot(fe);
  t.b = fe.squaredNorm();
  t.trace = fi.trace();
  t.n = static_cast<double>(in.n);
  t.n_star = 2.0 * t.a / (t.d * t.d);
  t.erfc_term = erfc(std::sqrt(t.n / t.n_star));
  t.exp_term = std::exp(-t.n / t.n_star) / std::sqrt(t.n);
  return t;
}

void require_pure(const BlochVector& s, const FisherMatrix& f, std::int64_t n) {
  if (!s.pure()) {
    throw RegimeError("pure-state formula called for |s| != 1; use the mixed-state form");
  }
  if (!f.invertible()) {
    throw SingularMatrixError("pure-state formula requires a finite, invertible Fisher matrix");
  }
  if (n < 1) throw DomainError("trial count must be >= 1");
}

}  // namespace

Mat3 tangent_information(const BlochVector& s, const FisherMatrix& f) {
  const Vec3 e = s.direction();
  const Mat3 q = Mat3::Identity() - e * e.transpose();
  return q * f.matrix() * q;
}

Mat3 tangent_information_pinv(const BlochVector& s, const FisherMatrix& f) {
  return pseudo_inverse_symmetric(tangent_information(s, f));
}

double expected_hs_mixed(const ApproxLossInputs& in) {
  const MixedTerms t = mixed_terms(in);
  const double ratio = t.b / t.a;
  return 0.25 * (t.trace - 0.5 * ratio * t.erfc_term) / t.n -
         0.25 * t.d / std::sqrt(kTwoPi * t.a) * ratio * t.exp_term +
         0.25 * ratio * t.erfc_term / t.n_star;
}

double expected_if_mixed(const ApproxLossInputs& in) {
  const MixedTerms t = mixed_terms(in);
  const Mat3& fi = in.f.inverse();
  const Vec3& s = in.s.vec();
  const double radial = s.dot(fi * s) / (1.0 - t.r * t.r);
  const double total = t.trace + radial;
  const double bracket = t.trace - tangent_information_pinv(in.s, in.f).trace() + radial;
  return 0.25 * total / t.n - 0.125 * bracket * t.erfc_term / t.n -
         0.25 * t.d / std::sqrt(kTwoPi * t.a) * bracket * t.exp_term +
         0.25 * bracket * t.erfc_term / t.n_star;
}

double expected_hs_pure(const BlochVector& s, const FisherMatrix& f, std::int64_t n) {
  require_pure(s, f, n);
  const Vec3 e = s.direction();
  const Vec3 fe = f.inverse() * e;
  const double a = e.dot(fe);
  const double b = fe.squaredNorm();
  return 0.25 * (f.inverse().trace() - 0.5 * b / a) / static_cast<double>(n);
}

double expected_if_pure(const BlochVector& s, const FisherMatrix& f, std::int64_t n) {
  require_pure(s, f, n);
  const Vec3 e = s.direction();
  const double a = e.dot(f.inverse() * e);
  return 0.5 * std::sqrt(a / kTwoPi) / std::sqrt(static_cast<double>(n));
}

}  // namespace qtomo
