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

#include "qtomo/special_functions.hpp"

#include <array>
#include <cmath>

#include "qtomo/errors.hpp"

namespace qtomo {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;

// erf(x) = x * P(x^2)/Q(x^2) on |x| <= 0.46875.
constexpr std::array<double, 5> kA = {3.16112374387056560e00, 1.13864154151050156e02,
                                      3.77485237685302021e02, 3.20937758913846947e03,
                                      1.85777706184603153e-1};
constexpr std::array<double, 4> kB = {2.36012909523441209e01, 2.44024637934444173e02,
                                      1.28261652607737228e03, 2.84423683343917062e03};

// exp(x^2) erfc(x) on 0.46875 < x <= 4.
constexpr std::array<double, 9> kC = {
    5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
    2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
    2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {
    1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
    1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
    3.43936767414372164e03, 1.23033935480374942e03};

// x exp(x^2) erfc(x) - 1/sqrt(pi) in 1/x^2 for x > 4.
constexpr std::array<double, 6> kP = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                      1.25781726111229246e-1, 1.60837851487422766e-2,
                                      6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kQ = {2.56852019228982242e00, 1.87295284992346047e00,
                                      5.27905102951428412e-1, 6.05183413124413191e-2,
                                      2.33520497626869185e-3};

constexpr double kSmallBreak = 0.46875;
constexpr double kUnderflow = 26.543;  // erfc(x) underflows beyond this

// exp(-y^2) split as exp(-ysq^2) * exp(-(y - ysq)(y + ysq)) to avoid the
// rounding error of forming y*y directly.
double exp_neg_square(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

double erf_small(double x) {
  const double ysq = x * x;
  double num = kA[4] * ysq;
  double den = ysq;
  for (int i = 0; i < 3; ++i) {
    num = (num + kA[i]) * ysq;
    den = (den + kB[i]) * ysq;
  }
  return x * (num + kA[3]) / (den + kB[3]);
}

// erfc(y) for y > 0.46875.
double erfc_positive(double y) {
  if (y >= kUnderflow) return 0.0;
  double r;
  if (y <= 4.0) {
    double num = kC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kC[i]) * y;
      den = (den + kD[i]) * y;
    }
    r = (num + kC[7]) / (den + kD[7]);
  } else {
    const double z = 1.0 / (y * y);
    double num = kP[5] * z;
    double den = z;
    for (int i = 0; i < 4; ++i) {
      num = (num + kP[i]) * z;
      den = (den + kQ[i]) * z;
    }
    r = z * (num + kP[4]) / (den + kQ[4]);
    r = (kInvSqrtPi - r) / y;
  }
  return exp_neg_square(y) * r;
}

}  // namespace

double erfc(double a) {
  if (std::isnan(a)) return a;
  const double y = std::abs(a);
  if (y <= kSmallBreak) return 1.0 - erf_small(a);
  const double tail = erfc_positive(y);
  return a > 0.0 ? tail : 2.0 - tail;
}

double erfc_asymptotic(double a, int m_max) {
  if (!(a > 0.0)) throw DomainError("asymptotic erfc series requires a > 0");
  const double x = 1.0 / (2.0 * a * a);
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    term *= -(2.0 * m - 1.0) * x;
    sum += term;
  }
  return std::exp(-a * a) * kInvSqrtPi / a * sum;
}

}  // namespace qtomo
