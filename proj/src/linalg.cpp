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

#include "qtomo/linalg.hpp"

#include <cmath>

namespace qtomo {

Mat3 pseudo_inverse_symmetric(const Mat3& a, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Mat3> eig(0.5 * (a + a.transpose()));
  const Vec3& ev = eig.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  Vec3 inv = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    if (top > 0.0 && std::abs(ev(i)) > rel_cutoff * top) inv(i) = 1.0 / ev(i);
  }
  const Mat3& u = eig.eigenvectors();
  return u * inv.asDiagonal() * u.transpose();
}

int symmetric_rank(const Mat3& a, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Mat3> eig(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  const Vec3& ev = eig.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  int rank = 0;
  for (int i = 0; i < 3; ++i) {
    if (top > 0.0 && std::abs(ev(i)) > rel_cutoff * top) ++rank;
  }
  return rank;
}

Eigen::Matrix<double, 3, 2> orthonormal_complement(const Vec3& e) {
  // Seed with the coordinate axis least aligned with e.
  Eigen::Index k = 0;
  e.cwiseAbs().minCoeff(&k);
  Vec3 seed = Vec3::Zero();
  seed(k) = 1.0;
  Vec3 u = (seed - seed.dot(e) * e).normalized();
  Vec3 v = e.cross(u);
  Eigen::Matrix<double, 3, 2> t;
  t.col(0) = u;
  t.col(1) = v;
  return t;
}

}  // namespace qtomo
