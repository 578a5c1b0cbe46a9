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

#include "qtomo/information.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qtomo/errors.hpp"

namespace qtomo {

FisherMatrix::FisherMatrix(const Mat3& f) : f_(0.5 * (f + f.transpose())) {
  f_inv_.setZero();
  if (!f_.allFinite()) return;
  Eigen::SelfAdjointEigenSolver<Mat3> eig(f_);
  const Vec3& ev = eig.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (top > 0.0 && ev.minCoeff() > 1e-13 * top) {
    const Mat3& u = eig.eigenvectors();
    f_inv_ = u * ev.cwiseInverse().asDiagonal() * u.transpose();
    invertible_ = true;
  }
}

const Mat3& FisherMatrix::inverse() const {
  if (!invertible_) {
    throw SingularMatrixError("Fisher matrix is singular or not finite");
  }
  return f_inv_;
}

FisherMatrix fisher_matrix(const Povm& p, const BlochVector& s) {
  if (!s.physical()) {
    throw DomainError("Fisher matrix requested at an unphysical Bloch vector");
  }
  Mat3 f = Mat3::Zero();
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto& e = p.effect(x);
    if (e.w.squaredNorm() == 0.0) continue;  // contributes no information
    const double prob = e.v + e.w.dot(s.vec());
    if (prob <= kProbabilityFloor) {
      std::ostringstream os;
      os << "Fisher information diverges: p(" << p.label(x) << "|s) = " << prob;
      throw DivergentInformationError(x, os.str());
    }
    f += e.w * e.w.transpose() / prob;
  }
  return FisherMatrix(f);
}

double cramer_rao_bound(const LossHessian& h, const FisherMatrix& f, std::int64_t n) {
  if (n < 1) throw DomainError("trial count must be >= 1");
  return (h.h * f.inverse()).trace() / static_cast<double>(n);
}

double n_star(const BlochVector& s, const FisherMatrix& f) {
  const double r = s.norm();
  if (r == 0.0) {
    throw UndefinedDirectionError("N* is undefined for the maximally mixed state");
  }
  if (r > 1.0 + kNormSlack) throw DomainError("N* requested for an unphysical state");
  const Vec3 e = s.direction();
  const double var = e.dot(f.inverse() * e);
  if (r >= 1.0 - kNormSlack) return std::numeric_limits<double>::infinity();
  return 2.0 * var / ((1.0 - r) * (1.0 - r));
}

double n_star(const Povm& p, const BlochVector& s) {
  if (s.norm() == 0.0) {
    throw UndefinedDirectionError("N* is undefined for the maximally mixed state");
  }
  return n_star(s, fisher_matrix(p, s));
}

double n_star_xyz(const BlochVector& s) {
  const double r = s.norm();
  if (r == 0.0) {
    throw UndefinedDirectionError("N* is undefined for the maximally mixed state");
  }
  if (r > 1.0 + kNormSlack) throw DomainError("N* requested for an unphysical state");
  if (r >= 1.0 - kNormSlack) return std::numeric_limits<double>::infinity();
  const double a = s.s1() * s.s2(), b = s.s2() * s.s3(), c = s.s3() * s.s1();
  const double cross = a * a + b * b + c * c;
  const double d = 1.0 - r;
  return 6.0 * ((1.0 + r) / d + 2.0 * cross / (r * r * d * d));
}

double crb_hs_xyz(const BlochVector& s, std::int64_t n) {
  if (n < 1) throw DomainError("trial count must be >= 1");
  const double r2 = s.vec().squaredNorm();
  if (r2 >= 1.0) throw DomainError("closed-form XYZ bound requires |s| < 1");
  return 0.75 * (3.0 - r2) / static_cast<double>(n);
}

double crb_if_xyz(const BlochVector& s, std::int64_t n) {
  if (n < 1) throw DomainError("trial count must be >= 1");
  const double r2 = s.vec().squaredNorm();
  if (r2 >= 1.0) throw DomainError("closed-form XYZ bound requires |s| < 1");
  const double a = s.s1() * s.s2(), b = s.s2() * s.s3(), c = s.s3() * s.s1();
  return 0.75 * (3.0 + 2.0 * (a * a + b * b + c * c) / (1.0 - r2)) /
         static_cast<double>(n);
}

}  // namespace qtomo
