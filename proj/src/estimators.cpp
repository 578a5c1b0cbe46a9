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

#include "qtomo/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qtomo/errors.hpp"
#include "qtomo/linalg.hpp"

namespace qtomo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Slack on the half-space test so that projected points test as inside.
constexpr double kHalfSpaceSlack = 1e-14;

void require_ic(const Povm& p) {
  if (w_rank(p) != 3) {
    throw NotInformationallyCompleteError(
        "POVM is not informationally complete: {w_x} does not span R^3");
  }
}

// Maximizes the log-likelihood on the unit sphere by Riemannian Newton steps
// with backtracking. Falls back to gradient ascent where the projected Hessian
// is not negative definite.
struct SphereResult {
  Vec3 point = Vec3::Zero();
  double value = kNegInf;
  double multiplier = 0.0;  // s.grad at the final point
  int iterations = 0;
  bool converged = false;
};

SphereResult maximize_on_sphere(const Povm& p, const OutcomeCounts& c, Vec3 start,
                                const MleOptions& opt) {
  SphereResult res;
  Vec3 s = start.normalized();
  double value = log_likelihood_value(p, c, BlochVector(s));
  if (!std::isfinite(value)) return res;

  for (int it = 0; it < opt.max_iterations; ++it) {
    res.iterations = it + 1;
    const LogLikelihood ll = log_likelihood(p, c, BlochVector(s));
    const auto t = orthonormal_complement(s);
    const Eigen::Vector2d gt = t.transpose() * ll.gradient;
    const double lambda = s.dot(ll.gradient);
    const Eigen::Matrix2d hr =
        t.transpose() * ll.hessian * t - lambda * Eigen::Matrix2d::Identity();

    Eigen::Vector2d d;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(hr);
    if (eig.eigenvalues().maxCoeff() < 0.0) {
      d = -hr.ldlt().solve(gt);
    } else {
      const double scale = std::max(ll.hessian.norm(), std::abs(lambda));
      d = scale > 0.0 ? Eigen::Vector2d(gt / scale) : gt;
    }
    if (d.norm() > 1.0) d /= d.norm();
    if (d.norm() < opt.step_tolerance) {
      res.converged = true;
      break;
    }

    double step = 1.0;
    bool accepted = false;
    Vec3 next = s;
    double next_value = value;
    while (step > 1e-12) {
      next = (s + t * (step * d)).normalized();
      next_value = log_likelihood_value(p, c, BlochVector(next));
      if (std::isfinite(next_value) && next_value > value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no ascent direction left at working precision
      break;
    }
    const double moved = (next - s).norm();
    const double gain = next_value - value;
    s = next;
    value = next_value;
    if (moved < opt.step_tolerance ||
        gain <= opt.loglik_tolerance * std::max(1.0, std::abs(value))) {
      res.converged = true;
      break;
    }
  }

  res.point = s;
  res.value = value;
  res.multiplier = s.dot(log_likelihood(p, c, BlochVector(s)).gradient);
  return res;
}

// Point where the segment a -> b (|a| <= 1 < |b|) crosses the unit sphere.
Vec3 sphere_crossing(const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double qa = d.squaredNorm();
  const double qb = 2.0 * a.dot(d);
  const double qc = a.squaredNorm() - 1.0;
  const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
  const double tau = (-qb + std::sqrt(disc)) / (2.0 * qa);
  return a + std::clamp(tau, 0.0, 1.0) * d;
}

}  // namespace

std::int64_t OutcomeCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

double OutcomeCounts::frequency(std::size_t x) const {
  return static_cast<double>(counts.at(x)) / static_cast<double>(total());
}

void check_counts(const Povm& p, const OutcomeCounts& c) {
  if (c.counts.size() != p.size()) {
    throw DomainError("count vector has " + std::to_string(c.counts.size()) +
                      " entries but the POVM has " + std::to_string(p.size()) +
                      " outcomes");
  }
  for (auto n : c.counts) {
    if (n < 0) throw DomainError("outcome counts must be nonnegative");
  }
  if (c.total() < 1) throw DomainError("at least one trial is required");
}

LinearFit linear_fit(const Povm& p, const OutcomeCounts& c) {
  check_counts(p, c);
  require_ic(p);
  Mat3 normal = Mat3::Zero();
  Vec3 rhs = Vec3::Zero();
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto& e = p.effect(x);
    normal += e.w * e.w.transpose();
    rhs += e.w * (c.frequency(x) - e.v);
  }
  LinearFit fit;
  fit.point = BlochVector(normal.ldlt().solve(rhs));
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto& e = p.effect(x);
    const double r = e.v + e.w.dot(fit.point.vec()) - c.frequency(x);
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  return fit;
}

BlochVector linear_estimate(const Povm& p, const OutcomeCounts& c) {
  return linear_fit(p, c).point;
}

LogLikelihood log_likelihood(const Povm& p, const OutcomeCounts& c, const BlochVector& s) {
  if (!s.physical()) {
    throw DomainError("log-likelihood evaluated at an unphysical Bloch vector");
  }
  LogLikelihood ll;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto nx = c.counts[x];
    if (nx == 0) continue;
    const auto& e = p.effect(x);
    const double prob = e.v + e.w.dot(s.vec());
    if (prob <= 0.0) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      ll.value = kNegInf;
      ll.gradient.setConstant(nan);
      ll.hessian.setConstant(nan);
      return ll;
    }
    const double n = static_cast<double>(nx);
    ll.value += n * std::log(prob);
    ll.gradient += (n / prob) * e.w;
    ll.hessian -= (n / (prob * prob)) * (e.w * e.w.transpose());
  }
  return ll;
}

double log_likelihood_value(const Povm& p, const OutcomeCounts& c, const BlochVector& s) {
  double value = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto nx = c.counts[x];
    if (nx == 0) continue;
    const auto& e = p.effect(x);
    const double prob = e.v + e.w.dot(s.vec());
    if (prob <= 0.0) return kNegInf;
    value += static_cast<double>(nx) * std::log(prob);
  }
  return value;
}

MleReport mle(const Povm& p, const OutcomeCounts& c, const MleOptions& opt) {
  check_counts(p, c);
  require_ic(p);

  MleReport report;
  if (opt.linear_fast_path) {
    const LinearFit fit = linear_fit(p, c);
    if (fit.consistent() && fit.point.physical()) {
      report.estimate = fit.point;
      report.converged = true;
      report.used_linear_fast_path = true;
      report.hit_boundary = fit.point.norm() >= 1.0 - kNormSlack;
      return report;
    }
  }

  Vec3 s = Vec3::Zero();
  double value = log_likelihood_value(p, c, BlochVector(s));
  bool sphere_rejected = false;

  for (int it = 0; it < opt.max_iterations; ++it) {
    report.iterations = it + 1;
    const LogLikelihood ll = log_likelihood(p, c, BlochVector(s));
    const Vec3 step = -pseudo_inverse_symmetric(ll.hessian) * ll.gradient;
    if (step.norm() < opt.step_tolerance) {
      report.converged = true;
      break;
    }

    double t = 1.0;
    const Vec3 full = s + step;
    if (full.norm() > 1.0) {
      report.hit_boundary = true;
      if (!sphere_rejected) {
        Vec3 start = sphere_crossing(s, full);
        if (!std::isfinite(log_likelihood_value(p, c, BlochVector(start.normalized()))) &&
            s.norm() > 0.0) {
          start = s;
        }
        const SphereResult sphere = maximize_on_sphere(p, c, start, opt);
        if (std::isfinite(sphere.value) && sphere.multiplier >= 0.0 &&
            sphere.value >= value) {
          report.estimate = BlochVector(sphere.point);
          report.iterations += sphere.iterations;
          report.converged = sphere.converged;
          return report;
        }
        // The maximum is interior; do not retry the sphere.
        sphere_rejected = true;
      }
      while ((s + t * step).norm() > 1.0 && t > 1e-16) t *= 0.5;
    }

    // Damping: halve until the log-likelihood increases.
    Vec3 next = s + t * step;
    double next_value = log_likelihood_value(p, c, BlochVector(next));
    while (!(std::isfinite(next_value) && next_value > value) && t > 1e-12) {
      t *= 0.5;
      next = s + t * step;
      next_value = log_likelihood_value(p, c, BlochVector(next));
    }
    if (!(std::isfinite(next_value) && next_value > value)) {
      // No inside point improves: the current iterate is kept.
      report.converged = true;
      break;
    }
    const double moved = (next - s).norm();
    const double gain = next_value - value;
    s = next;
    value = next_value;
    if (moved < opt.step_tolerance ||
        gain <= opt.loglik_tolerance * std::max(1.0, std::abs(value))) {
      report.converged = true;
      break;
    }
  }

  report.estimate = BlochVector(s);
  return report;
}

BlochVector project_to_tangent(const BlochVector& s_li, const BlochVector& s_true,
                               const FisherMatrix& f) {
  const Vec3 e = s_true.direction();
  const double along = e.dot(s_li.vec());
  if (along <= 1.0 + kHalfSpaceSlack) return s_li;
  const Vec3 fe = f.inverse() * e;
  return BlochVector(s_li.vec() - ((along - 1.0) / e.dot(fe)) * fe);
}

}  // namespace qtomo
