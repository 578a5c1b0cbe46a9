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

// Point estimators for one-qubit tomography data.
//
// linear_estimate() inverts the Born rule on relative frequencies and may
// leave the Bloch ball. mle() maximizes the multinomial log-likelihood over
// the ball. project_to_tangent() is not an estimator: it needs the true state
// and exists to model the asymptotic distribution of the MLE.

#pragma once

#include <cstdint>
#include <vector>

#include "qtomo/information.hpp"
#include "qtomo/qubit_core.hpp"

namespace qtomo {

/// Histogram N_x of one simulated data set.
struct OutcomeCounts {
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
  double frequency(std::size_t x) const;
};

/// Throws DomainError unless counts match the POVM, are nonnegative and sum
/// to at least one.
void check_counts(const Povm& p, const OutcomeCounts& c);

struct LinearFit {
  BlochVector point;
  /// max_x |w_x.s + v_x - f_N(x)|; zero when the Born-rule system is solvable.
  double max_residual = 0.0;

  bool consistent(double tol = 1e-12) const { return max_residual <= tol; }
};

/// Least-squares solution of w_x.s = f_N(x) - v_x. Throws
/// NotInformationallyCompleteError when {w_x} does not span R^3.
LinearFit linear_fit(const Povm& p, const OutcomeCounts& c);

/// linear_fit(p, c).point. For the XYZ measurement s_a = 3(f(a+) - f(a-)).
BlochVector linear_estimate(const Povm& p, const OutcomeCounts& c);

/// Log-likelihood with its first two derivatives in s.
struct LogLikelihood {
  double value = 0.0;
  Vec3 gradient = Vec3::Zero();
  Mat3 hessian = Mat3::Zero();
};

/// sum_x N_x log p(x|s). The value is -infinity when an observed outcome has
/// zero probability; gradient and Hessian are then NaN.
LogLikelihood log_likelihood(const Povm& p, const OutcomeCounts& c, const BlochVector& s);

/// Value only; cheaper inside line searches.
double log_likelihood_value(const Povm& p, const OutcomeCounts& c, const BlochVector& s);

struct MleOptions {
  double step_tolerance = 1e-10;
  double loglik_tolerance = 1e-12;
  int max_iterations = 200;
  /// Return the linear estimate directly when it solves the Born-rule system
  /// exactly and is physical.
  bool linear_fast_path = true;
};

struct MleReport {
  BlochVector estimate;
  int iterations = 0;
  bool converged = false;
  bool hit_boundary = false;
  bool used_linear_fast_path = false;
};

/// Maximum-likelihood estimate over the Bloch ball.
///
/// Damped Newton-Raphson from s = 0 with a pseudo-inverse step, so directions
/// the data do not constrain stay at zero. When a full step leaves the ball the
/// likelihood is maximized on the unit sphere and that point is accepted if the
/// gradient points outward there (KKT); otherwise the step is halved until it
/// lands inside the ball and iteration continues.
MleReport mle(const Povm& p, const OutcomeCounts& c, const MleOptions& options = {});

/// argmin over the half-space {t : e_s.t <= 1} of (s_li - t).F(s_li - t).
/// Points already inside are returned unchanged.
BlochVector project_to_tangent(const BlochVector& s_li, const BlochVector& s_true,
                               const FisherMatrix& f);

}  // namespace qtomo
