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

#include "qtomo/sampling.hpp"

#include <algorithm>
#include <vector>

#include "qtomo/errors.hpp"

namespace qtomo {

namespace {

std::vector<double> clamped_probabilities(const Povm& p, const BlochVector& s) {
  std::vector<double> probs = outcome_probabilities(p, s);
  for (auto& q : probs) q = std::max(q, 0.0);
  return probs;
}

}  // namespace

OutcomeCounts sample_counts(const Povm& p, const BlochVector& s, std::int64_t n,
                            RngStream& rng, SamplingMethod method) {
  if (n < 1) throw DomainError("trial count must be >= 1");
  const std::vector<double> probs = clamped_probabilities(p, s);
  const std::size_t k = probs.size();
  OutcomeCounts c;
  c.counts.assign(k, 0);

  if (method == SamplingMethod::kAuto) {
    method = n <= kCategoricalLimit ? SamplingMethod::kCategorical
                                    : SamplingMethod::kSequentialBinomial;
  }

  if (method == SamplingMethod::kCategorical) {
    std::vector<double> cumulative(k);
    double acc = 0.0;
    for (std::size_t x = 0; x < k; ++x) cumulative[x] = (acc += probs[x]);
    std::uniform_real_distribution<double> unif(0.0, acc);
    for (std::int64_t i = 0; i < n; ++i) {
      const double u = unif(rng);
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      std::size_t x = static_cast<std::size_t>(it - cumulative.begin());
      if (x >= k) {
        // u rounded up to the total: take the last outcome with mass.
        x = k - 1;
        while (probs[x] == 0.0 && x > 0) --x;
      }
      ++c.counts[x];
    }
    return c;
  }

  std::int64_t remaining = n;
  double mass = 0.0;
  for (double q : probs) mass += q;
  for (std::size_t x = 0; x + 1 < k && remaining > 0; ++x) {
    const double q = mass > 0.0 ? std::clamp(probs[x] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::int64_t> binom(remaining, q);
    const std::int64_t draw = q >= 1.0 ? remaining : binom(rng);
    c.counts[x] = draw;
    remaining -= draw;
    mass -= probs[x];
  }
  c.counts[k - 1] += remaining;
  return c;
}

GaussianSampler::GaussianSampler(const Vec3& mean, const Mat3& covariance) : mean_(mean) {
  if (!covariance.allFinite() ||
      (covariance - covariance.transpose()).cwiseAbs().maxCoeff() >
          1e-12 * covariance.cwiseAbs().maxCoeff()) {
    throw SingularMatrixError("covariance must be a finite symmetric matrix");
  }
  Eigen::LLT<Mat3> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw SingularMatrixError("covariance is not positive definite");
  }
  chol_ = llt.matrixL();
  if (chol_.diagonal().minCoeff() <= 0.0) {
    throw SingularMatrixError("covariance is not positive definite");
  }
}

Vec3 GaussianSampler::operator()(RngStream& rng) const {
  std::normal_distribution<double> normal;
  Vec3 z;
  for (int i = 0; i < 3; ++i) z(i) = normal(rng);
  return mean_ + chol_ * z;
}

Vec3 gaussian_sample(const Vec3& mean, const Mat3& covariance, RngStream& rng) {
  return GaussianSampler(mean, covariance)(rng);
}

}  // namespace qtomo
