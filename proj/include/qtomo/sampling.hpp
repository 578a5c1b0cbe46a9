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

// Random streams and the two samplers the simulations need: multinomial
// outcome counts and correlated Gaussian vectors.

#pragma once

#include <cstdint>
#include <random>

#include "qtomo/estimators.hpp"
#include "qtomo/qubit_core.hpp"

namespace qtomo {

using RngStream = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the stream for work item (a, b) under a master seed. Streams are
/// a pure function of (master, a, b), which keeps results independent of how
/// work items are scheduled.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(master) ^ (a * 0xd1b54a32d192ed03ULL)) ^
               (b * 0x8cb92ba72f3d8dd7ULL));
}

inline RngStream make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return RngStream(stream_seed(master, a, b));
}

enum class SamplingMethod {
  kAuto,                // categorical up to kCategoricalLimit trials, binomial above
  kCategorical,         // n independent categorical draws
  kSequentialBinomial,  // N_x ~ Binomial(remaining, p_x / remaining mass)
};

inline constexpr std::int64_t kCategoricalLimit = 1000;

/// Multinomial(n; p(.|s)) outcome counts.
OutcomeCounts sample_counts(const Povm& p, const BlochVector& s, std::int64_t n,
                            RngStream& rng, SamplingMethod method = SamplingMethod::kAuto);

/// Draws from Normal(mean, covariance) through a Cholesky factor computed once.
class GaussianSampler {
 public:
  /// Throws SingularMatrixError if covariance is not symmetric positive definite.
  GaussianSampler(const Vec3& mean, const Mat3& covariance);

  Vec3 operator()(RngStream& rng) const;
  const Mat3& factor() const { return chol_; }

 private:
  Vec3 mean_;
  Mat3 chol_;
};

/// One draw; builds the factor on every call.
Vec3 gaussian_sample(const Vec3& mean, const Mat3& covariance, RngStream& rng);

}  // namespace qtomo
