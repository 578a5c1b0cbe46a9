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

// Monte Carlo engines.
//
// empirical_expected_loss() simulates full tomography: multinomial counts,
// MLE, loss against the true state, averaged over independent sequences.
// gaussian_projection_oracle() integrates the closed-form model of
// boundary_approx.hpp by sampling.
//
// Each work item draws from its own stream, seeded from (master seed, N
// index, sequence index), and per-item results are reduced in index order.
// The OpenMP kernels in this header and the serial reference kernels in
// namespace serial therefore return bit-identical results for any thread
// count.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtomo/estimators.hpp"
#include "qtomo/information.hpp"
#include "qtomo/losses.hpp"
#include "qtomo/sampling.hpp"

namespace qtomo {

/// Failure fraction above which an estimate is flagged.
inline constexpr double kFailureFlagFraction = 1e-3;

struct SimulationPlan {
  Povm povm;
  BlochVector s_true;
  std::vector<std::int64_t> n_grid;
  std::int64_t sequences = 10000;
  std::uint64_t seed = 0;
  std::vector<LossKind> losses{LossKind::kHilbertSchmidt, LossKind::kInfidelity};
  MleOptions mle{};
  SamplingMethod sampling = SamplingMethod::kAuto;
};

/// Throws DomainError describing the first violated invariant.
void validate_plan(const SimulationPlan& plan);

/// Sample mean of a loss with its Monte Carlo standard error.
struct ExpectedLossEstimate {
  std::int64_t n = 0;
  double mean = 0.0;
  /// sample stddev / sqrt(sequences); empty when sequences == 1.
  std::optional<double> std_error;
  std::int64_t sequences = 0;
};

/// Mean and standard error of values, summed in order.
ExpectedLossEstimate summarize(std::int64_t n, const std::vector<double>& values);

struct EmpiricalLossPoint {
  LossKind loss = LossKind::kHilbertSchmidt;
  ExpectedLossEstimate estimate;
  std::int64_t failed_sequences = 0;  // MLE did not converge
  std::int64_t boundary_hits = 0;     // MLE landed on the sphere
  bool flagged = false;               // failures above kFailureFlagFraction
};

/// Loss applied to (true state, estimate) inside the oracle.
class LossFunctional {
 public:
  enum class Kind { kQuadratic, kHilbertSchmidt, kPureInfidelity };

  /// (t - s)^T H (t - s).
  static LossFunctional quadratic(const LossHessian& h);
  /// hs_distance(s, t).
  static LossFunctional hilbert_schmidt();
  /// (1 - s.t)/2, the exact infidelity when s is pure. Defined for every t.
  static LossFunctional pure_infidelity();

  Kind kind() const { return kind_; }
  double operator()(const BlochVector& truth, const BlochVector& estimate) const;

 private:
  LossFunctional(Kind k, const Mat3& h) : kind_(k), h_(h) {}
  Kind kind_;
  Mat3 h_;
};

struct OracleEstimate {
  ExpectedLossEstimate estimate;
  /// Fraction of samples that fell outside the tangent half-space.
  double projection_rate = 0.0;
};

struct ParallelOptions {
  int threads = 0;  // 0: OpenMP default
};

/// Full tomography simulation; one point per (N, loss), N-major.
std::vector<EmpiricalLossPoint> empirical_expected_loss(const SimulationPlan& plan,
                                                        const ParallelOptions& par = {});

/// Samples s_li ~ Normal(s, F^-1/N), applies project_to_tangent and averages
/// the loss over m samples.
OracleEstimate gaussian_projection_oracle(const BlochVector& s, const FisherMatrix& f,
                                          std::int64_t n, std::int64_t m,
                                          const LossFunctional& loss, std::uint64_t seed,
                                          const ParallelOptions& par = {});

namespace serial {

/// Reference kernels: same contracts as above, single-threaded.
std::vector<EmpiricalLossPoint> empirical_expected_loss(const SimulationPlan& plan);
OracleEstimate gaussian_projection_oracle(const BlochVector& s, const FisherMatrix& f,
                                          std::int64_t n, std::int64_t m,
                                          const LossFunctional& loss, std::uint64_t seed);

}  // namespace serial

namespace detail {

// Work-item kernels shared by the serial and OpenMP drivers.

struct SequenceResult {
  double hs = 0.0;
  double infid = 0.0;
  bool converged = true;
  bool boundary = false;
};

SequenceResult run_sequence(const SimulationPlan& plan, std::size_t n_index,
                            std::int64_t sequence);

std::vector<EmpiricalLossPoint> reduce_sequences(
    const SimulationPlan& plan, std::size_t n_index,
    const std::vector<SequenceResult>& results);

inline constexpr std::int64_t kOracleBlock = 4096;

struct OracleBlock {
  std::vector<double> values;
  std::int64_t projected = 0;
};

struct OracleSetup {
  BlochVector s;
  FisherMatrix f;
  GaussianSampler sampler;
};

OracleSetup make_oracle_setup(const BlochVector& s, const FisherMatrix& f, std::int64_t n);

void run_oracle_block(const OracleSetup& setup, const LossFunctional& loss,
                      std::uint64_t seed, std::int64_t block, std::int64_t count,
                      OracleBlock& out);

OracleEstimate reduce_oracle(std::int64_t n, std::int64_t m,
                             const std::vector<OracleBlock>& blocks);

}  // namespace detail

}  // namespace qtomo
