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

#include <cmath>

#include "qtomo/errors.hpp"
#include "qtomo/montecarlo.hpp"

namespace qtomo {

namespace {

// Stream tag separating oracle streams from tomography streams under the
// same master seed.
constexpr std::uint64_t kOracleTag = 0x6f7261636c65ULL;

}  // namespace

void validate_plan(const SimulationPlan& plan) {
  const PovmValidation v = validate_povm(plan.povm);
  if (!v.ok()) throw DomainError("invalid POVM: " + v.failures.front());
  if (!plan.s_true.physical()) throw DomainError("true state lies outside the Bloch ball");
  if (plan.n_grid.empty()) throw DomainError("n_grid is empty");
  for (std::size_t i = 0; i < plan.n_grid.size(); ++i) {
    if (plan.n_grid[i] < 1) throw DomainError("n_grid entries must be >= 1");
    if (i > 0 && plan.n_grid[i] <= plan.n_grid[i - 1]) {
      throw DomainError("n_grid must be strictly increasing");
    }
  }
  if (plan.sequences < 1) throw DomainError("sequences must be >= 1");
  if (plan.losses.empty()) throw DomainError("no loss functions requested");
}

ExpectedLossEstimate summarize(std::int64_t n, const std::vector<double>& values) {
  ExpectedLossEstimate e;
  e.n = n;
  e.sequences = static_cast<std::int64_t>(values.size());
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    const double m = static_cast<double>(values.size());
    e.std_error = std::sqrt(ss / (m - 1.0)) / std::sqrt(m);
  }
  return e;
}

LossFunctional LossFunctional::quadratic(const LossHessian& h) {
  return {Kind::kQuadratic, h.h};
}

LossFunctional LossFunctional::hilbert_schmidt() {
  return {Kind::kHilbertSchmidt, Mat3::Zero()};
}

LossFunctional LossFunctional::pure_infidelity() {
  return {Kind::kPureInfidelity, Mat3::Zero()};
}

double LossFunctional::operator()(const BlochVector& truth, const BlochVector& estimate) const {
  switch (kind_) {
    case Kind::kQuadratic: {
      const Vec3 d = estimate.vec() - truth.vec();
      return d.dot(h_ * d);
    }
    case Kind::kHilbertSchmidt:
      return hs_distance(truth, estimate);
    case Kind::kPureInfidelity:
      return 0.5 * (1.0 - truth.vec().dot(estimate.vec()));
  }
  return 0.0;
}

namespace detail {

SequenceResult run_sequence(const SimulationPlan& plan, std::size_t n_index,
                            std::int64_t sequence) {
  RngStream rng = make_stream(plan.seed, n_index, static_cast<std::uint64_t>(sequence));
  const OutcomeCounts counts =
      sample_counts(plan.povm, plan.s_true, plan.n_grid[n_index], rng, plan.sampling);
  const MleReport fit = mle(plan.povm, counts, plan.mle);
  SequenceResult r;
  r.converged = fit.converged;
  r.boundary = fit.hit_boundary;
  r.hs = hs_distance(plan.s_true, fit.estimate);
  r.infid = infidelity(plan.s_true, fit.estimate);
  return r;
}

std::vector<EmpiricalLossPoint> reduce_sequences(const SimulationPlan& plan,
                                                 std::size_t n_index,
                                                 const std::vector<SequenceResult>& results) {
  std::int64_t failed = 0;
  std::int64_t boundary = 0;
  for (const auto& r : results) {
    failed += r.converged ? 0 : 1;
    boundary += r.boundary ? 1 : 0;
  }
  const bool flagged = static_cast<double>(failed) >
                       kFailureFlagFraction * static_cast<double>(results.size());

  std::vector<EmpiricalLossPoint> out;
  std::vector<double> values(results.size());
  for (LossKind kind : plan.losses) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      values[i] = kind == LossKind::kHilbertSchmidt ? results[i].hs : results[i].infid;
    }
    EmpiricalLossPoint p;
    p.loss = kind;
    p.estimate = summarize(plan.n_grid[n_index], values);
    p.failed_sequences = failed;
    p.boundary_hits = boundary;
    p.flagged = flagged;
    out.push_back(p);
  }
  return out;
}

OracleSetup make_oracle_setup(const BlochVector& s, const FisherMatrix& f, std::int64_t n) {
  if (n < 1) throw DomainError("trial count must be >= 1");
  if (s.norm() == 0.0) {
    throw UndefinedDirectionError("oracle needs a boundary direction; s = 0 has none");
  }
  const Mat3 cov = f.inverse() / static_cast<double>(n);
  return OracleSetup{s, f, GaussianSampler(s.vec(), 0.5 * (cov + cov.transpose()))};
}

void run_oracle_block(const OracleSetup& setup, const LossFunctional& loss,
                      std::uint64_t seed, std::int64_t block, std::int64_t count,
                      OracleBlock& out) {
  RngStream rng = make_stream(seed, kOracleTag, static_cast<std::uint64_t>(block));
  const Vec3 e = setup.s.direction();
  out.values.resize(static_cast<std::size_t>(count));
  out.projected = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const BlochVector li(setup.sampler(rng));
    if (e.dot(li.vec()) > 1.0) ++out.projected;
    const BlochVector est = project_to_tangent(li, setup.s, setup.f);
    out.values[static_cast<std::size_t>(i)] = loss(setup.s, est);
  }
}

OracleEstimate reduce_oracle(std::int64_t n, std::int64_t m,
                             const std::vector<OracleBlock>& blocks) {
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(m));
  std::int64_t projected = 0;
  for (const auto& b : blocks) {
    all.insert(all.end(), b.values.begin(), b.values.end());
    projected += b.projected;
  }
  OracleEstimate o;
  o.estimate = summarize(n, all);
  o.projection_rate = static_cast<double>(projected) / static_cast<double>(m);
  return o;
}

}  // namespace detail

}  // namespace qtomo
