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

// OpenMP kernels. Exceptions must not escape a parallel region, so the first
// one is captured and rethrown after the loop.

#include <omp.h>

#include <exception>

#include "qtomo/errors.hpp"
#include "qtomo/montecarlo.hpp"

namespace qtomo {

namespace {

int thread_count(const ParallelOptions& par) {
  return par.threads > 0 ? par.threads : omp_get_max_threads();
}

class ExceptionSlot {
 public:
  void capture() {
#pragma omp critical(qtomo_exception_slot)
    {
      if (!ptr_) ptr_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (ptr_) std::rethrow_exception(ptr_);
  }

 private:
  std::exception_ptr ptr_;
};

}  // namespace

std::vector<EmpiricalLossPoint> empirical_expected_loss(const SimulationPlan& plan,
                                                        const ParallelOptions& par) {
  validate_plan(plan);
  const int threads = thread_count(par);
  std::vector<EmpiricalLossPoint> out;
  std::vector<detail::SequenceResult> results(static_cast<std::size_t>(plan.sequences));

  for (std::size_t k = 0; k < plan.n_grid.size(); ++k) {
    ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
    for (std::int64_t i = 0; i < plan.sequences; ++i) {
      try {
        results[static_cast<std::size_t>(i)] = detail::run_sequence(plan, k, i);
      } catch (...) {
        slot.capture();
      }
    }
    slot.rethrow();
    auto points = detail::reduce_sequences(plan, k, results);
    out.insert(out.end(), points.begin(), points.end());
  }
  return out;
}

OracleEstimate gaussian_projection_oracle(const BlochVector& s, const FisherMatrix& f,
                                          std::int64_t n, std::int64_t m,
                                          const LossFunctional& loss, std::uint64_t seed,
                                          const ParallelOptions& par) {
  if (m < 1) throw DomainError("oracle sample count must be >= 1");
  const detail::OracleSetup setup = detail::make_oracle_setup(s, f, n);
  const std::int64_t nblocks = (m + detail::kOracleBlock - 1) / detail::kOracleBlock;
  std::vector<detail::OracleBlock> blocks(static_cast<std::size_t>(nblocks));

  ExceptionSlot slot;
#pragma omp parallel for schedule(static) num_threads(thread_count(par))
  for (std::int64_t b = 0; b < nblocks; ++b) {
    try {
      const std::int64_t count = std::min(detail::kOracleBlock, m - b * detail::kOracleBlock);
      detail::run_oracle_block(setup, loss, seed, b, count, blocks[static_cast<std::size_t>(b)]);
    } catch (...) {
      slot.capture();
    }
  }
  slot.rethrow();
  return detail::reduce_oracle(n, m, blocks);
}

}  // namespace qtomo
