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

#pragma once

#include "qtomo/qubit_core.hpp"

namespace qtomo {

/// Moore-Penrose inverse of a symmetric 3x3 matrix via its spectral
/// decomposition. Eigenvalues with |lambda| <= rel_cutoff * max|lambda| are
/// treated as zero.
Mat3 pseudo_inverse_symmetric(const Mat3& a, double rel_cutoff = 1e-12);

/// Number of eigenvalues of a symmetric matrix above the same cutoff.
int symmetric_rank(const Mat3& a, double rel_cutoff = 1e-12);

/// Orthonormal basis (columns) of the plane orthogonal to the unit vector e.
Eigen::Matrix<double, 3, 2> orthonormal_complement(const Vec3& e);

}  // namespace qtomo
