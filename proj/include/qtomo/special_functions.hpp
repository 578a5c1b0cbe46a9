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

namespace qtomo {

/// Complementary error function (2/sqrt(pi)) * int_a^inf exp(-t^2) dt.
///
/// Rational Chebyshev approximations on [0, 0.46875], (0.46875, 4] and
/// (4, inf) (W. J. Cody, Math. Comp. 1969); negative arguments use
/// erfc(-a) = 2 - erfc(a). Independent of the platform libm erfc.
double erfc(double a);

/// Partial sum of the large-a asymptotic series
///   exp(-a^2)/(sqrt(pi) a) * (1 + sum_{m=1}^{m_max} (-1)^m (2m-1)!! / (2a^2)^m).
/// Requires a > 0. Only meant for cross-checking erfc().
double erfc_asymptotic(double a, int m_max);

}  // namespace qtomo
