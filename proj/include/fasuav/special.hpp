// SPDX-License-Identifier: Apache-2.0
//
// fasuav - finite-blocklength reliability and energy-efficiency toolkit
// for fluid-antenna UAV relay links.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Scalar special functions shared by the analytic and simulation paths.

#include <span>

namespace fasuav {

/// Regularized lower incomplete gamma P(s, z) for integer shape s >= 1.
double gamma_p(int s, double z);

/// Regularized upper incomplete gamma Q(s, z) = 1 - P(s, z).
double gamma_q(int s, double z);

/// P(s, z_hi) - P(s, z_lo) evaluated without cancellation in either tail.
double gamma_p_diff(int s, double z_lo, double z_hi);

/// Gaussian tail probability Q(x) = 0.5 erfc(x / sqrt 2).
double gaussian_q(double x);

/// Deterministic pairwise summation (fixed association order).
double pairwise_sum(std::span<const double> values);

}  // namespace fasuav
