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

#include "fasuav/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fasuav {

namespace {

// P(s, z) by the power series; accurate for z < s + 1.
double gamma_p_series(int s, double z)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 10000; ++k) {
        term *= z / (s + k);
        sum += term;
        if (term < sum * 1e-17) {
            break;
        }
    }
    const double log_prefix = s * std::log(z) - z - std::lgamma(s + 1.0);
    return std::exp(log_prefix) * sum;
}

// Q(s, z) = e^{-z} sum_{k<s} z^k / k!, summed from the largest index down.
double gamma_q_finite(int s, double z)
{
    double term = std::exp((s - 1) * std::log(z) - z - std::lgamma(static_cast<double>(s)));
    double sum = term;
    for (int k = s - 1; k >= 1; --k) {
        term *= k / z;
        sum += term;
    }
    return sum;
}

}  // namespace

double gamma_p(int s, double z)
{
    if (!(z > 0.0)) {
        return 0.0;
    }
    if (std::isinf(z)) {
        return 1.0;
    }
    if (z < s + 1.0) {
        return gamma_p_series(s, z);
    }
    return 1.0 - gamma_q_finite(s, z);
}

double gamma_q(int s, double z)
{
    if (!(z > 0.0)) {
        return 1.0;
    }
    if (std::isinf(z)) {
        return 0.0;
    }
    if (z < s + 1.0) {
        return 1.0 - gamma_p_series(s, z);
    }
    return gamma_q_finite(s, z);
}

double gamma_p_diff(int s, double z_lo, double z_hi)
{
    if (z_lo >= s + 1.0) {
        return gamma_q(s, z_lo) - gamma_q(s, z_hi);
    }
    return gamma_p(s, z_hi) - gamma_p(s, z_lo);
}

double gaussian_q(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double acc = 0.0;
        for (double v : values) {
            acc += v;
        }
        return acc;
    }
    const auto half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace fasuav
