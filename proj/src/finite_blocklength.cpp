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

#include "fasuav/finite_blocklength.hpp"

#include "fasuav/error.hpp"
#include "fasuav/special.hpp"

#include <cmath>
#include <numbers>

namespace fasuav {

FblParams derive_fbl(int payload_bits, int blocklength)
{
    if (payload_bits < 1) {
        throw Error("payload bits must be positive");
    }
    if (blocklength < 1) {
        throw Error("blocklength must be positive");
    }
    FblParams p;
    p.payload_bits = payload_bits;
    p.blocklength = blocklength;
    p.rate = static_cast<double>(payload_bits) / blocklength;
    p.tau = std::exp2(p.rate) - 1.0;
    p.chi = 1.0 / std::sqrt(2.0 * std::numbers::pi * p.tau / blocklength);
    const double half_width = 1.0 / (2.0 * p.chi);
    p.rho_l = p.tau - half_width;
    p.rho_h = p.tau + half_width;
    return p;
}

double channel_dispersion(double gamma)
{
    const double inv = 1.0 / (1.0 + gamma);
    // 1 - (1+g)^-2 written to stay accurate as g -> 0.
    return gamma * (2.0 + gamma) * inv * inv * std::numbers::log2e * std::numbers::log2e;
}

double instantaneous_bler(double gamma, const FblParams& fbl)
{
    if (!(gamma > 0.0)) {
        return 1.0;
    }
    if (std::isinf(gamma)) {
        return 0.0;
    }
    const double capacity = std::log2(1.0 + gamma);
    const double spread = std::sqrt(channel_dispersion(gamma) / fbl.blocklength);
    return gaussian_q((capacity - fbl.rate) / spread);
}

double piecewise_q(double gamma, const FblParams& fbl)
{
    if (gamma <= fbl.rho_l) {
        return 1.0;
    }
    if (gamma >= fbl.rho_h) {
        return 0.0;
    }
    return 0.5 - fbl.chi * (gamma - fbl.tau);
}

}  // namespace fasuav
