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

// Normal approximation of the finite-blocklength error probability and the
// piecewise-linear surrogate used by the closed-form averages.

namespace fasuav {

/// Blocklengths below this are outside the regime where the normal
/// approximation's O(log L / L) remainder can be dropped.
inline constexpr int kMinAccurateBlocklength = 100;

struct FblParams {
    int payload_bits = 0;   ///< B
    int blocklength = 0;    ///< L (channel uses)
    double rate = 0.0;      ///< R = B / L, bits per use
    double tau = 0.0;       ///< SNR at which capacity equals R
    double chi = 0.0;       ///< slope of the linear ramp
    double rho_l = 0.0;     ///< lower knee (may be negative at very low rate)
    double rho_h = 0.0;     ///< upper knee

    /// Lower integration limit on the SNR axis, max(rho_l, 0).
    double lower_limit() const { return rho_l > 0.0 ? rho_l : 0.0; }

    /// False when the blocklength is below kMinAccurateBlocklength.
    bool in_validity_regime() const { return blocklength >= kMinAccurateBlocklength; }
};

/// Throws fasuav::Error on non-positive inputs.
FblParams derive_fbl(int payload_bits, int blocklength);

/// Exact normal-approximation BLER Q((C(g) - R) / sqrt(V(g) / L)).
/// Zero SNR is defined as certain failure.
double instantaneous_bler(double gamma, const FblParams& fbl);

/// 1 below rho_l, 0 above rho_h, 1/2 - chi (gamma - tau) in between.
double piecewise_q(double gamma, const FblParams& fbl);

/// Channel dispersion V(gamma) in bits^2 per use.
double channel_dispersion(double gamma);

}  // namespace fasuav
