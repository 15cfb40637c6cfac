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

// Node placement on the circular UAV trajectory, air-to-ground path loss and
// the per-hop average SNRs for the rural (free-space) and urban (LoS/NLoS
// mixture) scenarios. Angles are radians everywhere except the LoS
// probability model, which takes elevation in degrees.

#include <array>

namespace fasuav {

struct SystemConfig;
struct CorrelationModel;

inline constexpr double kSpeedOfLight = 299'792'458.0;

using Vec3 = std::array<double, 3>;

struct Placement {
    Vec3 bs{1000.0, 0.0, 40.0};
    Vec3 ue{-1000.0, 1000.0, 0.0};
    double radius = 50.0;     ///< r
    double altitude = 100.0;  ///< Z_U
};

struct RadioParams {
    double carrier_freq = 2.5e9;  ///< Hz
    double noise_power = 1e-13;   ///< W
    double p1 = 0.0316227766;     ///< W, BS transmit power
    double p2 = 0.01;             ///< W, UAV transmit power
};

struct UrbanExcess {
    double eta_los = 1.6;    ///< dB
    double eta_nlos = 23.0;  ///< dB
    double a = 12.08;
    double b = 0.11;
    int m_los = 5;
    int m_nlos = 1;
};

enum class Hop { first = 1, second = 2 };
enum class LinkType { los, nlos };

/// Average SNRs of both hops for one link type, plus the LoS probabilities
/// (fixed to 1 in the rural scenario).
struct LinkBudget {
    double gamma1_bar = 0.0;
    double gamma2_bar = 0.0;
    double p_los_1 = 1.0;
    double p_los_2 = 1.0;
};

struct SlantRanges {
    double d1 = 0.0;  ///< BS to UAV, m
    double d2 = 0.0;  ///< UAV to UE, m
};

/// UAV position at heading theta on its circle.
Vec3 uav_position(const Placement& placement, double theta);

/// Euclidean BS-UAV and UAV-UE distances. Throws "coincident nodes" on zero.
SlantRanges slant_ranges(const Placement& placement, double theta);

/// Free-space gain (c / (4 pi f d))^2.
double fspl_beta(double carrier_freq, double distance);

/// Free-space gain with an excess loss of eta_db.
double urban_beta(double carrier_freq, double distance, double eta_db);

/// Elevation of the UAV seen from the BS (hop 1) or the UE (hop 2), degrees.
double elevation_deg(const Placement& placement, double theta, Hop hop);

/// Sigmoid LoS model 1 / (1 + a exp(-b (phi - a))), phi in degrees.
double los_probability(double phi_deg, double a, double b);

/// Average SNRs at heading theta. Rural ignores `type`.
LinkBudget link_budget(const SystemConfig& config, const CorrelationModel& corr, double theta,
                       LinkType type = LinkType::los);

/// Large-scale gain for one hop (rural: free space; urban: with the excess
/// loss of `type`).
double hop_beta(const SystemConfig& config, double theta, Hop hop, LinkType type);

}  // namespace fasuav
