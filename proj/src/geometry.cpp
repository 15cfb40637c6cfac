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

#include "fasuav/geometry.hpp"

#include "fasuav/config.hpp"
#include "fasuav/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fasuav {

namespace {

double distance(const Vec3& a, const Vec3& b)
{
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

}  // namespace

Vec3 uav_position(const Placement& placement, double theta)
{
    return {placement.radius * std::cos(theta), placement.radius * std::sin(theta),
            placement.altitude};
}

SlantRanges slant_ranges(const Placement& placement, double theta)
{
    const Vec3 uav = uav_position(placement, theta);
    const SlantRanges out{distance(uav, placement.bs), distance(uav, placement.ue)};
    if (!(out.d1 > 0.0) || !(out.d2 > 0.0)) {
        throw Error("coincident nodes");
    }
    return out;
}

double fspl_beta(double carrier_freq, double distance)
{
    const double ratio = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_freq * distance);
    return ratio * ratio;
}

double urban_beta(double carrier_freq, double distance, double eta_db)
{
    return fspl_beta(carrier_freq, distance) * std::pow(10.0, -eta_db / 10.0);
}

double elevation_deg(const Placement& placement, double theta, Hop hop)
{
    const SlantRanges d = slant_ranges(placement, theta);
    const double rise = hop == Hop::first ? placement.altitude - placement.bs[2]
                                          : placement.altitude - placement.ue[2];
    const double range = hop == Hop::first ? d.d1 : d.d2;
    return std::asin(std::clamp(rise / range, -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

double los_probability(double phi_deg, double a, double b)
{
    return 1.0 / (1.0 + a * std::exp(-b * (phi_deg - a)));
}

double hop_beta(const SystemConfig& config, double theta, Hop hop, LinkType type)
{
    const SlantRanges d = slant_ranges(config.placement, theta);
    const double range = hop == Hop::first ? d.d1 : d.d2;
    if (config.scenario == Scenario::rural) {
        return fspl_beta(config.radio.carrier_freq, range);
    }
    const double eta = type == LinkType::los ? config.urban.eta_los : config.urban.eta_nlos;
    return urban_beta(config.radio.carrier_freq, range, eta);
}

LinkBudget link_budget(const SystemConfig& config, const CorrelationModel& corr, double theta,
                       LinkType type)
{
    LinkBudget out;
    const double noise = config.radio.noise_power;
    out.gamma1_bar = config.radio.p1 * hop_beta(config, theta, Hop::first, type) / noise;
    out.gamma2_bar = config.radio.p2 * hop_beta(config, theta, Hop::second, type)
                     * corr.lambda_sum / noise;
    if (config.scenario == Scenario::urban) {
        const UrbanExcess& u = config.urban;
        out.p_los_1 = los_probability(elevation_deg(config.placement, theta, Hop::first), u.a, u.b);
        out.p_los_2 = los_probability(elevation_deg(config.placement, theta, Hop::second), u.a, u.b);
    }
    return out;
}

}  // namespace fasuav
