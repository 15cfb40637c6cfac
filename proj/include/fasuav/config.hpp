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

// Run configuration: every scalar of the system model in internal units
// (Watts, linear gains, radians), and a flat `key = value` text format with
// dBm/dB fields converted at load time.

#include "fasuav/bler_analytic.hpp"
#include "fasuav/ee_optimizer.hpp"
#include "fasuav/fas_correlation.hpp"
#include "fasuav/geometry.hpp"
#include "fasuav/montecarlo.hpp"

#include <filesystem>
#include <string>

namespace fasuav {

enum class Scenario { rural, urban };

struct SystemConfig {
    Scenario scenario = Scenario::rural;
    Placement placement;
    RadioParams radio;
    UrbanExcess urban;
    FasGeometry fas;
    double rank_tol = kDefaultRankTolerance;
    int payload_bits = 80;   ///< B
    int blocklength = 200;   ///< L
    int m1 = 7;              ///< rural hop-1 shape
    int m2 = 7;              ///< rural hop-2 shape
    EeParams ee;
    SearchSpace search;
    int quadrature_order = 32;
    GcqRule quadrature_rule = GcqRule::fejer;
    McConfig mc;

    /// Shapes of hop 1 and hop 2 for a link type (rural ignores the type).
    int hop1_shape(LinkType type) const;
    int hop2_shape(LinkType type) const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

/// Checks every invariant; throws ConfigError naming the first offending key.
void validate(const SystemConfig& config);

SystemConfig parse_config(const std::string& text);
SystemConfig load_config(const std::filesystem::path& path);

/// Every field, powers in Watts, at full precision: parse_config(emit_config(c))
/// reproduces c exactly.
std::string emit_config(const SystemConfig& config);

/// Table I defaults for a scenario (altitude 100 m).
SystemConfig preset(Scenario scenario);

const char* to_string(Scenario scenario);
const char* to_string(GcqRule rule);
const char* to_string(McMode mode);

/// 64-bit FNV-1a of emit_config(config), hex.
std::string config_hash(const SystemConfig& config);

}  // namespace fasuav
