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

// Energy-efficiency model and the nested grid search over blocklength,
// altitude and port count, with a dB-domain bisection for the minimum
// transmit power meeting the reliability target.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace fasuav {

struct SystemConfig;

struct EeParams {
    double p_c = 3.1622776601683795e-3;  ///< W, static circuit power
    double p_sw = 1e-3;                  ///< W, port switching power
    double tau_p = 2e-6;                 ///< s per scanned port
    double w_band = 10e6;                ///< Hz
};

struct SearchSpace {
    double p_max = 1.0;    ///< W
    double p_min = 1e-6;   ///< W
    double z_min = 100.0;
    double z_max = 800.0;
    double z_step = 25.0;
    int l_min = 200;
    int l_max = 1000;
    int l_step = 50;
    int n_min = 1;
    int n_max = 16;
    double eps_th = 1e-3;
    double delta_db = 0.01;
    int spot_checks = 5;   ///< random monotonicity pairs per bisection
};

std::vector<double> altitude_grid(const SearchSpace& space);
std::vector<int> blocklength_grid(const SearchSpace& space);

/// N tau_p < L / W_band.
bool causality_ok(int ports, int blocklength, const EeParams& ee);

/// Delivered bits per Joule. Throws "causality violated" when the port scan
/// does not fit in the block.
double energy_efficiency(double bler, double p2, int ports, int blocklength, int payload_bits,
                         const EeParams& ee);

using BlerEvaluator = std::function<double(double p2)>;

struct BisectionResult {
    bool feasible = false;
    double p_star = 0.0;       ///< W
    double bler = 1.0;         ///< at p_star (or at p_max when infeasible)
    int midpoint_calls = 0;    ///< evaluations inside the bisection loop
    int total_calls = 0;       ///< including endpoint and spot checks
};

/// ceil(log2((P_max_dB - P_min_dB) / delta)).
int bisection_call_bound(const SearchSpace& space);

/// Minimum power in [p_min, p_max] with BLER <= eps_th, to delta dB. Throws
/// "monotonicity violated" when a sampled pair is out of order.
BisectionResult min_power_bisection(const SearchSpace& space, const BlerEvaluator& bler,
                                    std::uint64_t check_seed = 0);

/// Analytic average BLER as a function of (L, Z_U, N, P2) for one base
/// configuration. Pipelines and results are cached.
class EeModel {
public:
    explicit EeModel(const SystemConfig& base);
    ~EeModel();
    EeModel(const EeModel&) = delete;
    EeModel& operator=(const EeModel&) = delete;

    double bler(int blocklength, double altitude, int ports, double p2);
    BlerEvaluator evaluator(int blocklength, double altitude, int ports);

    const SystemConfig& base() const { return *base_; }
    std::uint64_t evaluations() const { return evaluations_; }
    std::uint64_t cache_hits() const { return hits_; }

private:
    struct Impl;
    std::unique_ptr<SystemConfig> base_;
    std::unique_ptr<Impl> impl_;
    std::uint64_t evaluations_ = 0;
    std::uint64_t hits_ = 0;
};

struct PortPoint {
    int ports = 0;
    bool causal = false;
    bool feasible = false;
    double p2 = 0.0;
    double bler = 1.0;
    double ee = 0.0;  ///< 0 when causality or reliability fails
};

struct PortsOutcome {
    bool feasible = false;
    int n_star = 0;
    double p2_star = 0.0;
    double bler = 1.0;
    double ee = 0.0;
    std::vector<PortPoint> profile;
};

struct AltitudeOutcome {
    bool feasible = false;
    double z_star = 0.0;
    PortsOutcome ports;
    std::vector<std::pair<double, PortsOutcome>> profile;
};

struct SurfacePoint {
    int blocklength = 0;
    double altitude = 0.0;
    bool feasible = false;
    int n_star = 0;
    double p2_star = 0.0;
    double ee = 0.0;
};

struct EeOutcome {
    bool feasible = false;
    int l_star = 0;
    double z_star = 0.0;
    int n_star = 0;
    double p2_star = 0.0;
    double bler = 1.0;
    double ee_max = 0.0;
    std::string binding;  ///< diagnostic when infeasible
    std::vector<SurfacePoint> surface;
};

PortsOutcome optimal_ports(int blocklength, double altitude, const SearchSpace& space,
                           EeModel& model);
AltitudeOutcome optimal_altitude(int blocklength, const SearchSpace& space, EeModel& model);
EeOutcome joint_optimize(const SearchSpace& space, EeModel& model);

}  // namespace fasuav
