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

#include "fasuav/ee_optimizer.hpp"

#include "fasuav/config.hpp"
#include "fasuav/error.hpp"
#include "fasuav/pipeline.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace fasuav {

std::vector<double> altitude_grid(const SearchSpace& space)
{
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double z = space.z_min + i * space.z_step;
        if (z > space.z_max + 1e-9 * space.z_step) {
            break;
        }
        out.push_back(z);
    }
    return out;
}

std::vector<int> blocklength_grid(const SearchSpace& space)
{
    std::vector<int> out;
    for (int l = space.l_min; l <= space.l_max; l += space.l_step) {
        out.push_back(l);
    }
    return out;
}

bool causality_ok(int ports, int blocklength, const EeParams& ee)
{
    // picosecond resolution
    const double scan = ports * ee.tau_p;
    const double block = blocklength / ee.w_band;
    return std::llround(scan * 1e12) < std::llround(block * 1e12);
}

double energy_efficiency(double bler, double p2, int ports, int blocklength, int payload_bits,
                         const EeParams& ee)
{
    if (!causality_ok(ports, blocklength, ee)) {
        throw Error("causality violated");
    }
    const double t_block = blocklength / ee.w_band;
    const double t_sw = ports * ee.tau_p;
    const double energy = p2 * (t_block - t_sw) + ee.p_c * t_block + ee.p_sw * t_sw;
    return payload_bits * (1.0 - bler) / energy;
}

int bisection_call_bound(const SearchSpace& space)
{
    const double range = watts_to_dbm(space.p_max) - watts_to_dbm(space.p_min);
    return static_cast<int>(std::ceil(std::log2(range / space.delta_db)));
}

BisectionResult min_power_bisection(const SearchSpace& space, const BlerEvaluator& bler,
                                    std::uint64_t check_seed)
{
    BisectionResult out;
    double lo = watts_to_dbm(space.p_min);
    double hi = watts_to_dbm(space.p_max);
    auto eval = [&](double dbm) {
        ++out.total_calls;
        return bler(dbm_to_watts(dbm));
    };

    double bler_hi = eval(hi);
    if (bler_hi > space.eps_th) {
        out.bler = bler_hi;
        return out;
    }
    out.feasible = true;
    const double bler_lo = eval(lo);
    if (bler_lo <= space.eps_th) {
        out.p_star = space.p_min;
        out.bler = bler_lo;
        return out;
    }

    std::mt19937_64 rng(check_seed);
    std::uniform_real_distribution<double> pick(lo, hi);
    for (int i = 0; i < space.spot_checks; ++i) {
        double a = pick(rng);
        double b = pick(rng);
        if (a > b) {
            std::swap(a, b);
        }
        const double fa = eval(a);
        const double fb = eval(b);
        if (fa < fb - 1e-12 - 1e-9 * fb) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "monotonicity violated: BLER(" << a << " dBm) = " << fa << " < BLER(" << b
                << " dBm) = " << fb;
            throw Error(msg.str());
        }
    }

    while (hi - lo > space.delta_db) {
        const double mid = 0.5 * (lo + hi);
        const double value = eval(mid);
        ++out.midpoint_calls;
        if (value <= space.eps_th) {
            hi = mid;
            bler_hi = value;
        } else {
            lo = mid;
        }
    }
    out.p_star = dbm_to_watts(hi);
    out.bler = bler_hi;
    return out;
}

// ---- cached analytic model -------------------------------------------------

struct EeModel::Impl {
    std::map<int, CorrelationModel> correlations;
    std::map<std::tuple<int, long long, int>, std::unique_ptr<AnalyticPipeline>> pipelines;
    std::map<std::tuple<int, long long, int, long long>, double> results;

    static constexpr std::size_t kPipelineCache = 64;
};

EeModel::EeModel(const SystemConfig& base)
    : base_(std::make_unique<SystemConfig>(base)), impl_(std::make_unique<Impl>())
{
}

EeModel::~EeModel() = default;

double EeModel::bler(int blocklength, double altitude, int ports, double p2)
{
    const long long z_key = std::llround(altitude * 1000.0);
    const long long p_key = std::llround(watts_to_dbm(p2) * 1000.0);
    const auto key = std::make_tuple(blocklength, z_key, ports, p_key);
    if (auto it = impl_->results.find(key); it != impl_->results.end()) {
        ++hits_;
        return it->second;
    }
    const auto cell = std::make_tuple(blocklength, z_key, ports);
    auto pit = impl_->pipelines.find(cell);
    if (pit == impl_->pipelines.end()) {
        if (impl_->pipelines.size() >= Impl::kPipelineCache) {
            impl_->pipelines.clear();
        }
        SystemConfig config = *base_;
        config.blocklength = blocklength;
        config.placement.altitude = altitude;
        config.fas.ports = ports;
        auto cit = impl_->correlations.find(ports);
        if (cit == impl_->correlations.end()) {
            cit = impl_->correlations.emplace(ports, make_correlation(config.fas, config.rank_tol)).first;
        }
        pit = impl_->pipelines.emplace(cell, std::make_unique<AnalyticPipeline>(config, cit->second)).first;
    }
    ++evaluations_;
    const double value = pit->second->overall(p2);
    impl_->results.emplace(key, value);
    return value;
}

BlerEvaluator EeModel::evaluator(int blocklength, double altitude, int ports)
{
    return [this, blocklength, altitude, ports](double p2) { return bler(blocklength, altitude, ports, p2); };
}

// ---- nested search ---------------------------------------------------------

PortsOutcome optimal_ports(int blocklength, double altitude, const SearchSpace& space, EeModel& model)
{
    const EeParams& ee = model.base().ee;
    const int payload = model.base().payload_bits;
    PortsOutcome out;
    for (int n = space.n_min; n <= space.n_max; ++n) {
        PortPoint point;
        point.ports = n;
        point.causal = causality_ok(n, blocklength, ee);
        if (point.causal) {
            const std::uint64_t seed = (static_cast<std::uint64_t>(blocklength) << 40)
                                       ^ (static_cast<std::uint64_t>(std::llround(altitude * 1000.0)) << 8)
                                       ^ static_cast<std::uint64_t>(n);
            const BisectionResult r =
                min_power_bisection(space, model.evaluator(blocklength, altitude, n), seed);
            if (r.feasible) {
                point.p2 = r.p_star;
                point.bler = model.bler(blocklength, altitude, n, r.p_star);
                if (point.bler > space.eps_th) {
                    throw Error("bisection returned a power that misses the BLER target");
                }
                point.feasible = true;
                point.ee = energy_efficiency(point.bler, point.p2, n, blocklength, payload, ee);
            } else {
                point.bler = r.bler;
            }
        }
        if (point.feasible && point.ee > out.ee) {
            out.feasible = true;
            out.n_star = n;
            out.p2_star = point.p2;
            out.bler = point.bler;
            out.ee = point.ee;
        }
        out.profile.push_back(point);
    }
    return out;
}

AltitudeOutcome optimal_altitude(int blocklength, const SearchSpace& space, EeModel& model)
{
    AltitudeOutcome out;
    for (double z : altitude_grid(space)) {
        PortsOutcome ports = optimal_ports(blocklength, z, space, model);
        if (ports.feasible && ports.ee > out.ports.ee) {
            out.feasible = true;
            out.z_star = z;
            out.ports = ports;
        }
        out.profile.emplace_back(z, std::move(ports));
    }
    return out;
}

EeOutcome joint_optimize(const SearchSpace& space, EeModel& model)
{
    EeOutcome out;
    bool any_causal = false;
    for (int l : blocklength_grid(space)) {
        AltitudeOutcome alt = optimal_altitude(l, space, model);
        for (const auto& [z, ports] : alt.profile) {
            for (const PortPoint& p : ports.profile) {
                any_causal = any_causal || p.causal;
            }
            out.surface.push_back({l, z, ports.feasible, ports.n_star, ports.p2_star, ports.ee});
        }
        if (alt.feasible && alt.ports.ee > out.ee_max) {
            out.feasible = true;
            out.l_star = l;
            out.z_star = alt.z_star;
            out.n_star = alt.ports.n_star;
            out.p2_star = alt.ports.p2_star;
            out.bler = alt.ports.bler;
            out.ee_max = alt.ports.ee;
        }
    }
    if (!out.feasible) {
        out.binding = any_causal ? "reliability: BLER(P_max) > eps_th for every causal (L, Z_U, N)"
                                 : "causality: N tau_p >= L / W_band for every (L, N)";
    }
    return out;
}

}  // namespace fasuav
