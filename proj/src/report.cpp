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

#include "fasuav/report.hpp"

#include "fasuav/error.hpp"
#include "fasuav/fas_correlation.hpp"
#include "fasuav/geometry.hpp"
#include "fasuav/montecarlo.hpp"
#include "fasuav/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <set>
#include <sstream>
#include <thread>

namespace fasuav {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

int as_int(const std::string& variable, double v)
{
    if (v != std::floor(v)) {
        throw Error("sweep variable " + variable + " needs integer grid values");
    }
    return static_cast<int>(v);
}

SystemConfig apply(SystemConfig config, const std::string& variable, double v)
{
    if (variable == "P_2") {
        config.radio.p2 = dbm_to_watts(v);
    } else if (variable == "N") {
        config.fas.ports = as_int(variable, v);
    } else if (variable == "W") {
        config.fas.aperture = v;
    } else if (variable == "L") {
        config.blocklength = as_int(variable, v);
    } else if (variable == "Z_U") {
        config.placement.altitude = v;
    } else if (variable == "m") {
        (config.scenario == Scenario::rural ? config.m2 : config.urban.m_los) = as_int(variable, v);
    } else {
        throw Error("unknown sweep variable '" + variable + "' (P_2, N, W, L, Z_U, m)");
    }
    validate(config);
    return config;
}

const char* column_name(const std::string& variable)
{
    if (variable == "P_2") {
        return "P_2_dBm";
    }
    if (variable == "W") {
        return "W_wavelengths";
    }
    if (variable == "L") {
        return "L_uses";
    }
    if (variable == "Z_U") {
        return "Z_U_m";
    }
    return variable == "N" ? "N_ports" : "m";
}

// Runs f(i) for i in [0, count) on up to hardware_concurrency workers and
// returns the results in index order.
template <typename F>
auto ordered_map(std::size_t count, F f) -> std::vector<decltype(f(std::size_t{}))>
{
    using R = decltype(f(std::size_t{}));
    std::vector<R> out(count);
    const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = f(i);
        }
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                out[i] = f(i);
            }
        }));
    }
    for (auto& j : jobs) {
        j.get();
    }
    return out;
}

}  // namespace

std::string csv_metadata(const SystemConfig& config, const std::string& kind)
{
    std::ostringstream out;
    out << "# fasuav " << kind << '\n';
    out << "# version: " << kVersion << '\n';
    out << "# csv_schema: " << kCsvSchema << '\n';
    out << "# scenario: " << to_string(config.scenario) << '\n';
    out << "# config_hash: " << config_hash(config) << '\n';
    out << "# seed: " << config.mc.seed << '\n';
    return out.str();
}

std::string run_sweep(const SystemConfig& config, const SweepSpec& sweep)
{
    static const std::set<std::string> known{"closed", "asymptotic", "mc", "floor", "ee"};
    for (const std::string& e : sweep.estimators) {
        if (!known.contains(e)) {
            throw Error("unknown estimator '" + e + "' (closed, asymptotic, mc, floor, ee)");
        }
    }
    if (sweep.estimators.empty()) {
        throw Error("no estimators requested");
    }
    auto wants = [&](const char* e) {
        return std::find(sweep.estimators.begin(), sweep.estimators.end(), e) != sweep.estimators.end();
    };
    std::vector<SystemConfig> configs;
    for (double v : sweep.grid) {
        configs.push_back(apply(config, sweep.variable, v));
    }

    std::ostringstream out;
    out << csv_metadata(config, "sweep");
    out << column_name(sweep.variable);
    for (const char* e : {"closed", "asymptotic", "mc"}) {
        if (wants(e)) {
            out << ',' << e;
        }
    }
    if (wants("mc")) {
        out << ",mc_std_error";
    }
    if (wants("floor")) {
        out << ",floor";
    }
    if (wants("ee")) {
        out << ",ee_bits_per_J,causality_ok";
    }
    out << '\n';

    const auto rows = ordered_map(configs.size(), [&](std::size_t i) {
        const SystemConfig& c = configs[i];
        const CorrelationModel corr = make_correlation(c.fas, c.rank_tol);
        const AnalyticPipeline pipeline(c, corr);
        std::ostringstream row;
        row << num(sweep.grid[i]);
        const double closed = pipeline.overall(c.radio.p2);
        if (wants("closed")) {
            row << ',' << num(closed);
        }
        if (wants("asymptotic")) {
            row << ',' << num(pipeline.overall_asymptotic(c.radio.p2));
        }
        if (wants("mc")) {
            const McEstimate est = mc_end_to_end(c, corr, pipeline.fbl(), c.mc);
            row << ',' << num(est.mean) << ',' << num(est.std_error);
        }
        if (wants("floor")) {
            row << ',' << num(pipeline.floor());
        }
        if (wants("ee")) {
            const bool causal = causality_ok(c.fas.ports, c.blocklength, c.ee);
            const double ee = causal ? energy_efficiency(closed, c.radio.p2, c.fas.ports, c.blocklength,
                                                         c.payload_bits, c.ee)
                                     : 0.0;
            row << ',' << num(ee) << ',' << (causal ? "true" : "false");
        }
        row << '\n';
        return row.str();
    });
    for (const std::string& r : rows) {
        out << r;
    }
    return out.str();
}

std::vector<double> default_validation_grid(const SystemConfig& config)
{
    const double centre = watts_to_dbm(config.radio.p2);
    std::vector<double> grid;
    for (int i = 0; i < 9; ++i) {
        grid.push_back(centre - 15.0 + 3.75 * i);
    }
    return grid;
}

ValidationReport run_validate(const SystemConfig& config, std::uint64_t trials,
                              const std::vector<double>& p2_grid_dbm)
{
    return run_validate(config, make_correlation(config.fas, config.rank_tol), trials, p2_grid_dbm);
}

ValidationReport run_validate(const SystemConfig& config, const CorrelationModel& analytic_corr,
                              std::uint64_t trials, const std::vector<double>& p2_grid_dbm)
{
    ValidationReport report;
    const CorrelationModel corr = make_correlation(config.fas, config.rank_tol);
    const AnalyticPipeline pipeline(config, analytic_corr);
    McConfig mc = config.mc;
    mc.trials = trials;
    mc.headings = McHeadings::uniform;

    std::ostringstream text;
    text << "P_2_dBm,closed,mc,mc_std_error,z_over_3sigma,checked,result\n";
    for (double p2_dbm : p2_grid_dbm) {
        SystemConfig c = config;
        c.radio.p2 = dbm_to_watts(p2_dbm);
        ValidationRow row;
        row.p2_dbm = p2_dbm;
        row.closed = pipeline.overall(c.radio.p2);
        const McEstimate est = mc_end_to_end(c, corr, pipeline.fbl(), mc);
        row.mc = est.mean;
        row.std_error = est.std_error;
        row.z = est.std_error > 0.0 ? std::fabs(row.closed - row.mc) / (3.0 * est.std_error)
                                    : (row.closed == row.mc ? 0.0 : INFINITY);
        row.checked = row.closed >= 1e-4;
        row.pass = !row.checked || row.z <= 1.0;
        report.pass = report.pass && row.pass;
        text << num(p2_dbm) << ',' << num(row.closed) << ',' << num(row.mc) << ','
             << num(row.std_error) << ',' << num(row.z) << ',' << (row.checked ? "yes" : "no")
             << ',' << (row.checked ? (row.pass ? "PASS" : "FAIL") : "skip") << '\n';
        report.rows.push_back(row);
    }
    text << (report.pass ? "PASS" : "FAIL") << '\n';
    report.text = text.str();
    return report;
}

OptimizeReport run_optimize(const SystemConfig& config)
{
    OptimizeReport report;
    EeModel model(config);
    report.outcome = joint_optimize(config.search, model);
    const EeOutcome& o = report.outcome;

    std::ostringstream text;
    if (o.feasible) {
        text << "feasible: yes\n"
             << "L* = " << o.l_star << '\n'
             << "Z_U* = " << num(o.z_star) << " m\n"
             << "N* = " << o.n_star << '\n'
             << "P_2* = " << num(watts_to_dbm(o.p2_star)) << " dBm\n"
             << "BLER(P_2*) = " << num(o.bler) << '\n'
             << "EE_max = " << num(o.ee_max) << " bits/J\n";
    } else {
        text << "feasible: no\n"
             << "binding constraint: " << o.binding << '\n';
    }
    text << "analytic evaluations: " << model.evaluations() << " (cache hits " << model.cache_hits() << ")\n";
    report.text = text.str();

    std::ostringstream csv;
    csv << csv_metadata(config, "optimize");
    csv << "L_uses,Z_U_m,feasible,N_star,P_2_star_dBm,EE_bits_per_J\n";
    for (const SurfacePoint& p : o.surface) {
        csv << p.blocklength << ',' << num(p.altitude) << ',' << (p.feasible ? "true" : "false") << ','
            << p.n_star << ',' << (p.feasible ? num(watts_to_dbm(p.p2_star)) : "") << ','
            << num(p.ee) << '\n';
    }
    report.surface_csv = csv.str();
    return report;
}

std::string inspect(const SystemConfig& config, double theta)
{
    const FblParams fbl = derive_fbl(config.payload_bits, config.blocklength);
    const CorrelationModel corr = make_correlation(config.fas, config.rank_tol);
    std::ostringstream out;
    out << "scenario: " << to_string(config.scenario) << '\n';
    out << "fbl: B=" << fbl.payload_bits << " L=" << fbl.blocklength << " R=" << num(fbl.rate)
        << " tau=" << num(fbl.tau) << " chi=" << num(fbl.chi) << " rho_L=" << num(fbl.rho_l)
        << " rho_H=" << num(fbl.rho_h) << (fbl.in_validity_regime() ? "" : " (L below 100)") << '\n';
    out << "eigenvalues:";
    for (double l : corr.eigenvalues) {
        out << ' ' << num(l);
    }
    out << "\nN_eff: " << corr.n_eff << "  lambda_sum: " << num(corr.lambda_sum) << '\n';
    const SlantRanges d = slant_ranges(config.placement, theta);
    out << "theta: " << num(theta) << " rad  d1: " << num(d.d1) << " m  d2: " << num(d.d2) << " m\n";
    const LinkBudget los = link_budget(config, corr, theta, LinkType::los);
    if (config.scenario == Scenario::rural) {
        out << "gamma1_bar: " << num(10.0 * std::log10(los.gamma1_bar)) << " dB  gamma2_bar: "
            << num(10.0 * std::log10(los.gamma2_bar)) << " dB\n";
    } else {
        const LinkBudget nlos = link_budget(config, corr, theta, LinkType::nlos);
        out << "LoS   gamma1_bar: " << num(10.0 * std::log10(los.gamma1_bar))
            << " dB  gamma2_bar: " << num(10.0 * std::log10(los.gamma2_bar)) << " dB\n";
        out << "NLoS  gamma1_bar: " << num(10.0 * std::log10(nlos.gamma1_bar))
            << " dB  gamma2_bar: " << num(10.0 * std::log10(nlos.gamma2_bar)) << " dB\n";
        out << "P_LoS hop1: " << num(los.p_los_1) << "  hop2: " << num(los.p_los_2) << '\n';
    }
    const HeadingBler h = heading_bler(config, corr, fbl, theta);
    out << "BLER at theta: hop1 " << num(h.hop1) << "  hop2 " << num(h.hop2) << "  end-to-end "
        << num(h.total) << '\n';
    out << "average BLER: " << num(average_bler(config, corr, fbl))
        << "  floor: " << num(error_floor(config, corr, fbl)) << '\n';
    return out.str();
}

}  // namespace fasuav
