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

// Command-line front end: sweep, validate, optimize, inspect.
//
// Exit codes: 0 success, 2 validation failure, 3 infeasible optimization,
// 4 configuration or usage error.

#include "fasuav/config.hpp"
#include "fasuav/error.hpp"
#include "fasuav/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitConfig = 4;

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) {
            throw fasuav::ConfigError("--grid", "bad value '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> split(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

void write_out(const std::string& path, const std::string& body)
{
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw fasuav::Error("cannot write " + path);
    }
    out << body;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"fasuav: finite-blocklength BLER and energy-efficiency toolkit for FAS UAV relays"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out_path;
    bool literal_gcq = false;
    app.add_option("--config", config_path, "Flat key = value configuration file")->required();
    app.add_option("--seed", seed, "Monte Carlo seed (overrides mc.seed)");
    app.add_option("--trials", trials, "Monte Carlo trials (overrides mc.trials)");
    app.add_option("--out", out_path, "Write CSV output here instead of stdout");
    app.add_flag("--paper-literal-gcq", literal_gcq,
                 "Average headings with the literal Chebyshev weights (diagnostic)");

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and emit CSV");
    std::string sweep_var;
    std::string grid_text;
    std::string estimators_text = "closed";
    sweep->add_option("--sweep-var", sweep_var, "P_2, N, W, L, Z_U or m")->required();
    sweep->add_option("--grid", grid_text, "Comma-separated values")->required();
    sweep->add_option("--estimators", estimators_text, "closed,asymptotic,mc,floor,ee");

    auto* validate = app.add_subcommand("validate", "Analytic vs Monte Carlo over a 30 dB P_2 grid");
    std::string validate_grid;
    validate->add_option("--grid", validate_grid, "P_2 values in dBm (default: 9 points, 30 dB)");

    auto* optimize = app.add_subcommand("optimize", "Joint search over L, Z_U, N for maximum EE");

    auto* inspect = app.add_subcommand("inspect", "Print derived quantities");
    double theta = 0.0;
    inspect->add_option("--theta", theta, "Heading in radians");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    fasuav::SystemConfig config;
    try {
        config = fasuav::load_config(config_path);
        if (seed) {
            config.mc.seed = *seed;
        }
        if (trials) {
            config.mc.trials = *trials;
        }
        if (literal_gcq) {
            config.quadrature_rule = fasuav::GcqRule::paper_literal;
        }
        fasuav::validate(config);
    } catch (const fasuav::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    auto warn_blocklength = [](double l) {
        if (l < fasuav::kMinAccurateBlocklength) {
            std::cerr << "warning: blocklength " << l << " is below " << fasuav::kMinAccurateBlocklength
                      << "; the normal approximation is inaccurate there\n";
        }
    };
    try {
        warn_blocklength(config.blocklength);
        if (*sweep) {
            fasuav::SweepSpec spec{sweep_var, parse_grid(grid_text), split(estimators_text)};
            if (sweep_var == "L") {
                for (double l : spec.grid) {
                    warn_blocklength(l);
                }
            }
            write_out(out_path, fasuav::run_sweep(config, spec));
            return 0;
        }
        if (*validate) {
            const auto grid = validate_grid.empty() ? fasuav::default_validation_grid(config)
                                                    : parse_grid(validate_grid);
            const auto report = fasuav::run_validate(config, config.mc.trials, grid);
            write_out(out_path, report.text);
            return report.pass ? 0 : kExitValidation;
        }
        if (*optimize) {
            const auto report = fasuav::run_optimize(config);
            std::cout << report.text;
            if (!out_path.empty()) {
                write_out(out_path, report.surface_csv);
            }
            return report.outcome.feasible ? 0 : kExitInfeasible;
        }
        if (*inspect) {
            std::cout << fasuav::inspect(config, theta);
            return 0;
        }
    } catch (const fasuav::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fasuav::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
