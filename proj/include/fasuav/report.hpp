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

// Batch drivers behind the command-line tool: parameter sweeps to CSV, the
// analytic-vs-simulation validation table, the joint EE optimization report
// and a dump of derived quantities.

#include "fasuav/config.hpp"
#include "fasuav/ee_optimizer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fasuav {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kCsvSchema = 1;

/// Sweep variables: P_2 (dBm), N, W (wavelengths), L, Z_U (m), m (hop-2
/// shape; urban: the LoS shape). Estimators: closed, asymptotic, mc, floor, ee.
struct SweepSpec {
    std::string variable;
    std::vector<double> grid;
    std::vector<std::string> estimators;
};

/// Throws Error on an unknown variable or estimator or a grid value the
/// configuration rejects.
std::string run_sweep(const SystemConfig& config, const SweepSpec& sweep);

struct ValidationRow {
    double p2_dbm = 0.0;
    double closed = 0.0;
    double mc = 0.0;
    double std_error = 0.0;
    double z = 0.0;         ///< |closed - mc| / (3 std_error)
    bool checked = false;   ///< BLER >= 1e-4
    bool pass = true;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool pass = true;
    std::string text;
};

/// Nine P2 points spanning 30 dB, centred on the configured P2.
std::vector<double> default_validation_grid(const SystemConfig& config);

ValidationReport run_validate(const SystemConfig& config, std::uint64_t trials,
                              const std::vector<double>& p2_grid_dbm);
/// As above, with the analytic side evaluated on a caller-supplied model.
ValidationReport run_validate(const SystemConfig& config, const CorrelationModel& analytic_corr,
                              std::uint64_t trials, const std::vector<double>& p2_grid_dbm);

struct OptimizeReport {
    EeOutcome outcome;
    std::string text;
    std::string surface_csv;
};

OptimizeReport run_optimize(const SystemConfig& config);

/// FblParams, eigenvalues, N_eff and link budgets at theta.
std::string inspect(const SystemConfig& config, double theta);

/// `#`-prefixed metadata block shared by every CSV.
std::string csv_metadata(const SystemConfig& config, const std::string& kind);

}  // namespace fasuav
