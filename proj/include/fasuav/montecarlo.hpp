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

// Seeded Monte Carlo estimates of the hop and end-to-end BLERs. Trials are
// split into fixed-size chunks, each with its own generator derived from the
// seed, so results do not depend on the number of worker threads.

#include "fasuav/fas_correlation.hpp"
#include "fasuav/finite_blocklength.hpp"

#include <cstdint>
#include <random>

namespace fasuav {

struct SystemConfig;

enum class McMode {
    analytical_model,  ///< max_n lambda_n |g_n|^2 over independent branches
    physical_ports,    ///< h = U Lambda^{1/2} g per port, best port selected
};

enum class McHeadings { fixed, uniform };

/// Per-trial error law. exact_q is the normal approximation itself;
/// piecewise uses the linear surrogate the closed forms are built on.
enum class McErrorModel { exact_q, piecewise };

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    McMode mode = McMode::analytical_model;
    McHeadings headings = McHeadings::uniform;
    double theta = 0.0;  ///< used when headings == fixed
    McErrorModel error_model = McErrorModel::exact_q;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials_used = 0;
};

inline constexpr std::uint64_t kMcChunk = 1u << 16;

using McRng = std::mt19937_64;

/// Uniform on (0, 1), never exactly 0 or 1.
double draw_uniform(McRng& rng);

/// Gamma(m, 1/m) power (unit mean) as a sum of m exponentials.
double draw_nakagami_power(int m, McRng& rng);

/// Independent standard complex Gaussian components (variance 1/2 each).
void draw_complex_gaussian(McRng& rng, double& re, double& im);

/// FAS-hop BLER at a given average SNR (gamma2_bar already includes the
/// eigenvalue sum).
McEstimate mc_hop2_bler_at(double gamma2_bar, int m, const CorrelationModel& corr,
                           const FblParams& fbl, const McConfig& mc);

/// FAS-hop BLER for the configured P2 at heading mc.theta (LoS shape and
/// budget in the urban scenario).
McEstimate mc_hop2_bler(const SystemConfig& config, const CorrelationModel& corr,
                        const FblParams& fbl, const McConfig& mc);

/// End-to-end decode-and-forward BLER averaged over headings and, in the urban
/// scenario, per-hop Bernoulli LoS states.
McEstimate mc_end_to_end(const SystemConfig& config, const CorrelationModel& corr,
                         const FblParams& fbl, const McConfig& mc);

}  // namespace fasuav
