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

// The analytic end-to-end BLER: link budgets at the quadrature headings, both
// hop averages, decode-and-forward combining and the heading average.

#include "fasuav/bler_analytic.hpp"
#include "fasuav/config.hpp"
#include "fasuav/fas_correlation.hpp"
#include "fasuav/finite_blocklength.hpp"

#include <optional>
#include <vector>

namespace fasuav {

struct HeadingBler {
    double hop1 = 0.0;
    double hop2 = 0.0;
    double total = 0.0;
};

/// Per-heading BLERs at theta with the configured powers (urban: LoS/NLoS
/// mixture on each hop).
HeadingBler heading_bler(const SystemConfig& config, const CorrelationModel& corr,
                         const FblParams& fbl, double theta);

/// Heading average of the end-to-end BLER with the configured quadrature.
double average_bler(const SystemConfig& config, const CorrelationModel& corr, const FblParams& fbl);

/// P2 -> infinity limit: the heading-averaged first-hop BLER. Does not read
/// any FAS or P2 field.
double error_floor(const SystemConfig& config, const CorrelationModel& corr, const FblParams& fbl);

/// Everything that does not depend on P2 precomputed once, so that the
/// average BLER can be evaluated cheaply for many powers.
class AnalyticPipeline {
public:
    AnalyticPipeline(const SystemConfig& config, const CorrelationModel& corr);

    const FblParams& fbl() const { return fbl_; }
    const TrajectoryQuadrature& quadrature() const { return quad_; }

    /// Heading-averaged end-to-end BLER at UAV power p2 (W).
    double overall(double p2) const;
    /// Same with the high-SNR form of the FAS hop (each hop clamped to 1).
    double overall_asymptotic(double p2) const;
    double floor() const;

    HeadingBler at_node(std::size_t k, double p2) const;

private:
    struct Node {
        double hop1 = 0.0;
        double p_los_2 = 1.0;
        double beta2[2] = {0.0, 0.0};  ///< LoS, NLoS
    };
    double hop2(const Node& node, double p2, bool asymptotic) const;

    Scenario scenario_;
    double noise_;
    int shape2_[2];
    FblParams fbl_;
    TrajectoryQuadrature quad_;
    std::vector<double> lambdas_;
    std::optional<SubsetExpansion> unit_[2];  ///< at vartheta2 = 1
    std::vector<Node> nodes_;
};

}  // namespace fasuav
