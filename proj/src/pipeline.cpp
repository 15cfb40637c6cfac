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

#include "fasuav/pipeline.hpp"

#include "fasuav/geometry.hpp"
#include "fasuav/special.hpp"

#include <algorithm>

namespace fasuav {

namespace {

double hop1_average(const SystemConfig& config, const CorrelationModel& corr, const FblParams& fbl,
                    double theta)
{
    auto hop = [&](LinkType type) {
        const LinkBudget b = link_budget(config, corr, theta, type);
        const int m = config.hop1_shape(type);
        return hop1_bler(fbl, {m, m / b.gamma1_bar});
    };
    if (config.scenario == Scenario::rural) {
        return hop(LinkType::los);
    }
    const LinkBudget b = link_budget(config, corr, theta, LinkType::los);
    return urban_hop_mixture(hop(LinkType::los), hop(LinkType::nlos), b.p_los_1);
}

}  // namespace

HeadingBler heading_bler(const SystemConfig& config, const CorrelationModel& corr,
                         const FblParams& fbl, double theta)
{
    HeadingBler out;
    out.hop1 = hop1_average(config, corr, fbl, theta);
    auto hop = [&](LinkType type) {
        const LinkBudget b = link_budget(config, corr, theta, type);
        const int m = config.hop2_shape(type);
        return hop2_bler(fbl, m, m * corr.lambda_sum / b.gamma2_bar, corr.branches());
    };
    if (config.scenario == Scenario::rural) {
        out.hop2 = hop(LinkType::los);
    } else {
        const LinkBudget b = link_budget(config, corr, theta, LinkType::los);
        out.hop2 = urban_hop_mixture(hop(LinkType::los), hop(LinkType::nlos), b.p_los_2);
    }
    out.total = end_to_end_bler(out.hop1, out.hop2);
    return out;
}

double average_bler(const SystemConfig& config, const CorrelationModel& corr, const FblParams& fbl)
{
    return trajectory_average(
        [&](double theta) { return heading_bler(config, corr, fbl, theta).total; },
        config.quadrature_order, config.quadrature_rule);
}

double error_floor(const SystemConfig& config, const CorrelationModel& corr, const FblParams& fbl)
{
    return trajectory_average([&](double theta) { return hop1_average(config, corr, fbl, theta); },
                              config.quadrature_order, config.quadrature_rule);
}

AnalyticPipeline::AnalyticPipeline(const SystemConfig& config, const CorrelationModel& corr)
    : scenario_(config.scenario),
      noise_(config.radio.noise_power),
      shape2_{config.hop2_shape(LinkType::los), config.hop2_shape(LinkType::nlos)},
      fbl_(derive_fbl(config.payload_bits, config.blocklength)),
      quad_(make_trajectory_quadrature(config.quadrature_order, config.quadrature_rule)),
      lambdas_(corr.branches().begin(), corr.branches().end())
{
    const int types = scenario_ == Scenario::rural ? 1 : 2;
    if (static_cast<int>(lambdas_.size()) <= kSubsetCap) {
        unit_[0] = subset_expansion(shape2_[0], 1.0, lambdas_);
        if (types == 2) {
            unit_[1] = shape2_[1] == shape2_[0] ? unit_[0]
                                                : subset_expansion(shape2_[1], 1.0, lambdas_);
        }
    }
    nodes_.reserve(quad_.headings.size());
    for (double theta : quad_.headings) {
        Node node;
        node.hop1 = hop1_average(config, corr, fbl_, theta);
        node.beta2[0] = hop_beta(config, theta, Hop::second, LinkType::los);
        if (types == 2) {
            node.beta2[1] = hop_beta(config, theta, Hop::second, LinkType::nlos);
            node.p_los_2 = link_budget(config, corr, theta, LinkType::los).p_los_2;
        }
        nodes_.push_back(node);
    }
}

double AnalyticPipeline::hop2(const Node& node, double p2, bool asymptotic) const
{
    auto one = [&](int t) {
        const int m = shape2_[t];
        // m * sum(lambda) / gamma2_bar, with the eigenvalue sum cancelled
        const double vartheta2 = m * noise_ / (p2 * node.beta2[t]);
        if (asymptotic) {
            return std::min(1.0, hop2_bler_asymptotic(fbl_, m, vartheta2, lambdas_));
        }
        if (unit_[t]) {
            const double closed = hop2_bler_closed(fbl_, *unit_[t], vartheta2);
            if (closed >= kClosedFormFloor) {
                return closed;
            }
        }
        return hop2_bler_quadrature(fbl_, m, vartheta2, lambdas_);
    };
    if (scenario_ == Scenario::rural) {
        return one(0);
    }
    return urban_hop_mixture(one(0), one(1), node.p_los_2);
}

HeadingBler AnalyticPipeline::at_node(std::size_t k, double p2) const
{
    const Node& node = nodes_.at(k);
    HeadingBler out;
    out.hop1 = node.hop1;
    out.hop2 = hop2(node, p2, false);
    out.total = end_to_end_bler(out.hop1, out.hop2);
    return out;
}

double AnalyticPipeline::overall(double p2) const
{
    std::vector<double> terms(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        terms[k] = quad_.weights[k] * end_to_end_bler(nodes_[k].hop1, hop2(nodes_[k], p2, false));
    }
    return pairwise_sum(terms);
}

double AnalyticPipeline::overall_asymptotic(double p2) const
{
    std::vector<double> terms(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        terms[k] = quad_.weights[k] * end_to_end_bler(nodes_[k].hop1, hop2(nodes_[k], p2, true));
    }
    return pairwise_sum(terms);
}

double AnalyticPipeline::floor() const
{
    std::vector<double> terms(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        terms[k] = quad_.weights[k] * nodes_[k].hop1;
    }
    return pairwise_sum(terms);
}

}  // namespace fasuav
