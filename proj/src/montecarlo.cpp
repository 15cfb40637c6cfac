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

#include "fasuav/montecarlo.hpp"

#include "fasuav/config.hpp"
#include "fasuav/geometry.hpp"
#include "fasuav/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace fasuav {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t count = 0;
};

template <typename Trial>
McEstimate run_trials(const McConfig& mc, const Trial& trial)
{
    const std::uint64_t chunks = (mc.trials + kMcChunk - 1) / kMcChunk;
    std::vector<ChunkSums> sums(chunks);
    auto work = [&](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t c = first; c < chunks; c += stride) {
            McRng rng(splitmix64(mc.seed ^ splitmix64(c)));
            const std::uint64_t begin = c * kMcChunk;
            const std::uint64_t end = std::min(mc.trials, begin + kMcChunk);
            ChunkSums s;
            for (std::uint64_t t = begin; t < end; ++t) {
                const double x = trial(rng);
                s.sum += x;
                s.sum_sq += x * x;
            }
            s.count = end - begin;
            sums[c] = s;
        }
    };
    unsigned threads = mc.threads != 0 ? mc.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t, threads);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    std::vector<double> s1(chunks);
    std::vector<double> s2(chunks);
    for (std::uint64_t c = 0; c < chunks; ++c) {
        s1[c] = sums[c].sum;
        s2[c] = sums[c].sum_sq;
    }
    const double n = static_cast<double>(mc.trials);
    const double mean = pairwise_sum(s1) / n;
    double var = 0.0;
    if (mc.trials > 1) {
        var = std::max(0.0, (pairwise_sum(s2) - n * mean * mean) / (n - 1.0));
    }
    return {mean, std::sqrt(var / n), mc.trials};
}

double trial_error(double gamma, const FblParams& fbl, McErrorModel model)
{
    return model == McErrorModel::exact_q ? instantaneous_bler(gamma, fbl) : piecewise_q(gamma, fbl);
}

// Selected-branch power divided by sum(lambda), so that gamma = gamma2_bar * value.
double selected_power(int m, const CorrelationModel& corr, McMode mode, McRng& rng)
{
    if (mode == McMode::analytical_model) {
        double best = 0.0;
        for (double lambda : corr.branches()) {
            best = std::max(best, lambda * draw_nakagami_power(m, rng));
        }
        return best / corr.lambda_sum;
    }
    const std::size_t n = corr.eigenvalues.size();
    thread_local std::vector<double> power;
    thread_local std::vector<double> g_re;
    thread_local std::vector<double> g_im;
    power.assign(n, 0.0);
    g_re.resize(n);
    g_im.resize(n);
    for (int i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            draw_complex_gaussian(rng, g_re[k], g_im[k]);
            const double scale = std::sqrt(corr.eigenvalues[k]);
            g_re[k] *= scale;
            g_im[k] *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            double re = 0.0;
            double im = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                re += corr.eigenvectors(r, k) * g_re[k];
                im += corr.eigenvectors(r, k) * g_im[k];
            }
            power[r] += re * re + im * im;
        }
    }
    return *std::max_element(power.begin(), power.end()) / (m * corr.lambda_sum);
}

}  // namespace

double draw_uniform(McRng& rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double draw_nakagami_power(int m, McRng& rng)
{
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        sum -= std::log(draw_uniform(rng));
    }
    return sum / m;
}

void draw_complex_gaussian(McRng& rng, double& re, double& im)
{
    const double radius = std::sqrt(-std::log(draw_uniform(rng)));
    const double angle = 2.0 * std::numbers::pi * draw_uniform(rng);
    re = radius * std::cos(angle);
    im = radius * std::sin(angle);
}

McEstimate mc_hop2_bler_at(double gamma2_bar, int m, const CorrelationModel& corr,
                           const FblParams& fbl, const McConfig& mc)
{
    return run_trials(mc, [&](McRng& rng) {
        const double gamma = gamma2_bar * selected_power(m, corr, mc.mode, rng);
        return trial_error(gamma, fbl, mc.error_model);
    });
}

McEstimate mc_hop2_bler(const SystemConfig& config, const CorrelationModel& corr,
                        const FblParams& fbl, const McConfig& mc)
{
    const LinkBudget b = link_budget(config, corr, mc.theta, LinkType::los);
    return mc_hop2_bler_at(b.gamma2_bar, config.hop2_shape(LinkType::los), corr, fbl, mc);
}

McEstimate mc_end_to_end(const SystemConfig& config, const CorrelationModel& corr,
                         const FblParams& fbl, const McConfig& mc)
{
    const bool urban = config.scenario == Scenario::urban;
    return run_trials(mc, [&](McRng& rng) {
        const double theta = mc.headings == McHeadings::uniform
                                 ? 2.0 * std::numbers::pi * draw_uniform(rng)
                                 : mc.theta;
        const LinkBudget los = link_budget(config, corr, theta, LinkType::los);
        LinkType type1 = LinkType::los;
        LinkType type2 = LinkType::los;
        if (urban) {
            type1 = draw_uniform(rng) < los.p_los_1 ? LinkType::los : LinkType::nlos;
            type2 = draw_uniform(rng) < los.p_los_2 ? LinkType::los : LinkType::nlos;
        }
        const LinkBudget nlos = (type1 == LinkType::nlos || type2 == LinkType::nlos)
                                    ? link_budget(config, corr, theta, LinkType::nlos)
                                    : los;
        const double g1_bar = type1 == LinkType::los ? los.gamma1_bar : nlos.gamma1_bar;
        const double g2_bar = type2 == LinkType::los ? los.gamma2_bar : nlos.gamma2_bar;

        const double gamma1 = g1_bar * draw_nakagami_power(config.hop1_shape(type1), rng);
        const double e1 = trial_error(gamma1, fbl, mc.error_model);
        const double gamma2 = g2_bar * selected_power(config.hop2_shape(type2), corr, mc.mode, rng);
        const double e2 = trial_error(gamma2, fbl, mc.error_model);
        return e1 + (1.0 - e1) * e2;
    });
}

}  // namespace fasuav
