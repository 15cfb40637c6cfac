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

#include "fasuav/bler_analytic.hpp"

#include "fasuav/error.hpp"
#include "fasuav/special.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace fasuav {

namespace {

double clamp_probability(double value)
{
    // The piecewise surrogate bounds every average analytically; anything
    // beyond round-off here is a bug.
    assert(value > -1e-9 && value < 1.0 + 1e-9);
    return std::clamp(value, 0.0, 1.0);
}

// Integral of P(m, vartheta x) from 0 to y.
double integrated_gamma_cdf(double y, int m, double vartheta)
{
    if (y <= 0.0) {
        return 0.0;
    }
    const double z = vartheta * y;
    return y * gamma_p(m, z) - (m / vartheta) * gamma_p(m + 1, z);
}

// Fills p[s] = P(s, z) and q[s] = Q(s, z) for s = 1..top by positive-term
// recurrences in both directions.
void incomplete_gamma_ladder(int top, double z, std::vector<double>& p, std::vector<double>& q)
{
    p.assign(static_cast<std::size_t>(top) + 1, 0.0);
    q.assign(static_cast<std::size_t>(top) + 1, 1.0);
    if (!(z > 0.0)) {
        return;
    }
    // t[k] = z^k e^{-z} / k!
    std::vector<double> t(static_cast<std::size_t>(top));
    t[0] = std::exp(-z);
    for (int k = 1; k < top; ++k) {
        t[k] = t[k - 1] * z / k;
    }
    if (t[0] == 0.0 && top > 1) {
        // e^{-z} underflowed; rebuild the terms in log space.
        for (int k = 0; k < top; ++k) {
            t[k] = std::exp(k * std::log(z) - z - std::lgamma(k + 1.0));
        }
    }
    double acc = 0.0;
    for (int s = 1; s <= top; ++s) {
        acc += t[s - 1];
        q[s] = acc;
    }
    p[top] = gamma_p(top, z);
    for (int s = top - 1; s >= 1; --s) {
        p[s] = p[s + 1] + t[s];
    }
}

std::vector<double> chebyshev_roots(int order)
{
    std::vector<double> x(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k) {
        x[k - 1] = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * order));
    }
    return x;
}

}  // namespace

// ---- distributions ---------------------------------------------------------

double gamma_cdf(double x, const GammaHopModel& model)
{
    return gamma_p(model.m, x * model.vartheta);
}

double fas_cdf(double x, int m, double vartheta2, std::span<const double> lambdas)
{
    double product = 1.0;
    for (double lambda : lambdas) {
        product *= gamma_p(m, x * vartheta2 / lambda);
    }
    return product;
}

// ---- hop BLERs -------------------------------------------------------------

double hop1_bler(const FblParams& fbl, const GammaHopModel& model)
{
    if (model.vartheta <= 0.0) {
        return 0.0;
    }
    const double lo = fbl.lower_limit();
    const double hi = fbl.rho_h;
    if (std::isinf(model.vartheta)) {
        return clamp_probability(fbl.chi * (hi - lo));
    }
    const double area = integrated_gamma_cdf(hi, model.m, model.vartheta)
                        - integrated_gamma_cdf(lo, model.m, model.vartheta);
    return clamp_probability(fbl.chi * area);
}

double hop1_bler_finite_sum(const FblParams& fbl, const GammaHopModel& model)
{
    const double lo = fbl.lower_limit();
    const double hi = fbl.rho_h;
    const double v = model.vartheta;
    // e^{-z} sum_{j<=k} z^j / j!
    auto truncated = [](double z, int k) {
        double term = 1.0;
        double sum = 1.0;
        for (int j = 1; j <= k; ++j) {
            term *= z / j;
            sum += term;
        }
        return std::exp(-z) * sum;
    };
    double inner = 0.0;
    for (int k = 0; k < model.m; ++k) {
        inner += truncated(lo * v, k) - truncated(hi * v, k);
    }
    return fbl.chi * ((hi - lo) - inner / v);
}

double SubsetTerm::coeff(int a) const
{
    if (a < 0 || a > degree()) {
        return 0.0;
    }
    const double c = unit_coeffs[static_cast<std::size_t>(a)];
    if (c == 0.0) {
        return 0.0;
    }
    return std::exp(std::log(c) + a * std::log(rate) - std::lgamma(a + 1.0));
}

SubsetExpansion subset_expansion(int m, double vartheta2, std::span<const double> lambdas)
{
    const int n = static_cast<int>(lambdas.size());
    if (n > kSubsetCap) {
        throw Error("subset expansion over " + std::to_string(n)
                    + " branches exceeds the cap; use quadrature path");
    }
    if (m < 1) {
        throw Error("Nakagami shape must be a positive integer");
    }
    SubsetExpansion out;
    out.m = m;
    out.vartheta = vartheta2;
    out.branches = n;
    const std::uint32_t count = n == 0 ? 0u : (1u << n);
    out.subsets.resize(count > 0 ? count - 1 : 0);

    std::vector<double> rates(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        rates[j] = vartheta2 / lambdas[j];
    }

    // Subset S = S' + {j}, j its lowest member. With u = b_S x the new
    // exponential-generating coefficients are
    //   h_a = sum_i C(a, i) h'_i (b_S' / b_S)^i (r_j / b_S)^{a - i},
    // (the branch factor contributes only powers below m), all factors <= 1.
    for (std::uint32_t mask = 1; mask < count; ++mask) {
        SubsetTerm& term = out.subsets[mask - 1];
        term.mask = mask;
        const int j = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        const double r = rates[j];

        if (rest == 0) {
            term.cardinality = 1;
            term.rate = r;
            term.unit_coeffs.assign(static_cast<std::size_t>(m), 1.0);
            continue;
        }
        const SubsetTerm& prev = out.subsets[rest - 1];
        term.cardinality = prev.cardinality + 1;
        term.rate = prev.rate + r;
        const double old_share = prev.rate / term.rate;
        const double new_share = r / term.rate;
        const int prev_deg = prev.degree();
        const int deg = prev_deg + m - 1;
        term.unit_coeffs.assign(static_cast<std::size_t>(deg) + 1, 0.0);

        std::vector<double> old_pow(static_cast<std::size_t>(prev_deg) + 1);
        old_pow[0] = 1.0;
        for (int i = 1; i <= prev_deg; ++i) {
            old_pow[i] = old_pow[i - 1] * old_share;
        }
        std::vector<double> new_pow(static_cast<std::size_t>(m));
        new_pow[0] = 1.0;
        for (int k = 1; k < m; ++k) {
            new_pow[k] = new_pow[k - 1] * new_share;
        }
        for (int a = 0; a <= deg; ++a) {
            double acc = 0.0;
            const int k_min = std::max(0, a - prev_deg);
            const int k_max = std::min(m - 1, a);
            for (int k = k_min; k <= k_max; ++k) {
                const int i = a - k;
                // C(a, k), built in log space to stay finite for large a
                const double binom = std::exp(std::lgamma(a + 1.0) - std::lgamma(k + 1.0)
                                              - std::lgamma(i + 1.0));
                acc += binom * prev.unit_coeffs[i] * old_pow[i] * new_pow[k];
            }
            term.unit_coeffs[a] = acc;
        }
    }
    return out;
}

double hop2_bler_closed(const FblParams& fbl, const SubsetExpansion& expansion, double rate_scale)
{
    const double lo = fbl.lower_limit();
    const double hi = fbl.rho_h;
    double total = hi - lo;

    std::vector<double> p_lo;
    std::vector<double> q_lo;
    std::vector<double> p_hi;
    std::vector<double> q_hi;
    for (const SubsetTerm& term : expansion.subsets) {
        const struct { int cardinality; double rate; } s{term.cardinality, term.rate * rate_scale};
        const auto& unit = term.unit_coeffs;
        if (std::isinf(s.rate)) {
            continue;  // A_S vanishes on (0, inf)
        }
        if (!(s.rate > 0.0)) {
            // vartheta = 0: A_S = 1 everywhere
            total += ((s.cardinality % 2 == 0) ? 1.0 : -1.0) * (hi - lo);
            continue;
        }
        const int degree = term.degree();
        const int top = degree + 1;
        const double z_lo = s.rate * lo;
        const double z_hi = s.rate * hi;
        incomplete_gamma_ladder(top, z_lo, p_lo, q_lo);
        incomplete_gamma_ladder(top, z_hi, p_hi, q_hi);
        // integral_lo^hi x^a e^{-b x} dx = a! / b^{a+1} [P(a+1, b hi) - P(a+1, b lo)]
        double acc = 0.0;
        for (int a = 0; a <= degree; ++a) {
            const int shape = a + 1;
            const double diff = (z_lo >= shape + 1.0) ? q_lo[shape] - q_hi[shape]
                                                      : p_hi[shape] - p_lo[shape];
            acc += unit[a] * diff;
        }
        acc /= s.rate;
        total += ((s.cardinality % 2 == 0) ? 1.0 : -1.0) * acc;
    }
    return clamp_probability(fbl.chi * total);
}

double hop2_bler_quadrature(const FblParams& fbl, int m, double vartheta2,
                            std::span<const double> lambdas)
{
    constexpr int kPanels = 8;
    const GaussLegendre& gl = gauss_legendre(64);
    const double lo = fbl.lower_limit();
    const double hi = fbl.rho_h;
    const double width = (hi - lo) / kPanels;
    std::vector<double> panel_sums(kPanels);
    for (int p = 0; p < kPanels; ++p) {
        const double a = lo + p * width;
        const double mid = a + 0.5 * width;
        double acc = 0.0;
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            acc += gl.weights[k] * fas_cdf(mid + 0.5 * width * gl.nodes[k], m, vartheta2, lambdas);
        }
        panel_sums[p] = 0.5 * width * acc;
    }
    return clamp_probability(fbl.chi * pairwise_sum(panel_sums));
}

double hop2_bler(const FblParams& fbl, int m, double vartheta2, std::span<const double> lambdas)
{
    if (static_cast<int>(lambdas.size()) > kSubsetCap) {
        return hop2_bler_quadrature(fbl, m, vartheta2, lambdas);
    }
    const double closed = hop2_bler_closed(fbl, subset_expansion(m, vartheta2, lambdas));
    return closed < kClosedFormFloor ? hop2_bler_quadrature(fbl, m, vartheta2, lambdas) : closed;
}

double hop2_bler_asymptotic(const FblParams& fbl, int m, double vartheta2,
                            std::span<const double> lambdas)
{
    if (vartheta2 <= 0.0) {
        return 0.0;
    }
    const int n = static_cast<int>(lambdas.size());
    const int order = m * n;
    const double lo = fbl.lower_limit();
    const double window = (std::pow(fbl.rho_h, order + 1) - std::pow(lo, order + 1)) / (order + 1);
    double log_scale = n * (m * std::log(vartheta2) - std::lgamma(m + 1.0));
    for (double lambda : lambdas) {
        log_scale -= m * std::log(lambda);
    }
    return fbl.chi * window * std::exp(log_scale);
}

double helper_g(double y, int a, double b)
{
    const double scale = a >= 20 ? std::exp(std::lgamma(a + 1.0) - (a + 1.0) * std::log(b))
                                 : std::tgamma(a + 1.0) / std::pow(b, a + 1);
    return -scale * gamma_q(a + 1, b * y);
}

// ---- combining -------------------------------------------------------------

double urban_hop_mixture(double bler_los, double bler_nlos, double p_los)
{
    return bler_los * p_los + bler_nlos * (1.0 - p_los);
}

double end_to_end_bler(double e1, double e2)
{
    return e1 + e2 - e1 * e2;
}

// ---- heading average -------------------------------------------------------

TrajectoryQuadrature make_trajectory_quadrature(int order, GcqRule rule)
{
    if (order < 1) {
        throw Error("quadrature order must be at least 1");
    }
    TrajectoryQuadrature quad;
    quad.order = order;
    quad.rule = rule;
    quad.chebyshev_roots = chebyshev_roots(order);
    quad.headings.resize(quad.chebyshev_roots.size());
    quad.weights.resize(quad.chebyshev_roots.size());
    const double step = std::numbers::pi / order;

    for (int k = 0; k < order; ++k) {
        const double x = quad.chebyshev_roots[k];
        quad.headings[k] = std::numbers::pi * x + std::numbers::pi;
        const double s = std::sqrt(1.0 - x * x);
        switch (rule) {
        case GcqRule::fejer: {
            // Fejer's first rule: exact for polynomials of degree < M in x.
            const double t = (2.0 * k + 1.0) * std::numbers::pi / (2.0 * order);
            double sum = 0.0;
            for (int j = 1; j <= order / 2; ++j) {
                sum += std::cos(2.0 * j * t) / (4.0 * j * j - 1.0);
            }
            // (1/2) of the [-1, 1] weight, since dtheta / (2 pi) = dx / 2
            quad.weights[k] = 0.5 * (2.0 / order) * (1.0 - 2.0 * sum);
            break;
        }
        case GcqRule::sqrt_deweighted:
            quad.weights[k] = 0.5 * step * s;
            break;
        case GcqRule::paper_literal:
            quad.weights[k] = step * step / s;
            break;
        }
    }
    return quad;
}

double trajectory_average(const std::function<double(double)>& f, const TrajectoryQuadrature& quad)
{
    std::vector<double> terms(quad.headings.size());
    for (std::size_t k = 0; k < terms.size(); ++k) {
        terms[k] = quad.weights[k] * f(quad.headings[k]);
    }
    return pairwise_sum(terms);
}

double trajectory_average(const std::function<double(double)>& f, int order, GcqRule rule)
{
    return trajectory_average(f, make_trajectory_quadrature(order, rule));
}

const GaussLegendre& gauss_legendre(int order)
{
    static std::mutex guard;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard lock(guard);
    auto it = cache.find(order);
    if (it != cache.end()) {
        return it->second;
    }
    if (order < 1) {
        throw Error("Gauss-Legendre order must be at least 1");
    }
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double derivative = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = order == 1 ? x : p1;
            const double pn_1 = order == 1 ? 1.0 : p0;
            derivative = order * (x * pn - pn_1) / (x * x - 1.0);
            const double dx = pn / derivative;
            x -= dx;
            if (std::fabs(dx) < 1e-16) {
                break;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * derivative * derivative);
    }
    return cache.emplace(order, std::move(rule)).first->second;
}

}  // namespace fasuav
