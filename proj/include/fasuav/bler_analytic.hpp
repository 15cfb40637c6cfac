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

// Closed-form hop statistics under Nakagami-m fading: first-hop and FAS-hop
// SNR distributions, their finite-blocklength BLER averages (exact, by
// quadrature and high-SNR), urban LoS/NLoS mixing, decode-and-forward
// combining and averaging over the UAV heading.

#include "fasuav/finite_blocklength.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fasuav {

/// Gamma-distributed SNR with integer shape m and rate parameter vartheta
/// (CDF argument x * vartheta). For hop 1 vartheta = m / gamma1_bar; for the
/// FAS hop vartheta = m * lambda_sum / gamma2_bar.
struct GammaHopModel {
    int m = 1;
    double vartheta = 1.0;
};

/// Subsets beyond this branch count fall back to quadrature.
inline constexpr int kSubsetCap = 20;

// Below this the alternating subset sum is dominated by cancellation noise
// (~1e-15 absolute), so the dispatchers switch to quadrature.
inline constexpr double kClosedFormFloor = 1e-9;

/// One non-empty subset S of the FAS branches in the inclusion-exclusion
/// expansion of prod_n (1 - A_n(x)).
///
/// The polynomial P_S(x) = prod_{j in S} sum_{k<m} (x vartheta / lambda_j)^k / k!
/// is stored in exponential-generating form over u = rate * x:
///   P_S(x) = sum_a unit_coeffs[a] * (rate x)^a / a!
/// which keeps every stored value in [0, 1] whatever the branch rates are.
struct SubsetTerm {
    std::uint32_t mask = 0;           ///< bit j set when branch j is in S
    int cardinality = 0;              ///< |S|
    double rate = 0.0;                ///< b_S = sum_{j in S} vartheta / lambda_j
    std::vector<double> unit_coeffs;  ///< length |S| (m - 1) + 1

    /// Monomial coefficient c_a(S) of P_S(x) (may overflow for huge rates).
    double coeff(int a) const;
    int degree() const { return static_cast<int>(unit_coeffs.size()) - 1; }
};

struct SubsetExpansion {
    int m = 1;
    double vartheta = 0.0;
    int branches = 0;
    std::vector<SubsetTerm> subsets;  ///< 2^branches - 1 entries, ordered by mask
};

enum class GcqRule {
    fejer,           ///< interpolatory weights on the Chebyshev roots (default)
    sqrt_deweighted, ///< (pi / 2M) sum f(theta_m) sqrt(1 - x_m^2)
    paper_literal,   ///< (pi / M) sum w_m f(theta_m), w_m = (pi / M) / sqrt(1 - x_m^2)
};

/// Heading nodes for averaging over the circular trajectory.
struct TrajectoryQuadrature {
    int order = 0;                        ///< M
    GcqRule rule = GcqRule::fejer;
    std::vector<double> chebyshev_roots;  ///< x_m = cos((2m - 1) pi / (2M))
    std::vector<double> headings;         ///< theta_m = pi x_m + pi
    std::vector<double> weights;          ///< estimate = sum weights[m] f(theta_m)
};

// ---- distributions ---------------------------------------------------------

/// Regularized lower incomplete gamma P(m, x vartheta).
double gamma_cdf(double x, const GammaHopModel& model);

/// CDF of the selected FAS SNR: prod_n P(m, x vartheta2 / lambda_n).
double fas_cdf(double x, int m, double vartheta2, std::span<const double> lambdas);

// ---- hop BLERs -------------------------------------------------------------

/// chi * integral_{rho_l}^{rho_h} F_1(x) dx in closed form.
double hop1_bler(const FblParams& fbl, const GammaHopModel& model);

/// The finite-sum form of the same average (with its large-SNR cancellation);
/// kept for cross-checking hop1_bler.
double hop1_bler_finite_sum(const FblParams& fbl, const GammaHopModel& model);

/// Throws when lambdas.size() exceeds kSubsetCap.
SubsetExpansion subset_expansion(int m, double vartheta2, std::span<const double> lambdas);

/// Inclusion-exclusion closed form of the FAS-hop BLER average. The stored
/// coefficients depend only on the eigenvalue ratios, so one expansion serves
/// every SNR: `rate_scale` multiplies vartheta2 (and every b_S).
double hop2_bler_closed(const FblParams& fbl, const SubsetExpansion& expansion,
                        double rate_scale = 1.0);

/// Panelized fixed-order Gauss-Legendre evaluation of the same integral.
double hop2_bler_quadrature(const FblParams& fbl, int m, double vartheta2,
                            std::span<const double> lambdas);

/// Closed form up to kSubsetCap branches, quadrature beyond or below kClosedFormFloor.
double hop2_bler(const FblParams& fbl, int m, double vartheta2, std::span<const double> lambdas);

/// High-SNR power law with diversity order m * N_eff. Not clamped; it
/// overshoots 1 at low SNR.
double hop2_bler_asymptotic(const FblParams& fbl, int m, double vartheta2,
                            std::span<const double> lambdas);

/// -(a! / b^{a+1}) e^{-b y} sum_{i<=a} (b y)^i / i!, an antiderivative of
/// x^a e^{-b x}. Direct differences of this function cancel badly at small b;
/// the closed form does not use it, it is exposed for checking.
double helper_g(double y, int a, double b);

// ---- combining -------------------------------------------------------------

double urban_hop_mixture(double bler_los, double bler_nlos, double p_los);

/// Decode-and-forward: 1 - (1 - e1)(1 - e2).
double end_to_end_bler(double e1, double e2);

// ---- heading average -------------------------------------------------------

TrajectoryQuadrature make_trajectory_quadrature(int order, GcqRule rule = GcqRule::fejer);

/// Estimate of (1 / 2 pi) * integral_0^{2 pi} f(theta) d theta.
double trajectory_average(const std::function<double(double)>& f, const TrajectoryQuadrature& quad);
double trajectory_average(const std::function<double(double)>& f, int order,
                          GcqRule rule = GcqRule::fejer);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

}  // namespace fasuav
