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

#include "fasuav/fas_correlation.hpp"

#include "fasuav/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace fasuav {

namespace {

// Below this magnitude the power series (in extended precision) is used,
// above it the Hankel asymptotic expansion. At 16 the optimally truncated
// asymptotic series is good to ~e^{-32}, and the largest series term is
// ~2e5, comfortably inside long double round-off.
constexpr double kSeriesCutoff = 16.0;

double j0_series(double x)
{
    const long double q = static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-22L * std::max(1.0L, std::fabs(sum))) {
            break;
        }
    }
    return static_cast<double>(sum);
}

double j0_asymptotic(double x)
{
    // t_n = prod_{j<=n} (2j-1)^2 / (n! (8x)^n); P takes even n, Q odd n,
    // both with alternating signs. Truncate at the smallest term.
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 1; n < 200; ++n) {
        const double next = term * (2.0 * n - 1.0) * (2.0 * n - 1.0) / (8.0 * x * n);
        if (std::fabs(next) >= previous || std::fabs(next) < 1e-18) {
            break;
        }
        previous = std::fabs(next);
        term = next;
        const int phase = n % 4;  // -Q, -P, +Q, +P for n = 1, 2, 3, 4
        if (phase == 1) {
            q -= term;
        } else if (phase == 2) {
            p -= term;
        } else if (phase == 3) {
            q += term;
        } else {
            p += term;
        }
    }
    const double chi = x - std::numbers::pi / 4.0;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q)
{
    const std::size_t n = a.size();
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (std::size_t k = 0; k < n; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

}  // namespace

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

double bessel_j0(double x)
{
    x = std::fabs(x);
    return x < kSeriesCutoff ? j0_series(x) : j0_asymptotic(x);
}

Matrix build_jakes(const FasGeometry& geom)
{
    if (geom.ports < 1) {
        throw Error("FAS needs at least one port");
    }
    if (!(geom.aperture > 0.0)) {
        throw Error("FAS aperture must be positive");
    }
    const auto n = static_cast<std::size_t>(geom.ports);
    if (n == 1) {
        return Matrix::identity(1);
    }
    // Toeplitz: one kernel value per lag.
    std::vector<double> lag(n);
    for (std::size_t d = 0; d < n; ++d) {
        lag[d] = bessel_j0(2.0 * std::numbers::pi * geom.aperture * static_cast<double>(d)
                           / static_cast<double>(n - 1));
    }
    Matrix j(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            j(r, c) = lag[r > c ? r - c : c - r];
        }
    }
    return j;
}

CorrelationModel eigen_model(const Matrix& jakes, double rank_tol)
{
    const std::size_t n = jakes.size();
    if (n == 0) {
        throw Error("decomposition failed: empty matrix");
    }
    Matrix a = jakes;
    Matrix v = Matrix::identity(n);

    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            total += a(r, c) * a(r, c);
        }
    }
    const double threshold = 1e-30 * std::max(total, 1e-300);

    bool converged = false;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) != 0.0) {
                    jacobi_rotate(a, v, p, q);
                }
            }
        }
    }
    if (!converged) {
        throw Error("decomposition failed: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return a(l, l) > a(r, r); });

    CorrelationModel model;
    model.jakes = jakes;
    model.eigenvalues.resize(n);
    model.eigenvectors = Matrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        model.eigenvalues[k] = std::max(a(order[k], order[k]), 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            model.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    const double lead = model.eigenvalues.front();
    if (!(lead > 0.0)) {
        throw Error("decomposition failed: matrix has no positive eigenvalue");
    }
    model.n_eff = static_cast<int>(std::count_if(model.eigenvalues.begin(), model.eigenvalues.end(),
                                                 [&](double l) { return l > rank_tol * lead; }));
    model.lambda_sum = std::accumulate(model.eigenvalues.begin(),
                                       model.eigenvalues.begin() + model.n_eff, 0.0);
    return model;
}

CorrelationModel make_correlation(const FasGeometry& geom, double rank_tol)
{
    if (geom.ports == 1) {
        if (!(geom.aperture > 0.0)) {
            throw Error("FAS aperture must be positive");
        }
        CorrelationModel model;
        model.jakes = Matrix::identity(1);
        model.eigenvalues = {1.0};
        model.eigenvectors = Matrix::identity(1);
        return model;
    }
    return eigen_model(build_jakes(geom), rank_tol);
}

}  // namespace fasuav
