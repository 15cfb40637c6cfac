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

// Spatial correlation across the fluid-antenna ports (Jakes model) and the
// eigen-branch representation used by every downstream statistic.
//
// Note on naming: the kernel is the ordinary Bessel function of the first
// kind J0, which is what the Jakes model uses. It is occasionally described
// in the literature as a "modified" Bessel function; that is a misnomer here.

#include <cstddef>
#include <span>
#include <vector>

namespace fasuav {

/// Dense square matrix, row-major. Only what the correlation model needs.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct FasGeometry {
    int ports = 2;           ///< N
    double aperture = 0.5;   ///< W, in wavelengths
};

inline constexpr double kDefaultRankTolerance = 1e-9;

/// Jakes matrix, its eigen-pairs, and the effective branch count.
struct CorrelationModel {
    Matrix jakes;
    std::vector<double> eigenvalues;  ///< all N, non-increasing, clamped >= 0
    Matrix eigenvectors;              ///< column n pairs with eigenvalues[n]
    int n_eff = 1;
    double lambda_sum = 1.0;          ///< sum of the first n_eff eigenvalues

    /// The n_eff leading eigenvalues (the independent branch weights).
    std::span<const double> branches() const
    {
        return std::span<const double>(eigenvalues).first(static_cast<std::size_t>(n_eff));
    }
};

/// Ordinary Bessel function of the first kind, order zero.
double bessel_j0(double x);

/// J[m][n] = J0(2 pi W (m - n) / (N - 1)). N = 1 yields the 1x1 identity.
Matrix build_jakes(const FasGeometry& geom);

/// Symmetric eigendecomposition by cyclic Jacobi rotations. Eigenvalues are
/// sorted non-increasing; negatives within round-off are clamped to zero and
/// n_eff counts eigenvalues above rank_tol * lambda_1.
CorrelationModel eigen_model(const Matrix& jakes, double rank_tol = kDefaultRankTolerance);

/// build_jakes + eigen_model, with the single-port case short-circuited.
CorrelationModel make_correlation(const FasGeometry& geom,
                                  double rank_tol = kDefaultRankTolerance);

}  // namespace fasuav
