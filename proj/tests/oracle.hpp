#pragma once

// Independent reference values for the analytic BLER tests: adaptive
// Gauss-Legendre (Boost nodes, bisection on disagreement) over the Boost
// incomplete gamma function.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <span>
#include <vector>

namespace oracle {

inline double product_cdf(double x, int m, double vartheta, std::span<const double> lambdas)
{
    double p = 1.0;
    for (double l : lambdas) {
        p *= boost::math::gamma_p(static_cast<double>(m), x * vartheta / l);
    }
    return p;
}

template <class F>
double adaptive_gauss_legendre(const F& f, double a, double b, double abs_tol, int depth = 0)
{
    using rule = boost::math::quadrature::gauss<double, 30>;
    const double mid = 0.5 * (a + b);
    const double whole = rule::integrate(f, a, b);
    const double left = rule::integrate(f, a, mid);
    const double right = rule::integrate(f, mid, b);
    if (std::fabs(left + right - whole) <= abs_tol || depth >= 30) {
        return left + right;
    }
    return adaptive_gauss_legendre(f, a, mid, 0.5 * abs_tol, depth + 1)
         + adaptive_gauss_legendre(f, mid, b, 0.5 * abs_tol, depth + 1);
}

/// chi * integral_{max(rho_l,0)}^{rho_h} prod_n P(m, x vartheta / lambda_n) dx
inline double hop_bler(double chi, double rho_l, double rho_h, int m, double vartheta,
                       std::vector<double> lambdas)
{
    const double lo = rho_l > 0.0 ? rho_l : 0.0;
    auto f = [&](double x) { return product_cdf(x, m, vartheta, lambdas); };
    return chi * adaptive_gauss_legendre(f, lo, rho_h, 1e-13 / chi);
}

}  // namespace oracle
