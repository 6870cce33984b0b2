// Test-only reference computations, independent of the library's evaluation
// paths: a symbolic Rodrigues-formula evaluator, closed-form pair integrals
// of ReLU^k features on the sphere, and Beta-function moments of the
// interval weight.
#pragma once

#include <cmath>
#include <vector>

#include "sphrelu/polynomials.hpp"

namespace oracle {

// m-fold derivative of (1-t^2)^{m+alpha}, carried as (1-t^2)^beta * P(t)
// with P a dense-coefficient polynomial: differentiating maps
// P -> (1-t^2) P' - 2 beta t P and beta -> beta - 1.  Returns the
// polynomial factor left once beta has dropped back to alpha.
inline std::vector<double> rodrigues_polynomial(int m, double alpha) {
    std::vector<double> p = {1.0};
    double beta = m + alpha;
    for (int step = 0; step < m; ++step) {
        std::vector<double> dp(p.size() >= 2 ? p.size() - 1 : 1, 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * i;
        std::vector<double> next(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < dp.size(); ++i) {
            next[i] += dp[i];                          // (1) * P'
            if (i + 2 < next.size()) next[i + 2] -= dp[i];  // (-t^2) * P'
        }
        for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] -= 2.0 * beta * p[i];
        p = std::move(next);
        beta -= 1.0;
    }
    return p;
}

inline double poly_eval(const std::vector<double>& p, double t) {
    double v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
    return v;
}

// Rodrigues-form evaluation normalized to the addition-theorem convention
// p_m(1) = N(m).
inline double rodrigues_legendre(sphrelu::SphereDim dim, int m, double t) {
    const std::vector<double> p = rodrigues_polynomial(m, dim.weight_exponent());
    return static_cast<double>(sphrelu::harmonic_dim(dim, m)) * poly_eval(p, t) /
           poly_eval(p, 1.0);
}

// Closed-form pair integrals over the normalized sphere measure:
//   k=0: both-positive orthant probability (pi - rho)/(2 pi),
//   k=1: (sin rho + (pi - rho) cos rho) / (2 pi (d+1)).
// Both follow from the Gaussian representation: a standard normal vector g
// factors as r * eta with eta uniform and E r^2 = d+1, and ReLU^k is
// k-homogeneous.
inline double pair_kernel(int d, int k, double rho) {
    if (k == 0) return (M_PI - rho) / (2.0 * M_PI);
    if (k == 1) return (std::sin(rho) + (M_PI - rho) * std::cos(rho)) /
                       (2.0 * M_PI * (d + 1));
    throw std::invalid_argument("pair kernel oracle implemented for k = 0, 1");
}

// int_{-1}^1 t^{2j} (1-t^2)^alpha dt = B(j + 1/2, alpha + 1)
inline double even_moment(int j, double alpha) {
    return std::exp(std::lgamma(j + 0.5) + std::lgamma(alpha + 1.0) -
                    std::lgamma(j + alpha + 1.5));
}

}  // namespace oracle
