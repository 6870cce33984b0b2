#pragma once

#include <vector>

#include "sphrelu/polynomials.hpp"

namespace sphrelu {

// ReLU^k power.  parity_offset is 0 for odd k, 1 for even k; degrees
// 2m + parity_offset are the ones carrying spectrum above degree k.
struct ActivationOrder {
    int k;

    explicit ActivationOrder(int k_) : k(k_) {
        if (k < 0) throw std::invalid_argument("activation order must be >= 0");
    }
    int parity_offset() const { return (k % 2 == 0) ? 1 : 0; }
};

// m is in the support of the activation spectrum iff m <= k, or m >= k+1
// with m-k odd.
bool index_set_member(ActivationOrder order, int m);

// Projection coefficient sigma_hat(m) = <p_m, sigma_k> / ||p_m||^2 computed
// by piecewise-exact Gauss quadrature (sigma_k is t^k on [0,1] and 0 on
// [-1,0], so the integrand is polynomial on each piece).
double coeff_quadrature(SphereDim dim, ActivationOrder order, int m);

// Closed form for m >= k+1 via log-Gamma differences with the sign factor
// (-1)^{(m-k-1)/2} applied separately.  Returns exact 0 for m outside the
// index set; throws for m <= k (those entries are defined by quadrature).
double coeff_closed_form(SphereDim dim, ActivationOrder order, int m);

// xi(t), the squared-coefficient profile: xi(m) = sigma_hat(m)^2 for index
// set members m >= k+1.  Requires t > k.
double xi_eval(SphereDim dim, ActivationOrder order, double t);

struct CoefficientTable {
    SphereDim dim;
    ActivationOrder order;
    int max_degree;
    std::vector<double> coeff;  // sigma_hat(m), m = 0..max_degree
    double tail_estimate;       // bound on sum_{m > M, m in E} xi(m) N(m)

    double coeff_sq(int m) const { return coeff[m] * coeff[m]; }
    bool in_index_set(int m) const { return index_set_member(order, m); }
};

// Closed form for m >= k+1, quadrature for m <= k, plus a truncation tail
// estimate for the squared spectrum weighted by harmonic dimensions.
CoefficientTable build_table(SphereDim dim, ActivationOrder order, int max_degree,
                             int degree_cap = 4096);

}  // namespace sphrelu
