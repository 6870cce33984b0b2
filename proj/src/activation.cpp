#include "sphrelu/activation.hpp"

#include <cmath>

namespace sphrelu {

bool index_set_member(ActivationOrder order, int m) {
    if (m < 0) return false;
    if (m <= order.k) return true;
    return (m - order.k) % 2 == 1;
}

namespace {

// log of omega_{d-1}/omega_d * k! * Gamma(d/2), the prefactor shared by the
// coefficient closed form and xi.
double log_prefactor(SphereDim dim, ActivationOrder order) {
    const double log_area_ratio =
        std::lgamma(0.5 * (dim.d + 1)) - std::lgamma(0.5 * dim.d) - 0.5 * std::log(M_PI);
    return log_area_ratio + std::lgamma(order.k + 1.0) + std::lgamma(0.5 * dim.d);
}

}  // namespace

double coeff_quadrature(SphereDim dim, ActivationOrder order, int m) {
    if (m < 0) throw std::invalid_argument("degree must be nonnegative");
    HalfRangeIntegrator half(dim, m + order.k + 2);
    const int k = order.k;
    const double numer = half.integrate([&](double t) {
        return std::pow(t, k) * legendre_eval(dim, m, t);
    });
    return numer / legendre_norm_sq(dim, m);
}

double coeff_closed_form(SphereDim dim, ActivationOrder order, int m) {
    if (!index_set_member(order, m)) return 0.0;
    if (m <= order.k)
        throw std::domain_error("closed form needs m >= k+1; use the quadrature branch");
    const int k = order.k;
    const double sign = ((m - k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double lg = log_prefactor(dim, order) + std::lgamma(static_cast<double>(m - k)) -
                      m * std::log(2.0) - std::lgamma(0.5 * (m - k + 1)) -
                      std::lgamma(0.5 * (m + dim.d + k + 1));
    return sign * std::exp(lg);
}

double xi_eval(SphereDim dim, ActivationOrder order, double t) {
    if (!(t > order.k)) throw std::invalid_argument("xi requires t > k");
    const int k = order.k;
    const double lg = log_prefactor(dim, order) - (k + 1) * std::log(2.0) -
                      0.5 * std::log(M_PI) + std::lgamma(0.5 * (t - k)) -
                      std::lgamma(0.5 * (t + dim.d + k + 1));
    return std::exp(2.0 * lg);
}

CoefficientTable build_table(SphereDim dim, ActivationOrder order, int max_degree,
                             int degree_cap) {
    if (max_degree < order.k + 2)
        throw std::invalid_argument("table needs max_degree >= k+2");
    if (max_degree > degree_cap)
        throw std::invalid_argument("table max_degree exceeds the degree cap");

    CoefficientTable table{dim, order, max_degree, {}, 0.0};
    table.coeff.assign(max_degree + 1, 0.0);
    for (int m = 0; m <= max_degree; ++m) {
        if (!index_set_member(order, m)) continue;
        table.coeff[m] = (m <= order.k) ? coeff_quadrature(dim, order, m)
                                        : coeff_closed_form(dim, order, m);
    }

    // Tail of sum_{m > M} xi(m) N(m): explicit terms out to 4M, then an
    // integral comparison on the power-law remainder with a 1.5 cushion.
    const int far = 4 * max_degree;
    double tail = 0.0;
    for (int m = max_degree + 1; m <= far; ++m) {
        if (!index_set_member(order, m) || m <= order.k) continue;
        tail += xi_eval(dim, order, m) * static_cast<double>(harmonic_dim(dim, m));
    }
    const double decay = 2.0 * order.k + 2.0;  // xi(m) N(m) ~ m^{-decay}, every other m
    const double last = xi_eval(dim, order, far + 1) *
                        static_cast<double>(harmonic_dim(dim, far + 1));
    tail += 0.75 * last * (far + 1.0) / (decay - 1.0);
    table.tail_estimate = tail;
    return table;
}

}  // namespace sphrelu
