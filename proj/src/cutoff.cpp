#include "sphrelu/cutoff.hpp"

#include <cmath>

namespace sphrelu {

namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double smooth_step(double x) {
    if (x <= 1.0) return 1.0;
    if (x >= 2.0) return 0.0;
    const double up = bump(2.0 - x);
    const double down = bump(x - 1.0);
    return up / (up + down);
}

double zeta(double t) { return smooth_step(t) - smooth_step(2.0 * t); }

double zeta_derivative(double t, int order) {
    if (order == 1) {
        const double h = 1e-6;
        return (zeta(t + h) - zeta(t - h)) / (2.0 * h);
    }
    if (order == 2) {
        const double h = 1e-4;
        return (zeta(t + h) - 2.0 * zeta(t) + zeta(t - h)) / (h * h);
    }
    throw std::invalid_argument("derivative order must be 1 or 2");
}

double zeta_core_minimum() {
    double lo = 1.0;
    const int n = 20000;
    for (int i = 0; i <= n; ++i) {
        const double t = 0.6 + (5.0 / 3.0 - 0.6) * i / n;
        lo = std::min(lo, zeta(t));
    }
    return lo;
}

double partition_check(int m, int q_max) {
    if (m < 1) throw std::invalid_argument("partition check needs m >= 1");
    const int needed = static_cast<int>(std::ceil(std::log2(2.0 * m)));
    if (q_max < needed)
        throw std::invalid_argument("q_max too small to cover the dyadic levels of m");
    double s = 0.0;
    for (int q = 0; q <= q_max; ++q) s += zeta(std::ldexp(static_cast<double>(m), -q));
    return s;
}

double phi_eval(int q, SphereDim dim, ActivationOrder order, double t) {
    if (q < 0) throw std::invalid_argument("dyadic level must be nonnegative");
    if (t < 0.0) throw std::invalid_argument("phi is defined for t >= 0");
    const double ik = order.parity_offset();
    const double xi_arg = std::ldexp(t, q + 1) + ik;
    if (xi_arg <= order.k) return 0.0;
    const double z = zeta(2.0 * t + ik * std::ldexp(1.0, -q));
    if (z == 0.0) return 0.0;
    return z * xi_eval(dim, order, xi_arg);
}

}  // namespace sphrelu
