#include "sphrelu/surface_quadrature.hpp"

#include <cmath>
#include <vector>

namespace sphrelu {

namespace {

double relu_pow(double t, int k) {
    if (t <= 0.0) return 0.0;
    if (k == 0) return 1.0;
    double r = t;
    for (int i = 1; i < k; ++i) r *= t;
    return r;
}

template <class F>
double product_rule_s2(int polar_nodes, int azimuth_nodes, F&& f) {
    const QuadratureRule polar = gauss_jacobi(polar_nodes, 0.0, 0.0);
    double total = 0.0;
    for (int i = 0; i < polar_nodes; ++i) {
        const double u = polar.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        double ring = 0.0;
        for (int l = 0; l < azimuth_nodes; ++l) {
            const double phi = 2.0 * M_PI * l / azimuth_nodes;
            ring += f(s * std::cos(phi), s * std::sin(phi), u);
        }
        total += polar.weights[i] * ring;
    }
    // normalized measure: (1/4pi) * (2pi/azimuth_nodes) * sum
    return total / (2.0 * azimuth_nodes);
}

}  // namespace

double network_norm_sq_direct_s2(const PointSet& ps, const Eigen::VectorXd& a,
                                 ActivationOrder order, int polar_nodes,
                                 int azimuth_nodes) {
    if (ps.dim.d != 2)
        throw std::invalid_argument("direct surface quadrature is implemented for d=2");
    const int n = ps.n();
    return product_rule_s2(polar_nodes, azimuth_nodes, [&](double x, double y, double z) {
        double fn = 0.0;
        for (int j = 0; j < n; ++j) {
            const double t =
                ps.coords(j, 0) * x + ps.coords(j, 1) * y + ps.coords(j, 2) * z;
            fn += a[j] * relu_pow(t, order.k);
        }
        return fn * fn;
    });
}

double zonal_norm_sq_direct_s2(const ZonalTarget& target, int polar_nodes,
                               int azimuth_nodes) {
    if (target.dim.d != 2)
        throw std::invalid_argument("direct surface quadrature is implemented for d=2");
    const int M = target.max_degree();
    std::vector<double> r(M + 1);
    return product_rule_s2(polar_nodes, azimuth_nodes, [&](double x, double y, double z) {
        const double t = std::min(
            1.0, std::max(-1.0, target.center[0] * x + target.center[1] * y +
                                    target.center[2] * z));
        gegenbauer_sequence(target.dim, M, t, r.data());
        double f = 0.0;
        for (int m = 0; m <= M; ++m)
            f += target.coeff[m] * static_cast<double>(harmonic_dim(target.dim, m)) * r[m];
        return f * f;
    });
}

}  // namespace sphrelu
