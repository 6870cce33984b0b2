#include "sphrelu/approximation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "sphrelu/zonal_sweep.hpp"

namespace sphrelu {

double ZonalTarget::norm_sq() const {
    double s = 0.0;
    for (int m = 0; m <= max_degree(); ++m)
        s += coeff[m] * coeff[m] * static_cast<double>(harmonic_dim(dim, m));
    return s;
}

double ZonalTarget::sobolev_norm_sq(double s) const {
    double acc = 0.0;
    for (int m = 0; m <= max_degree(); ++m)
        acc += (std::pow(static_cast<double>(m), 2.0 * s) + 1.0) * coeff[m] * coeff[m] *
               static_cast<double>(harmonic_dim(dim, m));
    return acc;
}

double ZonalTarget::tail_norm_sq(int cutoff_degree) const {
    double s = 0.0;
    for (int m = std::max(0, cutoff_degree); m <= max_degree(); ++m)
        s += coeff[m] * coeff[m] * static_cast<double>(harmonic_dim(dim, m));
    return s;
}

ZonalTarget make_sobolev_target(SphereDim dim, ActivationOrder order, double r,
                                int degree_cap, const Eigen::VectorXd& center,
                                bool restrict_to_index_set, double margin) {
    if (!(r > 0.0)) throw std::invalid_argument("smoothness must be positive");
    if (degree_cap < 8) throw std::invalid_argument("target degree cap must be >= 8");
    if (std::abs(center.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("target center must be a unit vector");

    ZonalTarget target{dim, center, std::vector<double>(degree_cap + 1, 0.0), r,
                       restrict_to_index_set};
    const double expo = -2.0 * r - 1.0 - margin;
    for (int m = 0; m <= degree_cap; ++m) {
        if (restrict_to_index_set && !index_set_member(order, m)) continue;
        const double energy = std::pow(1.0 + m, expo);
        target.coeff[m] = std::sqrt(energy / static_cast<double>(harmonic_dim(dim, m)));
    }
    return target;
}

ZonalTarget monomial_target(SphereDim dim, ActivationOrder order,
                            const Eigen::VectorXd& axis) {
    if (std::abs(axis.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("target axis must be a unit vector");
    const int k = order.k;
    // t^k = sum_{m<=k} c_m p_m(t); project with the piecewise-exact rule
    ZonalTarget target{dim, axis, std::vector<double>(std::max(k, 8) + 1, 0.0),
                       0.0, false};
    QuadratureRule rule = gauss_rule(dim, k + 4);
    for (int m = 0; m <= k; ++m) {
        const double numer = rule.integrate(
            [&](double t) { return std::pow(t, k) * legendre_eval(dim, m, t); });
        target.coeff[m] = numer / legendre_norm_sq(dim, m);
    }
    target.smoothness = 1e9;  // polynomial: in every Sobolev class
    return target;
}

GramSystem assemble_gram(const PointSet& ps, const CoefficientTable& table,
                         const ZonalTarget& target) {
    const int M = table.max_degree;
    if (M < target.max_degree())
        throw std::invalid_argument(
            "coefficient table too shallow for the target; need max_degree >= " +
            std::to_string(target.max_degree()));

    std::vector<double> w(M + 1, 0.0);
    for (int m = 0; m <= M; ++m)
        w[m] = table.coeff_sq(m) * static_cast<double>(harmonic_dim(table.dim, m));

    std::vector<double> v(M + 1, 0.0);
    for (int m = 0; m <= std::min(M, target.max_degree()); ++m)
        v[m] = target.coeff[m] * table.coeff[m] * static_cast<double>(harmonic_dim(table.dim, m));

    GramSystem sys;
    sys.gram = zonal_kernel_matrix(ps, w);
    sys.rhs = zonal_kernel_vector(ps, target.center, v);
    sys.norm_sq_f = target.norm_sq();
    sys.tail_bound = table.tail_estimate;
    sys.truncation_degree = M;
    return sys;
}

ApproxSolution best_approx_error(const GramSystem& sys, double rcond) {
    if (!(rcond > 0.0 && rcond < 1.0))
        throw std::invalid_argument("rcond must lie in (0,1)");
    const int n = static_cast<int>(sys.gram.rows());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sys.gram);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge on the Gram matrix");
    const Eigen::VectorXd& lam = solver.eigenvalues();
    const Eigen::MatrixXd& vec = solver.eigenvectors();
    const double lam_max = lam(n - 1);

    ApproxSolution sol;
    sol.a = Eigen::VectorXd::Zero(n);
    const double floor = rcond * std::max(lam_max, 0.0);
    for (int i = 0; i < n; ++i) {
        if (lam(i) <= floor || lam(i) <= 0.0) {
            ++sol.dropped_modes;
            continue;
        }
        const double proj = vec.col(i).dot(sys.rhs);
        sol.span_energy += proj * proj / lam(i);
        sol.a += (proj / lam(i)) * vec.col(i);
    }
    sol.ill_conditioned = sol.dropped_modes > n / 2;

    double err_sq = sys.norm_sq_f - sol.span_energy;
    if (err_sq < 0.0) {
        sol.clamp_magnitude = -err_sq;
        err_sq = 0.0;
    }
    sol.error = std::sqrt(err_sq);
    return sol;
}

EnergySplit low_degree_energy(const Eigen::VectorXd& a, const PointSet& ps,
                              const CoefficientTable& table, int cutoff_degree) {
    const int M = table.max_degree;
    const std::vector<double> raw = degree_pair_energies(ps, a, M);
    EnergySplit split;
    for (int m = 0; m <= M; ++m) {
        const double term = table.coeff_sq(m) *
                            static_cast<double>(harmonic_dim(table.dim, m)) * raw[m];
        if (m < cutoff_degree)
            split.low += term;
        else
            split.high += term;
    }
    split.tail_bound = table.tail_estimate * a.squaredNorm();
    return split;
}

}  // namespace sphrelu
