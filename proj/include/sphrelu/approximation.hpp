#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sphrelu/activation.hpp"
#include "sphrelu/sphere_points.hpp"

namespace sphrelu {

// Zonal target f(eta) = sum_m coeff[m] p_m(center . eta) with explicit
// per-degree coefficients.
struct ZonalTarget {
    SphereDim dim;
    Eigen::VectorXd center;
    std::vector<double> coeff;  // f-hat(m), m = 0..max_degree
    double smoothness = 0.0;    // labeled Sobolev order r
    bool restricted = false;    // support restricted to the activation index set

    int max_degree() const { return static_cast<int>(coeff.size()) - 1; }
    double norm_sq() const;                    // sum f-hat(m)^2 N(m)
    double sobolev_norm_sq(double s) const;    // sum (m^{2s}+1) f-hat(m)^2 N(m)
    double tail_norm_sq(int cutoff_degree) const;  // energy at degrees >= cutoff
};

// Power-law Sobolev test function: degree-m energy f-hat(m)^2 N(m) =
// (1+m)^{-2r-1-margin} on the allowed degrees (all of [0, M_f], or the
// activation index set when restricted).  The margin keeps f inside H^r but
// outside H^{r+margin} as M_f grows.
ZonalTarget make_sobolev_target(SphereDim dim, ActivationOrder order, double r,
                                int degree_cap, const Eigen::VectorXd& center,
                                bool restrict_to_index_set, double margin = 0.5);

// f(eta) = (axis . eta)^k expanded in the Legendre basis (degree <= k).
ZonalTarget monomial_target(SphereDim dim, ActivationOrder order,
                            const Eigen::VectorXd& axis);

struct GramSystem {
    Eigen::MatrixXd gram;   // G[i][j] = sum_m sigma_hat(m)^2 p_m(theta_i . theta_j)
    Eigen::VectorXd rhs;    // b[j] = sum_m f-hat(m) sigma_hat(m) p_m(center . theta_j)
    double norm_sq_f = 0.0;
    double tail_bound = 0.0;  // kernel truncation tail (absolute, per diagonal entry)
    int truncation_degree = 0;
};

GramSystem assemble_gram(const PointSet& ps, const CoefficientTable& table,
                         const ZonalTarget& target);

struct ApproxSolution {
    double error = 0.0;      // best L2 error
    Eigen::VectorXd a;       // minimizing coefficients
    int dropped_modes = 0;   // eigenvalues below rcond * lambda_max
    bool ill_conditioned = false;  // more than n/2 modes dropped
    double clamp_magnitude = 0.0;  // amount the squared error was clamped from below
    double span_energy = 0.0;      // b^T G^+ b
};

// error^2 = ||f||^2 - b^T G^+ b with a spectral pseudo-inverse.
ApproxSolution best_approx_error(const GramSystem& sys, double rcond = 1e-12);

struct EnergySplit {
    double low = 0.0;   // sum_{m < cutoff} sigma_hat^2 a^T P(m) a
    double high = 0.0;  // sum_{m >= cutoff} ... (truncated at the table depth)
    double tail_bound = 0.0;
};

EnergySplit low_degree_energy(const Eigen::VectorXd& a, const PointSet& ps,
                              const CoefficientTable& table, int cutoff_degree);

}  // namespace sphrelu
