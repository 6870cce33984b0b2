#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "sphrelu/activation.hpp"
#include "sphrelu/cutoff.hpp"
#include "sphrelu/sphere_points.hpp"

namespace sphrelu {

// The finite set of degrees 2m + I_k inside [2^{q-1}, 2^{q+1}] with their
// phi_q weights.  Everything built from a dyadic level is an exact finite
// sum over these terms.
struct LocalizedWeights {
    int q = 0;
    int degree_lo = 0;  // smallest contributing degree, 0 when empty
    int degree_hi = 0;  // largest contributing degree
    std::vector<std::pair<int, double>> terms;  // (degree j, phi weight)

    double diag() const;  // L_q(1) = sum of weight * N(j)
};

LocalizedWeights localized_weights(int q, SphereDim dim, ActivationOrder order);

// L_q(t) = sum_j phi-weight(j) p_j(t).  M must cover the support, i.e.
// M >= 2^{q+1}; the truncation is then exact.
double localized_kernel_eval(int q, SphereDim dim, ActivationOrder order, double t,
                             int M);

struct DyadicBlock {
    int q;
    SphereDim dim;
    ActivationOrder order;
    Eigen::MatrixXd entries;
    double diag;  // L_q(1), constant along the diagonal
    int degree_lo, degree_hi;
};

DyadicBlock assemble_dyadic_block(const PointSet& ps, int q, ActivationOrder order);

struct DominanceCertificate {
    int q = 0;
    double diag = 0.0;
    double max_offdiag_rowsum = 0.0;
    double dominance_ratio = 0.0;  // max_offdiag_rowsum / diag
    double lambda_min = 0.0;
    double floor_constant = 0.0;  // lambda_min * 2^{q(2k+1)}
    bool dominant = false;        // dominance_ratio <= 1/2
};

// Row sums plus the smallest eigenvalue from a dense symmetric eigensolver.
DominanceCertificate certify_dominance(const DyadicBlock& block);

struct DominanceSearch {
    bool found = false;
    int q_star = -1;
    double implied_c3 = 0.0;  // 2^{q_star} * h
    std::vector<DominanceCertificate> certificates;
};

// Scan q upward from just below ceil(log2(1/h)) until dominance_ratio <= 1/2.
DominanceSearch find_dominant_level(const PointSet& ps, double separation_anti,
                                    ActivationOrder order, int extra_levels = 6);

struct LocalizationProfile {
    std::vector<double> theta;
    std::vector<double> abs_kernel;    // |L_q(cos theta)|
    std::vector<double> envelope_fit;  // fitted envelope evaluated pointwise
    double diag = 0.0;                 // L_q(1)
    double fitted_exponent = 0.0;      // slope of log|L_q| vs log(1 + 2^q sin theta)
    double fitted_stderr = 0.0;
    double prefactor_rel_diag = 0.0;   // fitted amplitude / L_q(1)
    int window_points = 0;
};

// Decay profile of |L_q| with an envelope fit over the mid window
// 2^q sin(theta) in [4, 2^q/4].  The fit uses per-bin maxima so the
// oscillation zeros of L_q do not drag the regression.
LocalizationProfile localization_profile(int q, SphereDim dim, ActivationOrder order,
                                         const std::vector<double>& thetas);

// P(m), the degree-m addition-theorem Gram block p_m(theta_i . theta_j).
Eigen::MatrixXd assemble_degree_block(const PointSet& ps, int m);

// a^T Q_q a evaluated from precomputed raw degree energies
// e[j] = a^T [R_j(theta_i . theta_j)] a  (see degree_pair_energies).
double dyadic_quadform(const LocalizedWeights& lw,
                       const std::vector<double>& raw_energies);

}  // namespace sphrelu
