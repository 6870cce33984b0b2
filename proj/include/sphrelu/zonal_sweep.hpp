#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sphrelu/sphere_points.hpp"

namespace sphrelu {

// K(i,j) = sum_{m<=M} w[m] R_m(theta_i . theta_j) for the normalized
// Gegenbauer family R_m (R_m(1) = 1).  Row fills run in parallel when
// SPHRELU_THREADS allows; entries are written once, so schedules cannot
// change results.
Eigen::MatrixXd zonal_kernel_matrix(const PointSet& ps, const std::vector<double>& w);

// b_i = sum_m w[m] R_m(center . theta_i)
Eigen::VectorXd zonal_kernel_vector(const PointSet& ps, const Eigen::VectorXd& center,
                                    const std::vector<double>& w);

// e[m] = a^T [R_m(theta_i . theta_j)]_{ij} a  for m = 0..M
std::vector<double> degree_pair_energies(const PointSet& ps, const Eigen::VectorXd& a,
                                         int M);

// Thread budget: SPHRELU_THREADS when set, hardware concurrency otherwise.
int thread_budget();

}  // namespace sphrelu
