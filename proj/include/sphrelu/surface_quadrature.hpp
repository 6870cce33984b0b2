#pragma once

#include <Eigen/Dense>

#include "sphrelu/activation.hpp"
#include "sphrelu/approximation.hpp"
#include "sphrelu/sphere_points.hpp"

namespace sphrelu {

// ||sum_j a_j sigma_k(theta_j . eta)||^2 over S^2 with the normalized
// surface measure, by a product rule: Gauss-Legendre in the polar cosine
// times a uniform (trapezoid) azimuth grid.  d = 2 only.
double network_norm_sq_direct_s2(const PointSet& ps, const Eigen::VectorXd& a,
                                 ActivationOrder order, int polar_nodes = 400,
                                 int azimuth_nodes = 400);

// Same product rule applied to a zonal target; exact once the rule covers
// twice the target degree.
double zonal_norm_sq_direct_s2(const ZonalTarget& target, int polar_nodes = 400,
                               int azimuth_nodes = 400);

}  // namespace sphrelu
