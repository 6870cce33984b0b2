#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sphrelu/polynomials.hpp"

namespace sphrelu {

// n unit vectors on S^d, one per row of coords (n x (d+1)).
struct PointSet {
    SphereDim dim;
    Eigen::MatrixXd coords;

    int n() const { return static_cast<int>(coords.rows()); }
    Eigen::VectorXd point(int i) const { return coords.row(i).transpose(); }
};

// arccos of the clamped inner product.  Rejects vectors whose norm deviates
// from 1 by more than 1e-8.
double geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// min(rho(x,y), rho(x,-y)) = arccos(|x.y|)
double antipodal_geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Greedy farthest-point (maximin) selection under the antipodal metric from
// a seeded random candidate pool of size max(pool_factor*n, 10^4).
// Deterministic in (d, n, seed).
PointSet generate_antipodal_quasiuniform(SphereDim dim, int n, std::uint64_t seed,
                                         int pool_factor = 50);

struct UniformityReport {
    int n = 0;
    double separation_geo = 0.0;   // min pairwise geodesic distance
    double separation_anti = 0.0;  // min pairwise antipodal distance (h underbar)
    double mesh_norm = 0.0;        // covering radius, certified lower estimate
    double mesh_ratio = 0.0;       // mesh_norm / separation_anti (inf when degenerate)
    bool antipodal_violation = false;
};

// Exact O(n^2) pairwise separations; mesh norm estimated from mesh_samples
// seeded uniform samples plus 3 rounds of perturbation hill-climbing around
// the worst sample.  mesh_samples must be >= 100 n.
UniformityReport certify_uniformity(const PointSet& ps, std::int64_t mesh_samples,
                                    std::uint64_t sample_seed = 0x5eed5a17u);

// Smallest q with 2^q >= C3 / h.  Rejects h = 0 (antipodal degeneracy).
int kappa_threshold(const UniformityReport& report, double c3);

}  // namespace sphrelu
