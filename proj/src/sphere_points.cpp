#include "sphrelu/sphere_points.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace sphrelu {

namespace {

// Self-contained generator (splitmix64 core) so point sets are reproducible
// independent of standard-library distribution internals.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Box-Muller, one value per call (no cached spare, keeps replay trivial)
    double gaussian() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
};

Eigen::VectorXd random_unit(Rng& rng, int ambient) {
    Eigen::VectorXd v(ambient);
    double norm2;
    do {
        for (int i = 0; i < ambient; ++i) v[i] = rng.gaussian();
        norm2 = v.squaredNorm();
    } while (norm2 < 1e-12);
    return v / std::sqrt(norm2);
}

void require_unit(const Eigen::VectorXd& x) {
    if (std::abs(x.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("input vector is not unit length");
}

double clamped_acos(double c) { return std::acos(std::min(1.0, std::max(-1.0, c))); }

}  // namespace

double geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    require_unit(x);
    require_unit(y);
    return clamped_acos(x.dot(y));
}

double antipodal_geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    require_unit(x);
    require_unit(y);
    return clamped_acos(std::abs(x.dot(y)));
}

PointSet generate_antipodal_quasiuniform(SphereDim dim, int n, std::uint64_t seed,
                                         int pool_factor) {
    if (n < dim.d + 2) throw std::invalid_argument("need at least d+2 points");
    if (pool_factor < 1) throw std::invalid_argument("pool factor must be positive");

    const int ambient = dim.d + 1;
    const std::int64_t pool_size =
        std::max<std::int64_t>(static_cast<std::int64_t>(pool_factor) * n, 10000);

    Rng rng(seed ^ 0x83a5u);
    Eigen::MatrixXd pool(pool_size, ambient);
    for (std::int64_t i = 0; i < pool_size; ++i)
        pool.row(i) = random_unit(rng, ambient).transpose();

    Eigen::MatrixXd chosen(n, ambient);
    // |cos| distance to the selected set; maximin in angle = minimax in |cos|
    Eigen::VectorXd best_abs_cos = Eigen::VectorXd::Constant(pool_size, -1.0);

    std::int64_t pick = 0;
    for (int j = 0; j < n; ++j) {
        if (j > 0) {
            pick = -1;
            double lowest = std::numeric_limits<double>::infinity();
            for (std::int64_t i = 0; i < pool_size; ++i) {
                if (best_abs_cos[i] >= 1.0) continue;  // already selected
                if (best_abs_cos[i] < lowest) {
                    lowest = best_abs_cos[i];
                    pick = i;
                }
            }
            if (pick < 0 || lowest >= 1.0 - 1e-15)
                throw std::runtime_error(
                    "candidate pool exhausted; retry with a larger pool factor");
        }
        chosen.row(j) = pool.row(pick);
        Eigen::VectorXd cos_to_new = (pool * pool.row(pick).transpose()).cwiseAbs();
        best_abs_cos = best_abs_cos.cwiseMax(cos_to_new);
        best_abs_cos[pick] = 2.0;  // mark selected
    }

    return PointSet{dim, std::move(chosen)};
}

UniformityReport certify_uniformity(const PointSet& ps, std::int64_t mesh_samples,
                                    std::uint64_t sample_seed) {
    const int n = ps.n();
    if (n < 2) throw std::invalid_argument("certification needs at least two points");
    if (mesh_samples < 100ll * n)
        throw std::invalid_argument("mesh_samples must be at least 100 * n");

    UniformityReport rep;
    rep.n = n;

    double max_cos = -1.0, max_abs_cos = -1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double c = ps.coords.row(i).dot(ps.coords.row(j));
            max_cos = std::max(max_cos, c);
            max_abs_cos = std::max(max_abs_cos, std::abs(c));
        }
    rep.separation_geo = clamped_acos(max_cos);
    rep.separation_anti = clamped_acos(max_abs_cos);
    rep.antipodal_violation = rep.separation_anti <= 1e-12;

    // covering radius: seeded uniform sampling, then hill-climb the worst spot
    const int ambient = ps.dim.d + 1;
    Rng rng(sample_seed + 0x9e1ull * static_cast<std::uint64_t>(n));
    Eigen::VectorXd worst(ambient);
    double worst_min_cos = 2.0;
    for (std::int64_t s = 0; s < mesh_samples; ++s) {
        const Eigen::VectorXd x = random_unit(rng, ambient);
        const double mc = (ps.coords * x).maxCoeff();
        if (mc < worst_min_cos) {
            worst_min_cos = mc;
            worst = x;
        }
    }
    double radius = clamped_acos(worst_min_cos);
    for (int round = 0; round < 3; ++round) {
        const double step = radius * std::pow(0.5, round + 1);
        for (int probe = 0; probe < 64; ++probe) {
            Eigen::VectorXd cand = worst;
            for (int i = 0; i < ambient; ++i) cand[i] += step * rng.gaussian();
            cand.normalize();
            const double mc = (ps.coords * cand).maxCoeff();
            if (mc < worst_min_cos) {
                worst_min_cos = mc;
                worst = cand;
            }
        }
        radius = clamped_acos(worst_min_cos);
    }
    rep.mesh_norm = radius;
    rep.mesh_ratio = rep.antipodal_violation
                         ? std::numeric_limits<double>::infinity()
                         : rep.mesh_norm / rep.separation_anti;
    return rep;
}

int kappa_threshold(const UniformityReport& report, double c3) {
    if (!(c3 > 0.0)) throw std::invalid_argument("C3 must be positive");
    if (report.antipodal_violation || report.separation_anti <= 0.0)
        throw std::invalid_argument(
            "separation is zero (antipodal pair present); no dyadic level is dominant");
    const double ratio = c3 / report.separation_anti;
    int q = std::max(0, static_cast<int>(std::floor(std::log2(ratio))) - 1);
    while (std::ldexp(1.0, q) < ratio * (1.0 - 1e-12)) ++q;
    return q;
}

}  // namespace sphrelu
