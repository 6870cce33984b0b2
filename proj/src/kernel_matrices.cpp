#include "sphrelu/kernel_matrices.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "sphrelu/zonal_sweep.hpp"

namespace sphrelu {

double LocalizedWeights::diag() const {
    double s = 0.0;
    for (const auto& term : terms) s += term.second;
    return s;
}

LocalizedWeights localized_weights(int q, SphereDim dim, ActivationOrder order) {
    if (q < 0) throw std::invalid_argument("dyadic level must be nonnegative");
    LocalizedWeights lw;
    lw.q = q;
    const int ik = order.parity_offset();
    // zeta support: 2^{-q} j in (1/2, 2) with j = 2m + I_k
    const int j_lo = (1 << q) / 2;
    const int j_hi = 2 * (1 << q);
    for (int j = std::max(ik, j_lo); j <= j_hi; ++j) {
        if ((j - ik) % 2 != 0) continue;
        const int m = (j - ik) / 2;
        const double w = phi_eval(q, dim, order, std::ldexp(static_cast<double>(m), -q));
        if (w == 0.0) continue;
        const double wn = w * static_cast<double>(harmonic_dim(dim, j));
        if (lw.terms.empty()) lw.degree_lo = j;
        lw.degree_hi = j;
        lw.terms.emplace_back(j, wn);
    }
    return lw;
}

double localized_kernel_eval(int q, SphereDim dim, ActivationOrder order, double t,
                             int M) {
    if (M < 2 * (1 << q))
        throw std::invalid_argument("truncation degree must cover the block support");
    const LocalizedWeights lw = localized_weights(q, dim, order);
    if (lw.terms.empty()) return 0.0;
    std::vector<double> r(lw.degree_hi + 1);
    gegenbauer_sequence(dim, lw.degree_hi, t, r.data());
    double s = 0.0;
    for (const auto& [j, w] : lw.terms) s += w * r[j];
    return s;
}

DyadicBlock assemble_dyadic_block(const PointSet& ps, int q, ActivationOrder order) {
    const LocalizedWeights lw = localized_weights(q, ps.dim, order);
    std::vector<double> w(lw.degree_hi + 1, 0.0);
    for (const auto& [j, wj] : lw.terms) w[j] = wj;
    DyadicBlock block{q, ps.dim, order, zonal_kernel_matrix(ps, w), lw.diag(),
                      lw.degree_lo, lw.degree_hi};
    return block;
}

DominanceCertificate certify_dominance(const DyadicBlock& block) {
    const int n = static_cast<int>(block.entries.rows());
    DominanceCertificate cert;
    cert.q = block.q;
    cert.diag = block.diag;

    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) s += std::abs(block.entries(i, j));
        worst = std::max(worst, s);
    }
    cert.max_offdiag_rowsum = worst;
    cert.dominance_ratio = (cert.diag > 0.0) ? worst / cert.diag
                                             : (worst > 0.0 ? INFINITY : 0.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.entries,
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge on Q_q; n=" +
                                 std::to_string(n) + " q=" + std::to_string(block.q));
    cert.lambda_min = solver.eigenvalues()(0);
    const double scale = std::ldexp(1.0, block.q * (2 * block.order.k + 1));
    cert.floor_constant = cert.lambda_min * scale;
    cert.dominant = cert.diag > 0.0 && cert.dominance_ratio <= 0.5;
    return cert;
}

DominanceSearch find_dominant_level(const PointSet& ps, double separation_anti,
                                    ActivationOrder order, int extra_levels) {
    if (!(separation_anti > 0.0))
        throw std::invalid_argument("separation must be positive to search for dominance");
    UniformityReport stub;
    stub.separation_anti = separation_anti;
    const int q_base = kappa_threshold(stub, 1.0);

    DominanceSearch search;
    for (int q = std::max(1, q_base - 1); q <= q_base + extra_levels; ++q) {
        DyadicBlock block = assemble_dyadic_block(ps, q, order);
        // row sums are cheap; the eigensolve happens only once a level is
        // dominant (non-dominant levels get a ratio-only certificate)
        const int n = static_cast<int>(block.entries.rows());
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += std::abs(block.entries(i, j));
            worst = std::max(worst, s);
        }
        const double ratio =
            block.diag > 0.0 ? worst / block.diag : (worst > 0.0 ? INFINITY : 0.0);
        if (block.diag > 0.0 && ratio <= 0.5) {
            search.certificates.push_back(certify_dominance(block));
            search.found = true;
            search.q_star = q;
            search.implied_c3 = std::ldexp(1.0, q) * separation_anti;
            break;
        }
        DominanceCertificate cert;
        cert.q = q;
        cert.diag = block.diag;
        cert.max_offdiag_rowsum = worst;
        cert.dominance_ratio = ratio;
        cert.lambda_min = std::numeric_limits<double>::quiet_NaN();
        cert.floor_constant = std::numeric_limits<double>::quiet_NaN();
        search.certificates.push_back(cert);
    }
    return search;
}

LocalizationProfile localization_profile(int q, SphereDim dim, ActivationOrder order,
                                         const std::vector<double>& thetas) {
    if (thetas.empty()) throw std::invalid_argument("empty angle grid");
    for (double th : thetas)
        if (!(th > 0.0 && th < M_PI))
            throw std::invalid_argument("grid angles must lie strictly inside (0, pi)");

    const LocalizedWeights lw = localized_weights(q, dim, order);
    LocalizationProfile prof;
    prof.diag = lw.diag();
    prof.theta = thetas;
    prof.abs_kernel.resize(thetas.size());
    prof.envelope_fit.assign(thetas.size(), 0.0);

    std::vector<double> r(std::max(lw.degree_hi, 1) + 1);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const double t = std::cos(thetas[i]);
        gegenbauer_sequence(dim, lw.degree_hi, t, r.data());
        double s = 0.0;
        for (const auto& [j, w] : lw.terms) s += w * r[j];
        prof.abs_kernel[i] = std::abs(s);
    }

    // envelope fit on per-bin maxima over the mid window 2^q sin(theta) in [4, 2^q/4]
    const double scale = std::ldexp(1.0, q);
    const double x_lo = std::log(1.0 + 4.0), x_hi = std::log(1.0 + scale / 4.0);
    const int bins = 32;
    std::vector<double> bx(bins, 0.0), by(bins, -1.0);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const double u = scale * std::sin(thetas[i]);
        if (u < 4.0 || u > scale / 4.0) continue;
        const double x = std::log(1.0 + u);
        int b = static_cast<int>((x - x_lo) / (x_hi - x_lo) * bins);
        b = std::min(bins - 1, std::max(0, b));
        if (prof.abs_kernel[i] > by[b]) {
            by[b] = prof.abs_kernel[i];
            bx[b] = x;
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npt = 0;
    for (int b = 0; b < bins; ++b) {
        if (by[b] <= 0.0) continue;
        const double y = std::log(by[b]);
        sx += bx[b];
        sy += y;
        sxx += bx[b] * bx[b];
        sxy += bx[b] * y;
        ++npt;
    }
    prof.window_points = npt;
    if (npt >= 3) {
        const double det = npt * sxx - sx * sx;
        const double slope = (npt * sxy - sx * sy) / det;
        const double inter = (sy - slope * sx) / npt;
        double ssr = 0.0;
        for (int b = 0; b < bins; ++b) {
            if (by[b] <= 0.0) continue;
            const double resid = std::log(by[b]) - (inter + slope * bx[b]);
            ssr += resid * resid;
        }
        prof.fitted_exponent = slope;
        prof.fitted_stderr =
            (npt > 2) ? std::sqrt(ssr / (npt - 2) / (sxx - sx * sx / npt)) : 0.0;
        prof.prefactor_rel_diag = std::exp(inter) / prof.diag;
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            const double x = std::log(1.0 + scale * std::sin(prof.theta[i]));
            prof.envelope_fit[i] = std::exp(inter + slope * x);
        }
    }
    return prof;
}

Eigen::MatrixXd assemble_degree_block(const PointSet& ps, int m) {
    std::vector<double> w(m + 1, 0.0);
    w[m] = static_cast<double>(harmonic_dim(ps.dim, m));
    return zonal_kernel_matrix(ps, w);
}

double dyadic_quadform(const LocalizedWeights& lw,
                       const std::vector<double>& raw_energies) {
    double s = 0.0;
    for (const auto& [j, w] : lw.terms) {
        if (j >= static_cast<int>(raw_energies.size()))
            throw std::invalid_argument("raw energies do not cover the block support");
        s += w * raw_energies[j];
    }
    return s;
}

}  // namespace sphrelu
