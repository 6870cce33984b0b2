#include "sphrelu/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sphrelu/zonal_sweep.hpp"

namespace sphrelu {

LowerBoundChain certified_lower_bound(const RunArtifacts& run) {
    LowerBoundChain chain;
    chain.lhs = run.error;
    chain.rhs = std::sqrt(std::max(0.0, run.q_kappa_quadform)) - run.poly_tail;
    chain.slack = chain.lhs - chain.rhs;
    chain.holds = chain.slack >= -1e-8 * run.norm_f;
    chain.informative = chain.rhs > 0.0;
    return chain;
}

std::vector<int> doubling_range(int n_min, int n_max, int factor) {
    if (n_min < 1 || n_max < n_min || factor < 2)
        throw std::invalid_argument("bad sweep range");
    std::vector<int> out;
    for (long long n = n_min; n <= n_max; n *= factor) out.push_back(static_cast<int>(n));
    return out;
}

namespace {

int next_pow2(int v) {
    int p = 1;
    while (p < v) p *= 2;
    return p;
}

Eigen::VectorXd north_pole(int d) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d + 1);
    c[d] = 1.0;
    return c;
}

}  // namespace

RunArtifacts run_single(const RateConfig& config, int n, std::uint64_t seed) {
    RunArtifacts run;
    run.n = n;
    run.seed = seed;

    const SphereDim dim(config.d);
    const ActivationOrder order(config.k);

    PointSet ps = generate_antipodal_quasiuniform(dim, n, seed, config.pool_factor);
    UniformityReport rep =
        certify_uniformity(ps, static_cast<std::int64_t>(config.mesh_factor) * n);
    run.separation_anti = rep.separation_anti;
    run.mesh_ratio = rep.mesh_ratio;

    DominanceSearch search = find_dominant_level(ps, rep.separation_anti, order);
    if (!search.found) {
        // fall back to the threshold at C3 = 4 so the run still reports
        run.kappa = kappa_threshold(rep, 4.0);
        run.note = "no diagonally dominant level found in the scan window";
    } else {
        run.kappa = search.q_star;
        run.implied_c3 = search.implied_c3;
    }

    const int cutoff = 1 << run.kappa;
    const int table_depth = std::max(
        {config.target_degree_cap, next_pow2(4 * static_cast<int>(std::ceil(
                                           std::pow(double(n), 1.0 / config.d)))),
         2 * cutoff});
    CoefficientTable table = build_table(dim, order, table_depth, 1 << 14);

    ZonalTarget target =
        make_sobolev_target(dim, order, config.r, config.target_degree_cap,
                            north_pole(config.d), config.restrict_to_index_set,
                            config.target_margin);
    run.norm_f = std::sqrt(target.norm_sq());

    GramSystem sys = assemble_gram(ps, table, target);
    ApproxSolution sol = best_approx_error(sys, config.rcond);
    run.error = sol.error;
    run.dropped_modes = sol.dropped_modes;
    run.ill_conditioned = sol.ill_conditioned;

    const std::vector<double> raw = degree_pair_energies(ps, sol.a, table.max_degree);
    EnergySplit split;
    for (int m = 0; m <= table.max_degree; ++m) {
        const double term =
            table.coeff_sq(m) * static_cast<double>(harmonic_dim(dim, m)) * raw[m];
        (m < cutoff ? split.low : split.high) += term;
    }
    run.low_energy = split.low;
    run.high_energy = split.high;
    run.q_kappa_quadform = dyadic_quadform(localized_weights(run.kappa, dim, order), raw);
    run.poly_tail = std::sqrt(target.tail_norm_sq(cutoff));
    return run;
}

FitResult fit_rate(const std::vector<std::pair<double, double>>& pts) {
    FitResult fit;
    if (pts.size() < 3) {
        fit.note = "fewer than 3 points; slope undefined";
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(pts.size());
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12) {
        fit.note = "degenerate abscissas";
        return fit;
    }
    fit.slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - fit.slope * sx) / n;
    double ssr = 0.0;
    for (const auto& [x, y] : pts) {
        const double resid = y - (intercept + fit.slope * x);
        ssr += resid * resid;
    }
    fit.stderr_slope = std::sqrt(ssr / (n - 2) / (sxx - sx * sx / n));
    fit.used_points = n;
    fit.valid = true;
    return fit;
}

RateReport run_rate_sweep(const RateConfig& config) {
    if (config.n_list.size() < 1) throw std::invalid_argument("empty n list");
    if (!std::is_sorted(config.n_list.begin(), config.n_list.end()))
        throw std::invalid_argument("n list must be increasing");
    for (int n : config.n_list)
        if (n < config.d + 2) throw std::invalid_argument("each n must be >= d+2");

    RateReport report;
    report.config = config;

    for (int n : config.n_list) {
        RateRow row;
        row.n = n;
        double log_err = 0.0, log_h = 0.0;
        double rhs_min = std::numeric_limits<double>::infinity();
        int used = 0;
        for (std::uint64_t seed : config.seeds) {
            RunArtifacts run;
            try {
                run = run_single(config, n, seed);
            } catch (const std::exception& e) {
                run.n = n;
                run.seed = seed;
                run.failed = true;
                run.note = e.what();
                row.any_failed = true;
                report.runs.push_back(run);
                continue;
            }
            report.runs.push_back(run);
            if (run.error > 0.0) {
                log_err += std::log(run.error);
                log_h += std::log(run.separation_anti);
                ++used;
            }
            row.kappa = std::max(row.kappa, run.kappa);
            rhs_min = std::min(rhs_min, certified_lower_bound(run).rhs);
        }
        if (used > 0) {
            row.error = std::exp(log_err / used);
            row.separation_anti = std::exp(log_h / used);
            row.scaled_saturation =
                row.error * std::pow(double(n), config.saturation_exponent());
            row.scaled_sobolev = row.error * std::pow(double(n), config.sobolev_exponent());
            row.lower_rhs = rhs_min;
        } else {
            row.any_failed = true;
        }
        report.rows.push_back(row);
    }

    report.fit_window_begin = std::min<int>(config.fit_skip,
                                            std::max(0, int(report.rows.size()) - 3));
    std::vector<std::pair<double, double>> pts;
    int excluded = 0;
    double plat_sat_lo = INFINITY, plat_sat_hi = 0.0;
    double plat_sob_lo = INFINITY, plat_sob_hi = 0.0;
    for (std::size_t i = report.fit_window_begin; i < report.rows.size(); ++i) {
        const RateRow& row = report.rows[i];
        if (row.any_failed || row.error <= 0.0) {
            ++excluded;
            continue;
        }
        pts.emplace_back(std::log2(double(row.n)), std::log2(row.error));
        plat_sat_lo = std::min(plat_sat_lo, row.scaled_saturation);
        plat_sat_hi = std::max(plat_sat_hi, row.scaled_saturation);
        plat_sob_lo = std::min(plat_sob_lo, row.scaled_sobolev);
        plat_sob_hi = std::max(plat_sob_hi, row.scaled_sobolev);
    }
    report.fit = fit_rate(pts);
    if (excluded > 0)
        report.fit.note += (report.fit.note.empty() ? "" : "; ") +
                           std::to_string(excluded) +
                           " window row(s) excluded (failed or nonpositive error)";
    report.plateau_saturation = plat_sat_lo > 0.0 ? plat_sat_hi / plat_sat_lo : 0.0;
    report.plateau_sobolev = plat_sob_lo > 0.0 ? plat_sob_hi / plat_sob_lo : 0.0;
    return report;
}

}  // namespace sphrelu
