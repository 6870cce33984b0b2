// sphrelu: command-line driver for the spherical ReLU^k approximation lab.
//
// Subcommands: coeffs, cutoff, points, qmat, localize, approx, rate, verify.
// Exit codes: 0 success, 1 invalid configuration, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "sphrelu/artifact_io.hpp"
#include "sphrelu/cutoff.hpp"
#include "sphrelu/experiments.hpp"
#include "sphrelu/surface_quadrature.hpp"
#include "sphrelu/zonal_sweep.hpp"

namespace {

using namespace sphrelu;

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file;
    open_or_stdout(file, path) << text;
}

struct CommonFlags {
    int d = 2;
    int k = 1;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonFlags& common) {
    cmd->add_option("--d", common.d, "sphere dimension (>= 2)")->check(CLI::Range(2, 64));
    cmd->add_option("--k", common.k, "activation power (>= 0)")->check(CLI::Range(0, 16));
    cmd->add_option("--seed", common.seed, "generator seed");
}

int cmd_coeffs(const CommonFlags& common, int max_degree, const std::string& out) {
    const SphereDim dim(common.d);
    const ActivationOrder order(common.k);
    CoefficientTable table = build_table(dim, order, max_degree, 1 << 14);

    std::ofstream file;
    std::ostream& os = open_or_stdout(file, out);
    write_csv_preamble(os, {{"subcommand", "coeffs"},
                            {"d", std::to_string(common.d)},
                            {"k", std::to_string(common.k)},
                            {"max_degree", std::to_string(max_degree)}});
    os << "m,in_index_set,sigma_hat,xi,abs_rel_gap_closedform_vs_quadrature\n";
    for (int m = 0; m <= max_degree; ++m) {
        const bool member = table.in_index_set(m);
        os << m << ',' << (member ? 1 : 0) << ',' << format_double(table.coeff[m]) << ',';
        if (m > common.k) os << format_double(xi_eval(dim, order, m));
        os << ',';
        if (member && m > common.k && m <= 64) {
            const double quad = coeff_quadrature(dim, order, m);
            os << format_double(std::abs(table.coeff[m] - quad) / std::abs(quad));
        }
        os << "\n";
    }
    return 0;
}

int cmd_cutoff(const CommonFlags& common, int q, int samples, const std::string& out) {
    const SphereDim dim(common.d);
    const ActivationOrder order(common.k);
    std::ofstream file;
    std::ostream& os = open_or_stdout(file, out);
    write_csv_preamble(os, {{"subcommand", "cutoff"},
                            {"d", std::to_string(common.d)},
                            {"k", std::to_string(common.k)},
                            {"q", std::to_string(q)},
                            {"zeta_core_min", format_double(zeta_core_minimum())}});
    os << "t,zeta,phi_q\n";
    for (int i = 0; i <= samples; ++i) {
        const double t = 2.5 * i / samples;
        os << format_double(t) << ',' << format_double(zeta(t)) << ','
           << format_double(phi_eval(q, dim, order, t)) << "\n";
    }
    return 0;
}

int cmd_points(const CommonFlags& common, int n, int pool_factor,
               std::int64_t mesh_samples, const std::string& out,
               const std::string& report_path) {
    const SphereDim dim(common.d);
    PointSet ps = generate_antipodal_quasiuniform(dim, n, common.seed, pool_factor);
    if (mesh_samples <= 0) mesh_samples = 100ll * n;
    UniformityReport rep = certify_uniformity(ps, mesh_samples);

    std::ofstream file;
    std::ostream& os = open_or_stdout(file, out);
    ConfigEcho echo{{"subcommand", "points"},
                    {"d", std::to_string(common.d)},
                    {"n", std::to_string(n)},
                    {"seed", std::to_string(common.seed)},
                    {"pool_factor", std::to_string(pool_factor)},
                    {"mesh_samples", std::to_string(mesh_samples)}};
    write_csv_preamble(os, echo);
    for (int j = 0; j < dim.d + 1; ++j) os << (j ? ",x" : "x") << j;
    os << "\n";
    for (int i = 0; i < ps.n(); ++i) {
        for (int j = 0; j < dim.d + 1; ++j)
            os << (j ? "," : "") << format_double(ps.coords(i, j));
        os << "\n";
    }
    if (!report_path.empty()) write_text(report_path, uniformity_json(rep, echo));
    return 0;
}

int cmd_qmat(const CommonFlags& common, int n, int q_min, int q_max,
             const std::string& out_prefix, bool dump_matrix) {
    const SphereDim dim(common.d);
    const ActivationOrder order(common.k);
    PointSet ps = generate_antipodal_quasiuniform(dim, n, common.seed);
    UniformityReport rep = certify_uniformity(ps, 100ll * n);

    for (int q = q_min; q <= q_max; ++q) {
        DyadicBlock block = assemble_dyadic_block(ps, q, order);
        DominanceCertificate cert = certify_dominance(block);
        ConfigEcho echo{{"subcommand", "qmat"},
                        {"d", std::to_string(common.d)},
                        {"k", std::to_string(common.k)},
                        {"n", std::to_string(n)},
                        {"seed", std::to_string(common.seed)},
                        {"q", std::to_string(q)},
                        {"h_underline", format_double(rep.separation_anti)}};
        const double implied_c3 = std::ldexp(1.0, q) * rep.separation_anti;
        const std::string path =
            out_prefix.empty() ? "" : out_prefix + "_q" + std::to_string(q) + ".json";
        write_text(path, dominance_json(cert, implied_c3, echo));
        if (dump_matrix && !out_prefix.empty()) {
            std::ofstream mf(out_prefix + "_q" + std::to_string(q) + ".csv",
                             std::ios::binary);
            write_csv_preamble(mf, echo);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j)
                    mf << (j ? "," : "") << format_double(block.entries(i, j));
                mf << "\n";
            }
        }
    }
    return 0;
}

int cmd_localize(const CommonFlags& common, int q, int grid_size,
                 const std::string& out) {
    const SphereDim dim(common.d);
    const ActivationOrder order(common.k);
    std::vector<double> grid;
    for (int i = 1; i < grid_size; ++i) grid.push_back(M_PI * i / grid_size);
    LocalizationProfile prof = localization_profile(q, dim, order, grid);

    std::ofstream file;
    std::ostream& os = open_or_stdout(file, out);
    write_csv_preamble(os, {{"subcommand", "localize"},
                            {"d", std::to_string(common.d)},
                            {"k", std::to_string(common.k)},
                            {"q", std::to_string(q)},
                            {"grid_size", std::to_string(grid_size)},
                            {"fitted_exponent", format_double(prof.fitted_exponent)},
                            {"fitted_stderr", format_double(prof.fitted_stderr)},
                            {"prefactor_rel_diag", format_double(prof.prefactor_rel_diag)},
                            {"diag", format_double(prof.diag)}});
    os << "theta,abs_Lq,envelope_fit\n";
    for (std::size_t i = 0; i < prof.theta.size(); ++i)
        os << format_double(prof.theta[i]) << ',' << format_double(prof.abs_kernel[i])
           << ',' << format_double(prof.envelope_fit[i]) << "\n";
    return 0;
}

int cmd_approx(const CommonFlags& common, double r, int n, double rcond,
               bool restrict_flag, int m_f, const std::string& out) {
    RateConfig cfg;
    cfg.d = common.d;
    cfg.k = common.k;
    cfg.r = r;
    cfg.rcond = rcond;
    cfg.restrict_to_index_set = restrict_flag;
    cfg.target_degree_cap = m_f;
    RunArtifacts run = run_single(cfg, n, common.seed);

    nlohmann::json j;
    j["format_version"] = format_version();
    j["config"] = {{"subcommand", "approx"},
                   {"d", cfg.d},
                   {"k", cfg.k},
                   {"r", cfg.r},
                   {"n", n},
                   {"seed", common.seed},
                   {"rcond", cfg.rcond},
                   {"restrict_index_set", restrict_flag},
                   {"m_f", m_f}};
    j["n"] = run.n;
    j["error"] = run.error;
    j["norm_f"] = run.norm_f;
    j["dropped_modes"] = run.dropped_modes;
    j["low_energy"] = run.low_energy;
    j["high_energy"] = run.high_energy;
    j["q_kappa_quadform"] = run.q_kappa_quadform;
    j["kappa"] = run.kappa;
    j["ill_conditioned"] = run.ill_conditioned;
    write_text(out, j.dump(2) + "\n");
    return run.ill_conditioned ? 2 : 0;
}

int cmd_rate(const CommonFlags& common, double r, int n_min, int n_max, int n_factor,
             int seeds, bool restrict_flag, int fit_skip, double rcond,
             const std::string& out_csv, const std::string& out_json) {
    RateConfig cfg;
    cfg.d = common.d;
    cfg.k = common.k;
    cfg.r = r;
    cfg.n_list = doubling_range(n_min, n_max, n_factor);
    cfg.seeds.clear();
    for (int s = 0; s < seeds; ++s) cfg.seeds.push_back(common.seed + s);
    cfg.restrict_to_index_set = restrict_flag;
    cfg.fit_skip = fit_skip;
    cfg.rcond = rcond;

    RateReport report = run_rate_sweep(cfg);
    ConfigEcho echo{{"subcommand", "rate"},
                    {"d", std::to_string(cfg.d)},
                    {"k", std::to_string(cfg.k)},
                    {"r", format_double(cfg.r)},
                    {"n_min", std::to_string(n_min)},
                    {"n_max", std::to_string(n_max)},
                    {"n_factor", std::to_string(n_factor)},
                    {"seeds", std::to_string(seeds)},
                    {"seed0", std::to_string(common.seed)},
                    {"restrict_index_set", restrict_flag ? "1" : "0"},
                    {"fit_skip", std::to_string(fit_skip)},
                    {"rcond", format_double(rcond)}};
    {
        std::ofstream file;
        std::ostream& os = open_or_stdout(file, out_csv);
        write_rate_csv(os, report, echo);
    }
    if (!out_json.empty()) write_text(out_json, rate_report_json(report, echo));

    std::cerr << "fit: slope=" << format_double(report.fit.slope)
              << " stderr=" << format_double(report.fit.stderr_slope)
              << " plateau_saturation=" << format_double(report.plateau_saturation)
              << "\n";
    bool any_failed = false;
    for (const RateRow& row : report.rows) any_failed |= row.any_failed;
    return any_failed ? 2 : 0;
}

int run_verify(const std::string& suite);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherical ReLU^k approximation laboratory"};
    // key=value config; keys are <subcommand>.<flag>, flags override the file
    app.set_config("--config", "", "flat key=value configuration file");
    app.require_subcommand(1);

    CommonFlags common;

    auto* coeffs = app.add_subcommand("coeffs", "activation spectrum table as CSV");
    add_common(coeffs, common);
    int max_degree = 100;
    std::string out, report_path, out_json;
    coeffs->add_option("--max-degree", max_degree)->check(CLI::Range(2, 16384));
    coeffs->add_option("--out", out, "output CSV path (default stdout)");

    auto* cut = app.add_subcommand("cutoff", "sample the dyadic cutoff and block symbol");
    add_common(cut, common);
    int q = 4, samples = 1000;
    cut->add_option("--q", q)->check(CLI::Range(0, 30));
    cut->add_option("--samples", samples)->check(CLI::Range(10, 1000000));
    cut->add_option("--out", out);

    auto* points = app.add_subcommand("points", "antipodally quasi-uniform point sets");
    add_common(points, common);
    int n = 64, pool_factor = 50;
    std::int64_t mesh_samples = 0;
    points->add_option("--n", n)->check(CLI::Range(4, 1 << 20));
    points->add_option("--pool-factor", pool_factor)->check(CLI::Range(1, 10000));
    points->add_option("--mesh-samples", mesh_samples);
    points->add_option("--out", out);
    points->add_option("--report", report_path, "uniformity report JSON path");

    auto* qmat = app.add_subcommand("qmat", "dyadic block certificates");
    add_common(qmat, common);
    int q_min = 3, q_max = 8;
    bool dump_matrix = false;
    qmat->add_option("--n", n)->check(CLI::Range(4, 1 << 16));
    qmat->add_option("--q-min", q_min)->check(CLI::Range(0, 24));
    qmat->add_option("--q-max", q_max)->check(CLI::Range(0, 24));
    qmat->add_option("--out-prefix", out, "path prefix for per-q JSON/CSV artifacts");
    qmat->add_flag("--dump-matrix", dump_matrix, "also dump row-major CSV matrices");

    auto* localize = app.add_subcommand("localize", "localized kernel decay profile");
    add_common(localize, common);
    int grid_size = 2048;
    localize->add_option("--q", q)->check(CLI::Range(0, 24));
    localize->add_option("--grid-size", grid_size)->check(CLI::Range(16, 1 << 20));
    localize->add_option("--out", out);

    auto* approx = app.add_subcommand("approx", "best L2 approximation for one n");
    add_common(approx, common);
    double r = 3.5, rcond = 1e-12;
    bool restrict_flag = true;
    int m_f = 512;
    approx->add_option("--r", r, "target smoothness")->check(CLI::PositiveNumber);
    approx->add_option("--n", n)->check(CLI::Range(4, 1 << 16));
    approx->add_option("--rcond", rcond)->check(CLI::Range(1e-300, 0.999999));
    approx->add_option("--restrict-index-set", restrict_flag);
    approx->add_option("--m-f", m_f, "target degree cap")->check(CLI::Range(8, 16384));
    approx->add_option("--out", out, "output JSON path (default stdout)");

    auto* rate = app.add_subcommand("rate", "best-approximation rate sweep over n");
    add_common(rate, common);
    int n_min = 32, n_max = 1024, n_factor = 2, seeds = 3, fit_skip = 2;
    rate->add_option("--r", r)->check(CLI::PositiveNumber);
    rate->add_option("--n-min", n_min)->check(CLI::Range(4, 1 << 16));
    rate->add_option("--n-max", n_max)->check(CLI::Range(4, 1 << 16));
    rate->add_option("--n-factor", n_factor)->check(CLI::Range(2, 16));
    rate->add_option("--seeds", seeds, "number of seeds, starting at --seed")
        ->check(CLI::Range(1, 64));
    rate->add_option("--restrict-index-set", restrict_flag);
    rate->add_option("--fit-skip", fit_skip)->check(CLI::Range(0, 32));
    rate->add_option("--rcond", rcond)->check(CLI::Range(1e-300, 0.999999));
    rate->add_option("--out", out, "CSV output path (default stdout)");
    rate->add_option("--json", out_json, "JSON report path");

    auto* verify = app.add_subcommand("verify", "run the module invariant suites");
    std::string suite = "all";
    verify->add_option("--suite", suite,
                       "all | polynomials | activation | cutoff | points | kernels | "
                       "approx");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*coeffs) return cmd_coeffs(common, max_degree, out);
        if (*cut) return cmd_cutoff(common, q, samples, out);
        if (*points)
            return cmd_points(common, n, pool_factor, mesh_samples, out, report_path);
        if (*qmat) {
            if (q_max < q_min) throw std::invalid_argument("--q-max must be >= --q-min");
            return cmd_qmat(common, n, q_min, q_max, out, dump_matrix);
        }
        if (*localize) return cmd_localize(common, q, grid_size, out);
        if (*approx) return cmd_approx(common, r, n, rcond, restrict_flag, m_f, out);
        if (*rate)
            return cmd_rate(common, r, n_min, n_max, n_factor, seeds, restrict_flag,
                            fit_skip, rcond, out, out_json);
        if (*verify) return run_verify(suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

namespace {

struct VerifyTally {
    int passed = 0, failed = 0;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS  " : "FAIL  ") << name;
        if (!detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        (ok ? passed : failed) += 1;
    }
};

void verify_polynomials(VerifyTally& tally) {
    for (int d : {2, 3, 4}) {
        const SphereDim dim(d);
        bool tele = true;
        for (int m = 0; m <= 100; ++m) {
            std::int64_t s = 0;
            for (int j = 0; j <= m; ++j) s += harmonic_dim(dim, j);
            tele = tele && s == poly_space_dim(dim, m);
        }
        tally.check("polynomials: dimension telescoping d=" + std::to_string(d), tele);

        QuadratureRule rule = gauss_rule(dim, 72);
        double worst = 0.0;
        for (int m = 0; m <= 60; m += 7)
            for (int j = m + 1; j <= 60; j += 9) {
                const double ip = rule.integrate([&](double t) {
                    return legendre_eval(dim, m, t) * legendre_eval(dim, j, t);
                });
                worst = std::max(worst, std::abs(ip) / std::sqrt(legendre_norm_sq(dim, m) *
                                                                 legendre_norm_sq(dim, j)));
            }
        tally.check("polynomials: orthogonality d=" + std::to_string(d), worst < 1e-10,
                    "worst " + format_double(worst));
    }
}

void verify_activation(VerifyTally& tally) {
    for (int d : {2, 3}) {
        for (int k : {0, 1, 2}) {
            const SphereDim dim(d);
            const ActivationOrder order(k);
            double worst_cf = 0.0, worst_xi = 0.0;
            for (int m = k + 1; m <= 40; ++m) {
                if (!index_set_member(order, m)) continue;
                const double cf = coeff_closed_form(dim, order, m);
                const double cq = coeff_quadrature(dim, order, m);
                worst_cf = std::max(worst_cf, std::abs(cf - cq) / std::abs(cq));
                const double xi = xi_eval(dim, order, m);
                worst_xi = std::max(worst_xi, std::abs(xi - cf * cf) / (cf * cf));
            }
            tally.check("activation: closed form vs quadrature d=" + std::to_string(d) +
                            " k=" + std::to_string(k),
                        worst_cf < 1e-8, "worst " + format_double(worst_cf));
            tally.check("activation: xi identity d=" + std::to_string(d) +
                            " k=" + std::to_string(k),
                        worst_xi < 1e-10, "worst " + format_double(worst_xi));
        }
    }
}

void verify_cutoff(VerifyTally& tally) {
    double worst = 0.0;
    for (int m = 1; m <= 10000; ++m)
        worst = std::max(worst, std::abs(partition_check(m, 40) - 1.0));
    tally.check("cutoff: partition of unity m<=1e4", worst <= 1e-12,
                "worst " + format_double(worst));

    const SphereDim dim(2);
    double worst_dyadic = 0.0;
    for (int k : {0, 1, 2}) {
        const ActivationOrder order(k);
        for (int m = 1; m <= 200; ++m) {
            const int j = 2 * m + order.parity_offset();
            if (j <= k) continue;
            double s = 0.0;
            for (int qq = 0; qq <= 14; ++qq)
                s += phi_eval(qq, dim, order, std::ldexp(static_cast<double>(m), -qq));
            const double want = xi_eval(dim, order, j);
            worst_dyadic = std::max(worst_dyadic, std::abs(s - want) / want);
        }
    }
    tally.check("cutoff: dyadic consistency", worst_dyadic < 1e-12,
                "worst " + format_double(worst_dyadic));
}

void verify_points(VerifyTally& tally) {
    const SphereDim dim(2);
    PointSet ps = generate_antipodal_quasiuniform(dim, 128, 1);
    PointSet ps2 = generate_antipodal_quasiuniform(dim, 128, 1);
    tally.check("points: determinism", ps.coords == ps2.coords);
    UniformityReport rep = certify_uniformity(ps, 12800);
    tally.check("points: separation ordering", rep.separation_anti <= rep.separation_geo);
    tally.check("points: mesh ratio <= 4", rep.mesh_ratio <= 4.0,
                "ratio " + format_double(rep.mesh_ratio));
}

void verify_kernels(VerifyTally& tally) {
    const SphereDim dim(2);
    PointSet ps = generate_antipodal_quasiuniform(dim, 96, 2);
    UniformityReport rep = certify_uniformity(ps, 9600);
    for (int k : {0, 1}) {
        DominanceSearch search =
            find_dominant_level(ps, rep.separation_anti, ActivationOrder(k));
        tally.check("kernels: dominant level found k=" + std::to_string(k), search.found,
                    search.found ? "q*=" + std::to_string(search.q_star) : "");
        if (search.found) {
            const DominanceCertificate& cert = search.certificates.back();
            tally.check("kernels: Gershgorin floor k=" + std::to_string(k),
                        cert.lambda_min >=
                            (cert.diag - cert.max_offdiag_rowsum) * (1.0 - 1e-10) -
                                1e-14 * cert.diag);
        }
    }
}

void verify_approx(VerifyTally& tally) {
    const SphereDim dim(2);
    const ActivationOrder order(1);
    PointSet ps = generate_antipodal_quasiuniform(dim, 40, 5);
    CoefficientTable table = build_table(dim, order, 256);
    ZonalTarget target = make_sobolev_target(dim, order, 2.0, 128, ps.point(0), true);
    GramSystem sys = assemble_gram(ps, table, target);
    ApproxSolution sol = best_approx_error(sys);
    const double pythagoras =
        std::abs(sol.error * sol.error + sol.span_energy - sys.norm_sq_f);
    tally.check("approx: pythagoras", pythagoras <= 1e-10 * sys.norm_sq_f,
                format_double(pythagoras));
    EnergySplit split = low_degree_energy(sol.a, ps, table, 16);
    const double fitted = sol.a.dot(sys.gram * sol.a);
    tally.check("approx: projection split",
                std::abs(split.low + split.high - fitted) <= 1e-8 * fitted);
}

int run_verify(const std::string& suite) {
    VerifyTally tally;
    const bool all = suite == "all";
    if (all || suite == "polynomials") verify_polynomials(tally);
    if (all || suite == "activation") verify_activation(tally);
    if (all || suite == "cutoff") verify_cutoff(tally);
    if (all || suite == "points") verify_points(tally);
    if (all || suite == "kernels") verify_kernels(tally);
    if (all || suite == "approx") verify_approx(tally);
    if (tally.passed + tally.failed == 0) {
        std::cerr << "unknown suite: " << suite << "\n";
        return 1;
    }
    std::cout << tally.passed << " passed, " << tally.failed << " failed\n";
    return tally.failed == 0 ? 0 : 1;
}

}  // namespace
