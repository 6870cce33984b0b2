#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sphrelu/artifact_io.hpp"
#include "sphrelu/experiments.hpp"

using namespace sphrelu;

TEST_CASE("rate fitting on synthetic power laws") {
    std::vector<std::pair<double, double>> pts;
    for (int n : {16, 32, 64, 128, 256})
        pts.emplace_back(std::log2(double(n)), std::log2(1.0 / n));
    FitResult fit = fit_rate(pts);
    CHECK(fit.valid);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.stderr_slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    pts.clear();
    for (int n : {16, 32, 64, 128, 256})
        pts.emplace_back(std::log2(double(n)), std::log2(4.0 * std::pow(n, -1.25)));
    CHECK(fit_rate(pts).slope == doctest::Approx(-1.25).epsilon(1e-12));

    // 5 percent multiplicative noise moves the slope < 0.05
    pts.clear();
    for (int i = 0; i < 9; ++i) {
        const double n = 16 << i;
        const double noise = 1.0 + 0.05 * std::sin(12.345 * i);
        pts.emplace_back(std::log2(n), std::log2(3.0 * std::pow(n, -0.75) * noise));
    }
    CHECK(std::abs(fit_rate(pts).slope + 0.75) <= 0.05);

    CHECK_FALSE(fit_rate({{1.0, 2.0}}).valid);
}

TEST_CASE("doubling range") {
    CHECK(doubling_range(32, 1024) == std::vector<int>{32, 64, 128, 256, 512, 1024});
    CHECK(doubling_range(10, 50, 2) == std::vector<int>{10, 20, 40});
    CHECK_THROWS_AS(doubling_range(8, 4), std::invalid_argument);
}

TEST_CASE("single run produces a coherent artifact") {
    RateConfig cfg;
    cfg.d = 2;
    cfg.k = 1;
    cfg.r = 3.5;
    cfg.target_degree_cap = 128;
    RunArtifacts run = run_single(cfg, 48, 1);
    CHECK(run.error > 0.0);
    CHECK(run.error < run.norm_f);
    CHECK(run.kappa >= 1);
    CHECK(run.q_kappa_quadform >= 0.0);
    CHECK(run.high_energy >= 0.0);
    LowerBoundChain chain = certified_lower_bound(run);
    CHECK(chain.holds);
    CHECK(chain.lhs == run.error);
}

TEST_CASE("the pipeline also runs on S^3") {
    RateConfig cfg;
    cfg.d = 3;
    cfg.k = 1;
    cfg.r = 4.0;  // above the d=3, k=1 threshold (d+2k+1)/2 = 3
    cfg.target_degree_cap = 64;
    RunArtifacts run = run_single(cfg, 36, 2);
    CHECK(run.error > 0.0);
    CHECK(run.error < run.norm_f);
    CHECK(run.kappa >= 1);
    CHECK(certified_lower_bound(run).holds);
}

TEST_CASE("sweeps are reproducible byte for byte") {
    RateConfig cfg;
    cfg.d = 2;
    cfg.k = 1;
    cfg.r = 2.5;
    cfg.n_list = {16, 24, 32, 48};
    cfg.seeds = {1, 2};
    cfg.target_degree_cap = 96;
    cfg.fit_skip = 1;

    RateReport rep1 = run_rate_sweep(cfg);
    RateReport rep2 = run_rate_sweep(cfg);
    std::ostringstream csv1, csv2;
    write_rate_csv(csv1, rep1, {{"case", "repro"}});
    write_rate_csv(csv2, rep2, {{"case", "repro"}});
    CHECK(csv1.str() == csv2.str());
    CHECK(csv1.str().find("\r") == std::string::npos);

    // rows sorted by n, errors nonnegative, chain certified per run
    int prev_n = 0;
    for (const RateRow& row : rep1.rows) {
        CHECK(row.n > prev_n);
        prev_n = row.n;
        CHECK(row.error >= 0.0);
    }
    for (const RunArtifacts& run : rep1.runs) {
        CHECK_FALSE(run.failed);
        CHECK(certified_lower_bound(run).slack >= -1e-8 * run.norm_f);
    }
    CHECK(rep1.fit.valid);
    CHECK(rep1.plateau_saturation >= 1.0);
}

TEST_CASE("single-row sweeps flag insufficient data") {
    RateConfig cfg;
    cfg.d = 2;
    cfg.k = 0;
    cfg.r = 1.0;
    cfg.n_list = {24};
    cfg.seeds = {1};
    cfg.target_degree_cap = 64;
    cfg.fit_skip = 0;
    RateReport rep = run_rate_sweep(cfg);
    CHECK(rep.rows.size() == 1);
    CHECK_FALSE(rep.fit.valid);
    CHECK(!rep.fit.note.empty());
}

TEST_CASE("bad sweep configurations are rejected") {
    RateConfig cfg;
    cfg.n_list = {32, 16};
    CHECK_THROWS_AS(run_rate_sweep(cfg), std::invalid_argument);
    cfg.n_list = {2, 16};
    CHECK_THROWS_AS(run_rate_sweep(cfg), std::invalid_argument);
}

TEST_CASE("sub-critical chains may be non-informative") {
    // a hand-built artifact where the polynomial tail dominates
    RunArtifacts run;
    run.error = 0.05;
    run.norm_f = 1.0;
    run.q_kappa_quadform = 1e-6;
    run.poly_tail = 0.5;
    LowerBoundChain chain = certified_lower_bound(run);
    CHECK_FALSE(chain.informative);
    CHECK(chain.holds);  // lhs >= negative rhs trivially
}

TEST_CASE("csv formatting round-trips doubles") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}
