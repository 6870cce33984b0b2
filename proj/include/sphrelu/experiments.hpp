#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphrelu/approximation.hpp"
#include "sphrelu/kernel_matrices.hpp"

namespace sphrelu {

struct RateConfig {
    int d = 2;
    int k = 1;
    double r = 3.5;
    std::vector<int> n_list;
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    bool restrict_to_index_set = true;
    double rcond = 1e-12;
    int target_degree_cap = 512;  // M_f
    double target_margin = 0.5;
    int fit_skip = 2;       // smallest n values excluded from the fit window
    int mesh_factor = 100;  // mesh samples per point
    int pool_factor = 50;

    double saturation_exponent() const { return (d + 2.0 * k + 1.0) / (2.0 * d); }
    double sobolev_exponent() const { return r / d; }
};

// Everything recorded for one (n, seed) solve.
struct RunArtifacts {
    int n = 0;
    std::uint64_t seed = 0;
    double separation_anti = 0.0;
    double mesh_ratio = 0.0;
    int kappa = -1;
    double implied_c3 = 0.0;
    double norm_f = 0.0;
    double error = 0.0;
    double low_energy = 0.0;
    double high_energy = 0.0;
    double q_kappa_quadform = 0.0;  // a^T Q_kappa a at the optimum
    double poly_tail = 0.0;         // ||f - P_{2^kappa - 1} f||
    int dropped_modes = 0;
    bool ill_conditioned = false;
    bool failed = false;
    std::string note;
};

struct LowerBoundChain {
    double lhs = 0.0;    // measured best-approximation error
    double rhs = 0.0;    // sqrt(a^T Q_kappa a) - ||f - P_{2^kappa-1} f||
    double slack = 0.0;  // lhs - rhs
    bool holds = false;  // slack >= -1e-8 * ||f||
    bool informative = false;  // rhs > 0
};

LowerBoundChain certified_lower_bound(const RunArtifacts& run);

struct RateRow {
    int n = 0;
    double separation_anti = 0.0;  // geometric mean over seeds
    int kappa = 0;                 // max over seeds
    double error = 0.0;            // geometric mean over seeds
    double scaled_saturation = 0.0;  // error * n^{(d+2k+1)/(2d)}
    double scaled_sobolev = 0.0;     // error * n^{r/d}
    double lower_rhs = 0.0;          // min over seeds of the chain rhs
    bool any_failed = false;
};

struct FitResult {
    double slope = 0.0;
    double stderr_slope = 0.0;
    int used_points = 0;
    bool valid = false;
    std::string note;
};

// Ordinary least squares on (log2 n, log2 error).
FitResult fit_rate(const std::vector<std::pair<double, double>>& log2n_log2err);

struct RateReport {
    RateConfig config;
    std::vector<RateRow> rows;
    std::vector<RunArtifacts> runs;
    FitResult fit;
    double plateau_saturation = 0.0;  // max/min of the scaled column, fit window
    double plateau_sobolev = 0.0;
    int fit_window_begin = 0;  // first row index inside the fit window
};

RateReport run_rate_sweep(const RateConfig& config);

// Single (n, seed) pipeline: generate, certify, search dominance, solve.
RunArtifacts run_single(const RateConfig& config, int n, std::uint64_t seed);

std::vector<int> doubling_range(int n_min, int n_max, int factor = 2);

}  // namespace sphrelu
