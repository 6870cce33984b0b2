#include "sphrelu/artifact_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace sphrelu {

const char* format_version() { return "sphrelu-1"; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv_preamble(std::ostream& os, const ConfigEcho& config) {
    os << "# format_version=" << format_version() << "\n";
    for (const auto& [key, value] : config) os << "# " << key << "=" << value << "\n";
}

void write_rate_csv(std::ostream& os, const RateReport& report,
                    const ConfigEcho& config) {
    write_csv_preamble(os, config);
    os << "n,h_underline,kappa,error,err_scaled_saturation,err_scaled_sobolev,"
          "lower_bound_rhs\n";
    for (const RateRow& row : report.rows) {
        os << row.n << ',' << format_double(row.separation_anti) << ',' << row.kappa
           << ',' << format_double(row.error) << ','
           << format_double(row.scaled_saturation) << ','
           << format_double(row.scaled_sobolev) << ',' << format_double(row.lower_rhs)
           << "\n";
    }
}

namespace {

nlohmann::json config_block(const ConfigEcho& config) {
    nlohmann::json j;
    j["format_version"] = format_version();
    for (const auto& [key, value] : config) j["config"][key] = value;
    return j;
}

}  // namespace

std::string rate_report_json(const RateReport& report, const ConfigEcho& config) {
    nlohmann::json j = config_block(config);
    j["fit"] = {{"slope", report.fit.slope},
                {"stderr", report.fit.stderr_slope},
                {"used_points", report.fit.used_points},
                {"valid", report.fit.valid},
                {"note", report.fit.note}};
    j["plateau_saturation"] = report.plateau_saturation;
    j["plateau_sobolev"] = report.plateau_sobolev;
    j["saturation_exponent"] = report.config.saturation_exponent();
    j["sobolev_exponent"] = report.config.sobolev_exponent();
    j["fit_window_begin"] = report.fit_window_begin;
    for (const RateRow& row : report.rows) {
        j["rows"].push_back({{"n", row.n},
                             {"h_underline", row.separation_anti},
                             {"kappa", row.kappa},
                             {"error", row.error},
                             {"err_scaled_saturation", row.scaled_saturation},
                             {"err_scaled_sobolev", row.scaled_sobolev},
                             {"lower_bound_rhs", row.lower_rhs},
                             {"any_failed", row.any_failed}});
    }
    for (const RunArtifacts& run : report.runs) {
        LowerBoundChain chain = certified_lower_bound(run);
        j["runs"].push_back({{"n", run.n},
                             {"seed", run.seed},
                             {"h_underline", run.separation_anti},
                             {"mesh_ratio", run.mesh_ratio},
                             {"kappa", run.kappa},
                             {"implied_c3", run.implied_c3},
                             {"error", run.error},
                             {"norm_f", run.norm_f},
                             {"low_energy", run.low_energy},
                             {"high_energy", run.high_energy},
                             {"q_kappa_quadform", run.q_kappa_quadform},
                             {"poly_tail", run.poly_tail},
                             {"lower_rhs", chain.rhs},
                             {"chain_holds", chain.holds},
                             {"dropped_modes", run.dropped_modes},
                             {"ill_conditioned", run.ill_conditioned},
                             {"failed", run.failed},
                             {"note", run.note}});
    }
    return j.dump(2) + "\n";
}

std::string uniformity_json(const UniformityReport& report, const ConfigEcho& config) {
    nlohmann::json j = config_block(config);
    j["n"] = report.n;
    j["separation_geo"] = report.separation_geo;
    j["separation_anti"] = report.separation_anti;
    j["mesh_norm"] = report.mesh_norm;
    j["mesh_norm_is_estimate"] = true;  // sampled lower estimate, not exact
    j["mesh_ratio"] = std::isfinite(report.mesh_ratio) ? report.mesh_ratio : -1.0;
    j["antipodal_violation"] = report.antipodal_violation;
    return j.dump(2) + "\n";
}

std::string dominance_json(const DominanceCertificate& cert, double implied_c3,
                           const ConfigEcho& config) {
    nlohmann::json j = config_block(config);
    j["q"] = cert.q;
    j["diag"] = cert.diag;
    j["max_offdiag_rowsum"] = cert.max_offdiag_rowsum;
    j["dominance_ratio"] = cert.dominance_ratio;
    j["lambda_min"] = cert.lambda_min;
    j["floor_constant"] = cert.floor_constant;
    j["dominant"] = cert.dominant;
    j["implied_c3"] = implied_c3;
    return j.dump(2) + "\n";
}

}  // namespace sphrelu
