#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "sphrelu/experiments.hpp"
#include "sphrelu/kernel_matrices.hpp"
#include "sphrelu/sphere_points.hpp"

namespace sphrelu {

const char* format_version();

// 17-significant-digit decimal with '.' separator, locale-independent;
// CSV and JSON artifacts round-trip bit-stably through this.
std::string format_double(double v);

// key=value pairs echoed into every artifact
using ConfigEcho = std::map<std::string, std::string>;

// "# format_version=...\n# key=value..." comment block, then the caller's
// header row.  LF line endings.
void write_csv_preamble(std::ostream& os, const ConfigEcho& config);

void write_rate_csv(std::ostream& os, const RateReport& report, const ConfigEcho& config);
std::string rate_report_json(const RateReport& report, const ConfigEcho& config);
std::string uniformity_json(const UniformityReport& report, const ConfigEcho& config);
std::string dominance_json(const DominanceCertificate& cert, double implied_c3,
                           const ConfigEcho& config);

}  // namespace sphrelu
