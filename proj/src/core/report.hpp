#pragma once

#include <string>

#include "rotation.hpp"
#include "siegel.hpp"
#include "tangent_map.hpp"

namespace tanlab {

// Keys follow the field order of SiegelEstimate. Thresholds are labeled heuristic.
std::string siegel_estimate_json(const SiegelEstimate& est, const SiegelConfig& config);
// Columns: rho,t,re,im
std::string traces_csv(const SiegelEstimate& est);
std::string bounded_scan_json(const BoundedScanReport& report, const SiegelConfig& config);
// Quotients, convergents, max quotient and Brjuno partials.
std::string rotation_json(const RotationNumber& rn);

// Columns: index,re,im
std::string polyline_csv(const Polyline& line);
// Reads "re,im" rows; a non-numeric first row is treated as a header.
Polyline parse_polyline_csv(const std::string& text);
Polyline read_polyline_csv(const std::string& path);

void write_file(const std::string& path, const std::string& bytes);

}  // namespace tanlab
