#pragma once

#include <string>
#include <utility>

#include "softchar/curve.hpp"

namespace softchar::cli {

inline constexpr const char* kForceHeader = "displacement_mm,force_N";
inline constexpr const char* kTorqueHeader = "rotation_deg,torque_Nmm";

struct IngestInfo {
  std::size_t duplicates_collapsed = 0;
};

/// Reads one two-column CSV. Lines starting with '#' are provenance comments
/// and are skipped; the header row is mandatory and checked verbatim.
/// Consecutive duplicate abscissae are collapsed by averaging (counted in
/// info). Malformed cells report row and column.
fitting::Curve read_curve_csv(const std::string& path, const std::string& expected_header,
                              IngestInfo* info = nullptr);

/// Force and torque curves for one spot.
std::pair<fitting::Curve, fitting::Curve> ingest_curves(const std::string& force_csv,
                                                        const std::string& torque_csv,
                                                        IngestInfo* force_info = nullptr,
                                                        IngestInfo* torque_info = nullptr);

/// Writes a curve with full round-trip precision (%.17g). Optional provenance
/// lines are emitted as leading '#' comments.
void write_curve_csv(const std::string& path, const fitting::Curve& curve,
                     const std::string& header, const std::string& provenance = "");

}  // namespace softchar::cli
