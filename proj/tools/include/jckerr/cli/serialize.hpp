#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "jckerr/analysis.hpp"
#include "jckerr/cli/run_config.hpp"
#include "json.hpp"

namespace jckerr::cli {

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double value);

/// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string checksum_hex(std::string_view bytes);

inline constexpr std::string_view kSweepHeader =
    "n,delta,eps,chi,mode,e0,e1,e2,e3,berry_ground,entropy_ground,photon_ground,degenerate";
inline constexpr std::string_view kCurveHeader =
    "n,eps,delta_formula,delta_numeric,discrepancy,energy_at_max,berry_at_max,entropy_at_max";

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, PhaseUnits units);
void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& rows, PhaseUnits units);

/// RunConfig echo (minus threads and output path) plus the artifact version.
nlohmann::ordered_json meta_json(const RunConfig& config);

nlohmann::ordered_json sweep_json(const RunConfig& config, const std::vector<SweepRow>& rows);
nlohmann::ordered_json curve_json(const RunConfig& config, const std::vector<CurveSample>& rows);

/// JSON number, or null for NaN/inf.
nlohmann::ordered_json json_number(double value);

}  // namespace jckerr::cli
