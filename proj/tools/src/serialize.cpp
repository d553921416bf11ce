#include "jckerr/cli/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace jckerr::cli {

namespace {

std::string phase_field(double radians, PhaseUnits units) {
  return format_double(phase_in(radians, units));
}

}  // namespace

std::string to_string(PhaseUnits units) { return units == PhaseUnits::pi ? "pi" : "rad"; }
std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

double phase_in(double radians, PhaseUnits units) noexcept {
  return units == PhaseUnits::pi ? radians / std::numbers::pi : radians;
}

unsigned parse_quantities(const std::string& text) {
  unsigned mask = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (token == "all") mask |= kAllQuantities;
    else if (token == "energy") mask |= kEnergy;
    else if (token == "berry") mask |= kBerry;
    else if (token == "entropy") mask |= kEntropy;
    else if (token == "all_eigenvalues") mask |= kAllEigenvalues;
    else throw UsageError("unknown quantity '" + token + "'");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return mask;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string checksum_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, PhaseUnits units) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.delta) << ',' << format_double(r.eps) << ','
       << format_double(r.chi) << ',' << to_string(r.mode);
    for (double e : r.eigenvalues) os << ',' << format_double(e);
    os << ',' << phase_field(r.berry, units) << ',' << format_double(r.entropy) << ','
       << format_double(r.photon) << ',' << (r.degenerate ? 1 : 0) << '\n';
  }
}

void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& rows, PhaseUnits units) {
  os << kCurveHeader << '\n';
  for (const auto& s : rows) {
    os << s.n << ',' << format_double(s.epsilon) << ',' << format_double(s.delta_formula) << ','
       << format_double(s.delta_numeric) << ',' << format_double(s.discrepancy) << ','
       << format_double(s.energy_at_max) << ',' << phase_field(s.berry_at_max, units) << ','
       << format_double(s.entropy_at_max) << '\n';
  }
}

nlohmann::ordered_json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

// `threads` and `out` are left out: they never change the data, and keeping
// them would break byte-identical output across thread counts and paths.
nlohmann::ordered_json meta_json(const RunConfig& c) {
  nlohmann::ordered_json config = {
      {"command", c.command},
      {"chi", c.chi},
      {"mode", std::string(to_string(c.mode))},
      {"phase_units", to_string(c.phase_units)},
      {"format", to_string(c.format)},
      {"config", c.config_path},
      {"seed", c.seed},
      {"n", c.n},
      {"delta", c.delta},
      {"eps", c.eps},
      {"delta_min", c.delta_min},
      {"delta_max", c.delta_max},
      {"delta_steps", c.delta_steps},
      {"eps_min", c.eps_min},
      {"eps_max", c.eps_max},
      {"eps_steps", c.eps_steps},
      {"quantities", c.quantities},
      {"ns", c.ns},
      {"steps", c.steps},
      {"samples", c.samples},
      {"inject_printed", c.inject_printed},
  };
  return {{"version", kVersion}, {"config", config}};
}

nlohmann::ordered_json sweep_json(const RunConfig& config, const std::vector<SweepRow>& rows) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    records.push_back({
        {"n", r.n},
        {"delta", r.delta},
        {"eps", r.eps},
        {"chi", r.chi},
        {"mode", std::string(to_string(r.mode))},
        {"e0", json_number(r.eigenvalues[0])},
        {"e1", json_number(r.eigenvalues[1])},
        {"e2", json_number(r.eigenvalues[2])},
        {"e3", json_number(r.eigenvalues[3])},
        {"berry_ground", json_number(phase_in(r.berry, config.phase_units))},
        {"entropy_ground", json_number(r.entropy)},
        {"photon_ground", json_number(r.photon)},
        {"degenerate", r.degenerate ? 1 : 0},
    });
  }
  return {{"meta", meta_json(config)}, {"rows", std::move(records)}};
}

nlohmann::ordered_json curve_json(const RunConfig& config, const std::vector<CurveSample>& rows) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& s : rows) {
    records.push_back({
        {"n", s.n},
        {"eps", s.epsilon},
        {"delta_formula", json_number(s.delta_formula)},
        {"delta_numeric", json_number(s.delta_numeric)},
        {"discrepancy", json_number(s.discrepancy)},
        {"energy_at_max", json_number(s.energy_at_max)},
        {"berry_at_max", json_number(phase_in(s.berry_at_max, config.phase_units))},
        {"entropy_at_max", json_number(s.entropy_at_max)},
        {"error", s.error ? nlohmann::ordered_json(*s.error) : nlohmann::ordered_json(nullptr)},
    });
  }
  return {{"meta", meta_json(config)}, {"rows", std::move(records)}};
}

}  // namespace jckerr::cli
