#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jckerr/errors.hpp"
#include "jckerr/model.hpp"
#include "jckerr/rng.hpp"

namespace jckerr::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class PhaseUnits { pi, rad };
enum class OutputFormat { csv, json };

/// Failure to read or write a file (exit code 3).
class IoError : public Error {
public:
  using Error::Error;
};

/// Bad command line or config file (exit code 1).
class UsageError : public Error {
public:
  using Error::Error;
};

/// Everything a run depends on. Identical configs give byte-identical output.
struct RunConfig {
  std::string command;

  // global
  double chi = 1.0;
  BlockMode mode = BlockMode::corrected;
  PhaseUnits phase_units = PhaseUnits::pi;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;
  unsigned threads = 1;
  std::string config_path;
  std::uint64_t seed = SplitMix64::kDefaultSeed;

  // point commands
  int n = 0;
  double delta = 0.0;
  double eps = 0.0;

  // sweep / crossings
  double delta_min = -2.0;
  double delta_max = 6.0;
  int delta_steps = 201;
  double eps_min = 0.0;
  double eps_max = 3.0;
  int eps_steps = 201;
  std::string quantities = "all";

  // curve
  std::vector<int> ns{0};
  int steps = 30;

  // holonomy uses `steps` too (default 4096 there); crossings / verify
  int samples = 100;
  bool inject_printed = false;
};

std::string to_string(PhaseUnits units);
std::string to_string(OutputFormat format);

/// Radians converted to the requested unit.
double phase_in(double radians, PhaseUnits units) noexcept;

/// Parses "energy,berry,entropy,all_eigenvalues" or "all" into a Quantity mask.
unsigned parse_quantities(const std::string& text);

}  // namespace jckerr::cli
