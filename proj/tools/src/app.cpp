#include "jckerr/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "jckerr/analysis.hpp"
#include "jckerr/cli/run_config.hpp"
#include "jckerr/cli/serialize.hpp"
#include "jckerr/cli/verify.hpp"
#include "jckerr/errors.hpp"
#include "jckerr/observables.hpp"

namespace jckerr::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

constexpr const char* kSubcommands[] = {"spectrum", "sweep", "curve", "holonomy", "crossings", "verify"};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// `key = value` lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    std::replace(key.begin(), key.end(), '_', '-');
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

bool argv_has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string config_path_from(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

/// Appends config-file values for flags not present on the command line.
/// Keys that only other subcommands understand are skipped.
std::vector<std::string> merge_config(std::vector<std::string> args, CLI::App& app) {
  const auto path = config_path_from(args);
  if (path.empty()) return args;

  const CLI::App* active = nullptr;
  for (std::size_t i = 1; i < args.size() && !active; ++i)
    for (const char* name : kSubcommands)
      if (args[i] == name) active = app.get_subcommand(name);

  for (const auto& [key, value] : read_config_file(path)) {
    const std::string flag = "--" + key;
    if (key == "config") throw UsageError("config files cannot nest --config");
    bool known_here = app.get_option_no_throw(flag) != nullptr ||
                      (active && active->get_option_no_throw(flag) != nullptr);
    bool known_anywhere = known_here;
    for (const char* name : kSubcommands)
      known_anywhere = known_anywhere || app.get_subcommand(name)->get_option_no_throw(flag);
    if (!known_anywhere) throw UsageError("unknown config key '" + key + "'");
    if (!known_here || argv_has_flag(args, flag)) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

void emit(const RunConfig& cfg, const std::string& payload, std::ostream& out, std::ostream& err,
          std::size_t rows) {
  const std::string summary =
      "rows: " + std::to_string(rows) + " checksum: fnv1a64:" + checksum_hex(payload) + "\n";
  if (cfg.out_path.empty()) {
    out << payload;
    err << summary;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + cfg.out_path + "' for writing");
  file << payload;
  file.close();
  if (!file) throw IoError("failed writing '" + cfg.out_path + "'");
  out << summary;
}

void emit_report(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + cfg.out_path + "' for writing");
  file << payload;
  if (!file.flush()) throw IoError("failed writing '" + cfg.out_path + "'");
}

std::string join(const Vec<4>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + format_double(values[i]);
  return s;
}

std::string unit_suffix(PhaseUnits units) { return units == PhaseUnits::pi ? " pi" : " rad"; }

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const auto es = sector_spectrum(cfg.n, cfg.delta, cfg.eps, cfg.mode, cfg.chi);
  const double gap = es.values[1] - es.values[0];
  const bool degenerate = gap < kDefaultGapTol;
  const auto g = eigen_state(es, Sector{cfg.n}, 0);
  const auto obs = observables(g);

  std::ostringstream os;
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j = {
        {"meta", meta_json(cfg)},
        {"mode", std::string(to_string(cfg.mode))},
        {"eigenvalues", es.values},
        {"gap", gap},
        {"degenerate", degenerate},
        {"ground_amplitudes", g.amplitudes},
        {"ground_energy", obs.energy},
        {"berry_phase", phase_in(obs.berry_phase, cfg.phase_units)},
        {"phase_units", to_string(cfg.phase_units)},
        {"entropy_bits", obs.entropy},
        {"photon_expectation", obs.photon_expectation},
    };
    os << j.dump(2) << '\n';
  } else {
    os << "mode: " << to_string(cfg.mode) << '\n'
       << "n: " << cfg.n << "  delta: " << format_double(cfg.delta)
       << "  eps: " << format_double(cfg.eps) << "  chi: " << format_double(cfg.chi) << '\n'
       << "eigenvalues: " << join(es.values) << '\n'
       << "gap: " << format_double(gap) << (degenerate ? "  (DEGENERATE ground level)" : "") << '\n'
       << "ground_amplitudes: " << join(g.amplitudes) << '\n'
       << "ground_energy: " << format_double(obs.energy) << '\n'
       << "berry_phase: " << format_double(phase_in(obs.berry_phase, cfg.phase_units))
       << unit_suffix(cfg.phase_units) << '\n'
       << "entropy_bits: " << format_double(obs.entropy) << '\n'
       << "photon_expectation: " << format_double(obs.photon_expectation) << '\n';
  }
  emit_report(cfg, os.str(), out);
  return degenerate ? kExitDomain : kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.n = cfg.n;
  spec.delta_min = cfg.delta_min;
  spec.delta_max = cfg.delta_max;
  spec.delta_steps = cfg.delta_steps;
  spec.eps_min = cfg.eps_min;
  spec.eps_max = cfg.eps_max;
  spec.eps_steps = cfg.eps_steps;
  spec.mode = cfg.mode;
  spec.chi = cfg.chi;
  spec.quantities = parse_quantities(cfg.quantities);
  const auto rows = sweep(spec, cfg.threads);

  std::ostringstream os;
  if (cfg.format == OutputFormat::json)
    os << sweep_json(cfg, rows).dump() << '\n';
  else
    write_sweep_csv(os, rows, cfg.phase_units);
  emit(cfg, os.str(), out, err, rows.size());
  return kExitOk;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rows = curve_family(cfg.ns, cfg.eps_min, cfg.eps_max, cfg.steps, cfg.mode, cfg.chi,
                                 cfg.threads);
  std::ostringstream os;
  if (cfg.format == OutputFormat::json)
    os << curve_json(cfg, rows).dump() << '\n';
  else
    write_curve_csv(os, rows, cfg.phase_units);
  emit(cfg, os.str(), out, err, rows.size());
  for (const auto& r : rows)
    if (r.error) err << "warning: n=" << r.n << " eps=" << format_double(r.epsilon) << ": " << *r.error << '\n';
  return kExitOk;
}

int cmd_holonomy(const RunConfig& cfg, std::ostream& out) {
  const auto g = ground_state_at(cfg.n, cfg.delta, cfg.eps, cfg.mode, cfg.chi);
  const double closed = berry_phase_closed(g);
  const double coarse = berry_phase_holonomy(g, HolonomyLoop{cfg.steps});
  const double fine = berry_phase_holonomy(g, HolonomyLoop{2 * cfg.steps});

  std::ostringstream os;
  const auto u = [&](double rad) { return phase_in(rad, cfg.phase_units); };
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j = {
        {"meta", meta_json(cfg)},
        {"phase_units", to_string(cfg.phase_units)},
        {"closed", u(closed)},
        {"loops",
         {{{"steps", cfg.steps}, {"holonomy", u(coarse)}, {"abs_error", u(std::fabs(coarse - closed))}},
          {{"steps", 2 * cfg.steps}, {"holonomy", u(fine)}, {"abs_error", u(std::fabs(fine - closed))}}}},
    };
    os << j.dump(2) << '\n';
  } else {
    os << "mode: " << to_string(cfg.mode) << '\n'
       << "closed_form: " << format_double(u(closed)) << unit_suffix(cfg.phase_units) << '\n';
    for (const auto& [steps, value] : {std::pair{cfg.steps, coarse}, std::pair{2 * cfg.steps, fine}})
      os << "steps " << steps << ": holonomy " << format_double(u(value)) << "  abs_error "
         << format_double(u(std::fabs(value - closed))) << unit_suffix(cfg.phase_units) << '\n';
  }
  emit_report(cfg, os.str(), out);
  return kExitOk;
}

int cmd_crossings(const RunConfig& cfg, std::ostream& out) {
  const auto report =
      detect_crossings(cfg.n, cfg.eps, cfg.delta_min, cfg.delta_max, cfg.samples, cfg.chi);
  std::ostringstream os;
  const double mid = report.crossings.size() == 2
                         ? 0.5 * (report.crossings[0] + report.crossings[1])
                         : std::nan("");
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j = {
        {"meta", meta_json(cfg)},
        {"n", report.n},
        {"epsilon_probe", report.epsilon_probe},
        {"crossings", report.crossings},
        {"midpoint", json_number(mid)},
        {"symmetry_center", report.symmetry_center},
        {"spike_factor", kCrossingSpikeFactor},
        {"threshold", report.threshold},
    };
    os << j.dump(2) << '\n';
  } else {
    os << "n: " << report.n << "  eps_probe: " << format_double(report.epsilon_probe) << '\n'
       << "crossings:";
    for (double c : report.crossings) os << ' ' << format_double(c);
    os << '\n'
       << "midpoint: " << format_double(mid) << '\n'
       << "symmetry_center: " << format_double(report.symmetry_center) << '\n'
       << "spike threshold: " << format_double(report.threshold) << " ("
       << format_double(kCrossingSpikeFactor) << "x median |second difference|)\n";
  }
  emit_report(cfg, os.str(), out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions options{.seed = cfg.seed, .samples = cfg.samples, .inject_printed = cfg.inject_printed};
  const auto groups = run_verification(options);
  bool all = true;
  std::ostringstream os;
  for (const auto& g : groups) {
    all = all && g.passed;
    os << (g.passed ? "PASS " : "FAIL ") << g.name << "  " << g.detail << '\n';
  }
  os << (all ? "ALL PASS" : "SOME GROUPS FAILED") << '\n';
  emit_report(cfg, os.str(), out);
  return all ? kExitOk : kExitDomain;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"Two-atom Kerr Jaynes-Cummings ground-state toolkit", "jckerr"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  app.add_option("--chi", cfg.chi, "Kerr coupling; energy unit")->check(CLI::PositiveNumber);
  std::string mode_text = "corrected";
  std::string units_text = "pi";
  std::string format_text = "csv";
  app.add_option("--mode", mode_text, "Sector block (4,4) convention")
      ->check(CLI::IsMember({"corrected", "printed"}));
  app.add_option("--phase-units", units_text, "Berry phase unit")->check(CLI::IsMember({"pi", "rad"}));
  app.add_option("--format", format_text, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "Output file (default stdout)");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--config", cfg.config_path, "key = value defaults file");
  app.add_option("--seed", cfg.seed, "Seed for the verification sampler");

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and ground observables at one point");
  auto* sweep_cmd = app.add_subcommand("sweep", "Rectangular (delta, eps) grid");
  auto* curve = app.add_subcommand("curve", "Characteristic curves with numerical cross-check");
  auto* holonomy = app.add_subcommand("holonomy", "Discrete Berry phase vs closed form");
  auto* crossings = app.add_subcommand("crossings", "Ground-energy kinks at small coupling");
  auto* verify = app.add_subcommand("verify", "Run the property suite");

  for (auto* sub : {spectrum, holonomy}) {
    sub->add_option("--n", cfg.n, "Photon index of the sector")->check(CLI::NonNegativeNumber);
    sub->add_option("--delta", cfg.delta, "Detuning")->required();
    sub->add_option("--eps", cfg.eps, "Coupling")->required()->check(CLI::NonNegativeNumber);
  }

  sweep_cmd->add_option("--n", cfg.n)->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--delta-min", cfg.delta_min);
  sweep_cmd->add_option("--delta-max", cfg.delta_max);
  sweep_cmd->add_option("--delta-steps", cfg.delta_steps)->check(CLI::Range(2, 1 << 20));
  sweep_cmd->add_option("--eps-min", cfg.eps_min)->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--eps-max", cfg.eps_max);
  sweep_cmd->add_option("--eps-steps", cfg.eps_steps)->check(CLI::Range(2, 1 << 20));
  sweep_cmd->add_option("--quantities", cfg.quantities,
                        "Comma list of energy,berry,entropy,all_eigenvalues or 'all'");

  curve->add_option("--n", cfg.ns, "Photon indices, e.g. 0,2,10,40")->delimiter(',');
  curve->add_option("--eps-min", cfg.eps_min)->check(CLI::PositiveNumber);
  curve->add_option("--eps-max", cfg.eps_max)->check(CLI::PositiveNumber);
  auto* curve_steps = curve->add_option("--steps", cfg.steps)->check(CLI::Range(1, 1 << 20));

  auto* loop_steps = holonomy->add_option("--steps", cfg.steps, "Loop discretization (default 4096)");

  crossings->add_option("--n", cfg.n)->check(CLI::NonNegativeNumber);
  auto* crossing_eps = crossings->add_option("--eps", cfg.eps, "Probe coupling (default 0.01)");
  auto* crossing_lo = crossings->add_option("--delta-min", cfg.delta_min, "Default 2n-2");
  auto* crossing_hi = crossings->add_option("--delta-max", cfg.delta_max, "Default 2n+6");
  auto* crossing_samples = crossings->add_option("--samples", cfg.samples, "Default 1601");

  auto* verify_samples = verify->add_option("--samples", cfg.samples, "Random points per group");
  verify->add_flag("--inject-printed", cfg.inject_printed,
                   "Negative control: printed blocks where corrected ones are expected");

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = merge_config(std::move(args), app);
    std::vector<std::string> reversed(args.begin() + 1, args.end());
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  cfg.mode = parse_block_mode(mode_text);
  cfg.phase_units = units_text == "rad" ? PhaseUnits::rad : PhaseUnits::pi;
  cfg.format = format_text == "json" ? OutputFormat::json : OutputFormat::csv;

  try {
    if (spectrum->parsed()) {
      cfg.command = "spectrum";
      return cmd_spectrum(cfg, out);
    }
    if (sweep_cmd->parsed()) {
      cfg.command = "sweep";
      return cmd_sweep(cfg, out, err);
    }
    if (curve->parsed()) {
      cfg.command = "curve";
      if (curve_steps->count() == 0) cfg.steps = 30;
      if (cfg.ns.empty()) throw UsageError("--n needs at least one value");
      return cmd_curve(cfg, out, err);
    }
    if (holonomy->parsed()) {
      cfg.command = "holonomy";
      if (loop_steps->count() == 0) cfg.steps = 4096;
      return cmd_holonomy(cfg, out);
    }
    if (crossings->parsed()) {
      cfg.command = "crossings";
      if (crossing_eps->count() == 0) cfg.eps = 0.01;
      if (crossing_lo->count() == 0) cfg.delta_min = cfg.chi * (2.0 * cfg.n - 2.0);
      if (crossing_hi->count() == 0) cfg.delta_max = cfg.chi * (2.0 * cfg.n + 6.0);
      if (crossing_samples->count() == 0) cfg.samples = 1601;
      return cmd_crossings(cfg, out);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      if (verify_samples->count() > 0 && cfg.samples < 1)
        throw UsageError("--samples must be >= 1");
      return cmd_verify(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const LoopTooCoarse& e) {
    err << "error: " << e.what() << "\nhint: increase --steps so that 2*pi*(n+2)/steps < pi\n";
    return kExitDomain;
  } catch (const DegenerateGround& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace jckerr::cli
