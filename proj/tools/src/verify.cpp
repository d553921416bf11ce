#include "jckerr/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jckerr/analysis.hpp"
#include "jckerr/cli/run_config.hpp"
#include "jckerr/errors.hpp"
#include "jckerr/observables.hpp"

namespace jckerr::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Tracks the worst value of one metric against its bound.
struct Metric {
  std::string name;
  double bound = 0.0;
  double worst = 0.0;

  void observe(double value) { worst = std::max(worst, std::isnan(value) ? INFINITY : value); }
  bool ok() const { return worst <= bound; }
};

GroupResult summarize(std::string name, const std::vector<Metric>& metrics,
                      const std::string& failure = {}) {
  GroupResult result{.name = std::move(name), .passed = failure.empty(), .detail = {}};
  std::ostringstream detail;
  for (const auto& m : metrics) {
    result.passed = result.passed && m.ok();
    detail << m.name << "=" << m.worst << " (<= " << m.bound << ") ";
  }
  if (!failure.empty()) detail << failure;
  result.detail = detail.str();
  return result;
}

ModelParams point(double delta, double eps, double chi = 1.0) {
  ModelParams p;
  p.delta = delta;
  p.epsilon = eps;
  p.chi = chi;
  return p;
}

Vec<4> random_unit(SplitMix64& rng) {
  Vec<4> v{};
  double norm = 0.0;
  while (norm < 1e-6) {
    norm = 0.0;
    for (double& x : v) {
      x = rng.uniform(-1.0, 1.0);
      norm += x * x;
    }
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

GroupResult model_group(const VerifyOptions& opt, BlockMode expected) {
  SplitMix64 rng(opt.seed ^ 0x1);
  Metric commutator{"commutator", 1e-12};
  Metric extraction{"extraction", 1e-12};
  const int sets = std::max(1, opt.samples / 5);
  for (int t = 0; t < sets; ++t) {
    const double wf = rng.uniform(0.1, 4.0);
    const auto p = ModelParams::from_frequencies(wf, wf + rng.uniform(-3.0, 14.0),
                                                 rng.uniform(0.0, 3.0), rng.uniform(0.3, 2.0));
    const auto h = build_full_hamiltonian(p, 8);
    commutator.observe(commutator_norm(h, build_K_operator(8)));
    for (int n = 0; n + 2 <= 8; ++n) {
      const auto ex = extract_sector_block(h, Sector{n}, p);
      const auto block = build_block(p, Sector{n}, expected).entries;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          extraction.observe(std::fabs(ex.submatrix(i, j) - (i == j ? ex.shift : 0.0) - block(i, j)));
    }
  }
  return summarize("model", {commutator, extraction});
}

GroupResult eigen_group(const VerifyOptions& opt, BlockMode expected) {
  SplitMix64 rng(opt.seed ^ 0x2);
  Metric residual{"residual", 1e-10};
  Metric orthonormality{"orthonormality", 1e-10};
  Metric equivalence{"reduction", 1e-10};
  for (int t = 0; t < opt.samples; ++t) {
    const int n = rng.uniform_int(0, 40);
    const auto block = build_block(
        point(rng.uniform(2.0 * n - 10, 2.0 * n + 14), rng.uniform(0.0, 3.0)), Sector{n}, expected);
    const auto es = eigh_symmetric(block.entries);
    for (std::size_t j = 0; j < 4; ++j) {
      const auto hv = block.entries * es.vectors[j];
      for (std::size_t i = 0; i < 4; ++i)
        residual.observe(std::fabs(hv[i] - es.values[j] * es.vectors[j][i]));
      for (std::size_t k = 0; k < 4; ++k)
        orthonormality.observe(std::fabs(dot(es.vectors[j], es.vectors[k]) - (j == k ? 1.0 : 0.0)));
    }
    const auto reduced = reduced_spectrum(block);
    for (std::size_t i = 0; i < 4; ++i) equivalence.observe(std::fabs(reduced[i] - es.values[i]));
  }
  return summarize("eigen", {residual, orthonormality, equivalence});
}

GroupResult observables_group(const VerifyOptions& opt, BlockMode expected) {
  SplitMix64 rng(opt.seed ^ 0x3);
  Metric entropy{"entropy_oracle", 1e-12};
  Metric identity{"berry_identity", 1e-12};
  Metric holonomy{"holonomy", 1e-6};
  Metric bounds{"bounds_violation", 0.0};
  const double log2_3 = std::log2(3.0);
  std::string failure;
  for (int t = 0; t < opt.samples; ++t) {
    const int n = rng.uniform_int(0, 5);
    SectorState random{.amplitudes = random_unit(rng), .energy = 0.0, .sector = Sector{n}};
    entropy.observe(std::fabs(entropy_closed(random) -
                              von_neumann_entropy(reduced_density_atoms(random))));
    const auto& c = random.amplitudes;
    identity.observe(std::fabs(berry_phase_closed(random) / (2 * kPi) -
                               (n + 1 - c[0] * c[0] + c[3] * c[3])));

    const double delta = rng.uniform(2.0 * n - 2, 2.0 * n + 6);
    const double eps = rng.uniform(0.1, 3.0);
    try {
      const auto g = ground_state_at(n, delta, eps, expected);
      const double gamma = berry_phase_closed(g);
      const double s = entropy_closed(g);
      holonomy.observe(std::fabs(berry_phase_holonomy(g, HolonomyLoop{4096}) - gamma));
      entropy.observe(std::fabs(s - von_neumann_entropy(reduced_density_atoms(g))));
      if (gamma < 2 * kPi * n - 1e-12 || gamma > 2 * kPi * (n + 2) + 1e-12) bounds.observe(1.0);
      if (s < 0.0 || s > log2_3 + 1e-12) bounds.observe(1.0);
    } catch (const Error& e) {
      failure = e.what();
    }
  }
  return summarize("observables", {entropy, identity, holonomy, bounds}, failure);
}

GroupResult hellmann_feynman_group(const VerifyOptions& opt, BlockMode built) {
  // The slope identity is stated for the corrected block; `built` is what the
  // run actually constructs.
  SplitMix64 rng(opt.seed ^ 0x4);
  Metric bridge{"fd_vs_weights", 1e-6};
  const double h = 1e-4;
  std::string failure;
  for (int t = 0; t < opt.samples; ++t) {
    const int n = rng.uniform_int(0, 10);
    const double delta = rng.uniform(2.0 * n - 1, 2.0 * n + 5);
    const double eps = rng.uniform(0.2, 3.0);
    try {
      const double fd = (ground_state_at(n, delta + h, eps, built).energy -
                         ground_state_at(n, delta - h, eps, built).energy) /
                        (2 * h);
      const auto& c = ground_state_at(n, delta, eps, built).amplitudes;
      bridge.observe(std::fabs(fd - (c[0] * c[0] - c[3] * c[3])));
    } catch (const Error& e) {
      failure = e.what();
    }
  }
  return summarize("hellmann_feynman", {bridge}, failure);
}

GroupResult curve_group(BlockMode built) {
  Metric agreement{"argmax_vs_formula", 1e-3};
  Metric berry{"berry_vs_2pi(n+1)", 1e-6};
  Metric weights{"c1^2-c4^2", 1e-7};
  std::string failure;
  for (int n : {0, 2, 10, 40}) {
    for (double eps : {0.25, 0.5, 1.0, 2.0, 3.0}) {
      try {
        const auto best = argmax_ground_energy(n, eps, built);
        agreement.observe(std::fabs(best.delta - characteristic_delta(n, eps)));
        const auto g = ground_state_at(n, best.delta, eps, built);
        berry.observe(std::fabs(berry_phase_closed(g) - 2 * kPi * (n + 1)));
        const auto& c = g.amplitudes;
        weights.observe(std::fabs(c[0] * c[0] - c[3] * c[3]));
      } catch (const Error& e) {
        failure = "n=" + std::to_string(n) + " eps=" + std::to_string(eps) + ": " + e.what();
        agreement.observe(INFINITY);
      }
    }
  }
  return summarize("curve", {agreement, berry, weights}, failure);
}

GroupResult crossings_group() {
  Metric location{"crossing_offset", 0.05};
  Metric midpoint{"midpoint_offset", 0.05};
  Metric count{"count_mismatch", 0.0};
  std::string failure;
  for (int n : {0, 2}) {
    try {
      const auto report = detect_crossings(n, 0.01, 2.0 * n - 2, 2.0 * n + 6);
      if (report.crossings.size() != 2) {
        count.observe(1.0);
        continue;
      }
      location.observe(std::fabs(report.crossings[0] - (2.0 * n + 1)));
      location.observe(std::fabs(report.crossings[1] - (2.0 * n + 3)));
      midpoint.observe(std::fabs(0.5 * (report.crossings[0] + report.crossings[1]) -
                                 report.symmetry_center));
    } catch (const Error& e) {
      failure = e.what();
    }
  }
  return summarize("crossings", {location, midpoint, count}, failure);
}

}  // namespace

std::vector<GroupResult> run_verification(const VerifyOptions& options) {
  if (options.samples < 1) throw UsageError("--samples must be >= 1");
  const BlockMode built = options.inject_printed ? BlockMode::printed : BlockMode::corrected;
  return {
      model_group(options, built),
      eigen_group(options, built),
      observables_group(options, built),
      hellmann_feynman_group(options, built),
      curve_group(built),
      crossings_group(),
  };
}

}  // namespace jckerr::cli
