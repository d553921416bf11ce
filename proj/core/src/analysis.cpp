#include "jckerr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jckerr/errors.hpp"
#include "jckerr/optimize.hpp"
#include "jckerr/parallel.hpp"

namespace jckerr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_curve_epsilon(double epsilon) {
  if (epsilon == 0.0) throw EpsilonZero("characteristic curve is undefined at epsilon = 0");
  if (!(epsilon > 0.0)) throw InvalidParams("epsilon must be positive");
}

ModelParams params_for(double delta, double epsilon, double chi) {
  ModelParams p;
  p.delta = delta;
  p.epsilon = epsilon;
  p.chi = chi;
  return p;
}

// dλ₀/dΔ = ⟨ψ₀|∂H/∂Δ|ψ₀⟩.
double ground_slope(const SectorState& ground, BlockMode mode) {
  const auto d = block_delta_derivative(mode);
  double slope = 0.0;
  for (std::size_t i = 0; i < 4; ++i) slope += d[i] * ground.amplitudes[i] * ground.amplitudes[i];
  return slope;
}

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

double characteristic_delta_n0(double epsilon) {
  require_curve_epsilon(epsilon);
  const double r2 = std::numbers::sqrt2;
  return 0.5 + r2 -
         0.5 * std::sqrt(17.0 - 12.0 * r2 + (12.0 - 8.0 * r2) * epsilon * epsilon);
}

double characteristic_delta(int n, double epsilon) {
  require_curve_epsilon(epsilon);
  if (n < 0) throw InvalidParams("n must be >= 0");
  const double nn = n;
  const double a = std::sqrt(nn * nn + 3.0 * nn + 2.0);
  const double radicand = 1.0 - 4.0 * (2.0 * nn + 3.0) * a + 8.0 * a * a +
                          (12.0 + 8.0 * nn - 8.0 * a) * epsilon * epsilon;
  if (radicand < 0.0)
    throw OutsideCurveDomain("characteristic curve radicand is negative at n=" +
                             std::to_string(n) + ", eps=" + std::to_string(epsilon));
  return 0.5 * (2.0 * nn + 1.0) + a - 0.5 * std::sqrt(radicand);
}

EigenSystem<4> sector_spectrum(int n, double delta, double epsilon, BlockMode mode, double chi) {
  const auto block = build_block(params_for(delta, epsilon, chi), Sector{n}, mode);
  return eigh_symmetric(block.entries);
}

SectorState ground_state_at(int n, double delta, double epsilon, BlockMode mode, double chi) {
  return ground_state(sector_spectrum(n, delta, epsilon, mode, chi), Sector{n});
}

ArgmaxResult argmax_ground_energy(int n, double epsilon, BlockMode mode,
                                  const ArgmaxOptions& options) {
  if (n < 0) throw InvalidParams("n must be >= 0");
  if (!(options.tol > 0.0)) throw InvalidParams("argmax tolerance must be positive");
  const double chi = options.chi;
  const auto [lo, hi] =
      options.bracket.value_or(std::pair{chi * (2.0 * n - 1.0), chi * (2.0 * n + 5.0)});
  if (!(lo < hi)) throw InvalidParams("argmax bracket must satisfy lo < hi");

  const auto ground = [&](double delta) { return ground_state_at(n, delta, epsilon, mode, chi); };
  const auto slope = [&](double delta) { return ground_slope(ground(delta), mode); };

  if (!(slope(lo) > 0.0 && slope(hi) < 0.0))
    throw NoInteriorMaximum("ground energy has no interior maximum on [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");

  const auto golden =
      golden_section_maximize([&](double d) { return ground(d).energy; }, lo, hi, options.tol);

  double delta_star = golden.x;
  const double margin = std::max(10.0 * options.tol, 1e-6);
  const double a = std::max(lo, golden.lo - margin);
  const double b = std::min(hi, golden.hi + margin);
  if (slope(a) > 0.0 && slope(b) < 0.0) delta_star = bisect_root(slope, a, b);

  return {.delta = delta_star, .energy = ground(delta_star).energy};
}

void SweepSpec::validate() const {
  if (n < 0) throw InvalidParams("n must be >= 0");
  if (delta_steps < 2 || eps_steps < 2) throw InvalidParams("grid steps must be >= 2");
  if (!(delta_min < delta_max)) throw InvalidParams("delta range must satisfy min < max");
  if (!(eps_min < eps_max)) throw InvalidParams("eps range must satisfy min < max");
  if (eps_min < 0.0) throw InvalidParams("eps range must be non-negative");
  if (!(chi > 0.0)) throw InvalidParams("chi must be positive");
  if (quantities == 0 || (quantities & ~unsigned{kAllQuantities}) != 0)
    throw InvalidParams("invalid quantity selection");
}

double SweepSpec::delta_at(int i) const noexcept {
  return delta_min + i * (delta_max - delta_min) / (delta_steps - 1);
}

double SweepSpec::eps_at(int j) const noexcept {
  return eps_min + j * (eps_max - eps_min) / (eps_steps - 1);
}

std::size_t SweepSpec::size() const noexcept {
  return static_cast<std::size_t>(delta_steps) * static_cast<std::size_t>(eps_steps);
}

std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  std::vector<SweepRow> rows(spec.size());
  parallel_for(rows.size(), threads, [&](std::size_t idx) {
    const int j = static_cast<int>(idx / static_cast<std::size_t>(spec.delta_steps));
    const int i = static_cast<int>(idx % static_cast<std::size_t>(spec.delta_steps));
    SweepRow& row = rows[idx];
    row.n = spec.n;
    row.delta = spec.delta_at(i);
    row.eps = spec.eps_at(j);
    row.chi = spec.chi;
    row.mode = spec.mode;

    const auto es = sector_spectrum(spec.n, row.delta, row.eps, spec.mode, spec.chi);
    row.degenerate = es.values[1] - es.values[0] < kDefaultGapTol;
    const auto state = eigen_state(es, Sector{spec.n}, 0);

    row.eigenvalues = {kNaN, kNaN, kNaN, kNaN};
    if (spec.quantities & kEnergy) row.eigenvalues[0] = es.values[0];
    if (spec.quantities & kAllEigenvalues) row.eigenvalues = es.values;
    row.berry = (spec.quantities & kBerry) ? berry_phase_closed(state) : kNaN;
    row.photon = (spec.quantities & kBerry) ? photon_expectation(state) : kNaN;
    row.entropy = (spec.quantities & kEntropy) ? entropy_closed(state) : kNaN;
  });
  return rows;
}

CrossingReport detect_crossings(int n, double epsilon_probe, double delta_lo, double delta_hi,
                                int samples, double chi) {
  if (samples < 100) throw InvalidParams("crossing scan needs at least 100 samples");
  if (!(delta_lo < delta_hi)) throw InvalidParams("crossing range must satisfy lo < hi");
  if (epsilon_probe < 0.0) throw InvalidParams("epsilon probe must be >= 0");

  const double step = (delta_hi - delta_lo) / (samples - 1);
  std::vector<double> deltas(static_cast<std::size_t>(samples));
  std::vector<double> energy(deltas.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    deltas[i] = delta_lo + static_cast<double>(i) * step;
    energy[i] = sector_spectrum(n, deltas[i], epsilon_probe, BlockMode::corrected, chi).values[0];
    scale = std::max(scale, std::fabs(energy[i]));
  }

  std::vector<double> curvature(deltas.size() - 2);
  for (std::size_t i = 1; i + 1 < deltas.size(); ++i)
    curvature[i - 1] = std::fabs(energy[i - 1] - 2.0 * energy[i] + energy[i + 1]);

  CrossingReport report{.n = n,
                        .epsilon_probe = epsilon_probe,
                        .crossings = {},
                        .symmetry_center = chi * (2.0 * n + 2.0),
                        .threshold = 0.0};
  report.threshold =
      std::max(kCrossingSpikeFactor * median_of(curvature), 1e-11 * (1.0 + scale));

  for (std::size_t i = 0; i < curvature.size();) {
    if (curvature[i] <= report.threshold) {
      ++i;
      continue;
    }
    std::size_t peak = i;
    for (; i < curvature.size() && curvature[i] > report.threshold; ++i)
      if (curvature[i] > curvature[peak]) peak = i;
    report.crossings.push_back(deltas[peak + 1]);
  }
  if (report.crossings.empty())
    throw NoCrossingsFound("no curvature spike above threshold " +
                           std::to_string(report.threshold));
  return report;
}

std::vector<CurveSample> curve_family(const std::vector<int>& ns, double eps_min,
                                      double eps_max, int steps, BlockMode mode, double chi,
                                      unsigned threads) {
  if (steps < 1) throw InvalidParams("curve needs at least one step");
  if (steps > 1 && !(eps_min < eps_max)) throw InvalidParams("eps range must satisfy min < max");
  for (int n : ns)
    if (n < 0) throw InvalidParams("n must be >= 0");

  std::vector<CurveSample> samples(ns.size() * static_cast<std::size_t>(steps));
  parallel_for(samples.size(), threads, [&](std::size_t idx) {
    CurveSample& s = samples[idx];
    s.n = ns[idx / static_cast<std::size_t>(steps)];
    const int j = static_cast<int>(idx % static_cast<std::size_t>(steps));
    s.epsilon = steps == 1 ? eps_min : eps_min + j * (eps_max - eps_min) / (steps - 1);
    s.delta_formula = s.delta_numeric = s.energy_at_max = kNaN;
    s.berry_at_max = s.entropy_at_max = s.discrepancy = kNaN;
    try {
      s.delta_formula = characteristic_delta(s.n, s.epsilon / chi) * chi;
      ArgmaxOptions options;
      options.chi = chi;
      const auto best = argmax_ground_energy(s.n, s.epsilon, mode, options);
      s.delta_numeric = best.delta;
      s.energy_at_max = best.energy;
      s.discrepancy = std::fabs(s.delta_formula - s.delta_numeric);
      const auto ground = ground_state_at(s.n, best.delta, s.epsilon, mode, chi);
      s.berry_at_max = berry_phase_closed(ground);
      s.entropy_at_max = entropy_closed(ground);
    } catch (const Error& e) {
      s.error = e.what();
    }
  });
  return samples;
}

std::vector<double> entropy_local_minima(int n, double epsilon, double delta_lo,
                                         double delta_hi, int samples, double chi) {
  if (samples < 3) throw InvalidParams("entropy scan needs at least 3 samples");
  if (!(delta_lo < delta_hi)) throw InvalidParams("entropy range must satisfy lo < hi");
  const auto entropy = [&](double d) {
    return entropy_closed(ground_state_at(n, d, epsilon, BlockMode::corrected, chi));
  };
  const double step = (delta_hi - delta_lo) / (samples - 1);
  std::vector<double> s(static_cast<std::size_t>(samples));
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = entropy(delta_lo + static_cast<double>(i) * step);

  std::vector<double> minima;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] < s[i - 1] && s[i] <= s[i + 1]) {
      const double centre = delta_lo + static_cast<double>(i) * step;
      minima.push_back(golden_section_minimize(entropy, centre - step, centre + step, 1e-10).x);
    }
  }
  return minima;
}

}  // namespace jckerr
