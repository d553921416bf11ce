#include "jckerr/observables.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "jckerr/errors.hpp"

namespace jckerr {

namespace {

constexpr double kEigenFloor = 1e-14;
constexpr double kDensityTol = 1e-10;
constexpr int kMinLoopSteps = 8;

double shannon_bits(double p) noexcept { return p > kEigenFloor ? -p * std::log2(p) : 0.0; }

}  // namespace

double HolonomyLoop::phase_at(int k) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(steps);
}

Vec<4> sector_photon_numbers(Sector sector) noexcept {
  const double n = sector.n;
  return {n, n + 1.0, n + 1.0, n + 2.0};
}

double photon_expectation(const SectorState& state) noexcept {
  const auto& c = state.amplitudes;
  const double n = state.sector.n;
  return n * c[0] * c[0] + (n + 1.0) * (c[1] * c[1] + c[2] * c[2]) + (n + 2.0) * c[3] * c[3];
}

double berry_phase_closed(const SectorState& state) noexcept {
  return 2.0 * std::numbers::pi * photon_expectation(state);
}

double berry_phase_holonomy(const SectorState& state, const HolonomyLoop& loop) {
  if (loop.steps < kMinLoopSteps)
    throw LoopTooCoarse("holonomy loop needs at least 8 steps (got " +
                        std::to_string(loop.steps) + ")");
  const auto photons = sector_photon_numbers(state.sector);
  const double fastest = 2.0 * std::numbers::pi * photons[3] / loop.steps;
  if (fastest >= std::numbers::pi)
    throw LoopTooCoarse("phase step " + std::to_string(fastest) +
                        " rad >= pi; use more than " + std::to_string(2 * (state.sector.n + 2)) +
                        " steps");

  using cplx = std::complex<double>;
  const auto transported = [&](int k) {
    std::array<cplx, 4> psi;
    const double phi = loop.phase_at(k);
    for (std::size_t i = 0; i < 4; ++i)
      psi[i] = state.amplitudes[i] * std::polar(1.0, -phi * photons[i]);
    return psi;
  };

  double total = 0.0;
  auto current = transported(0);
  for (int k = 0; k < loop.steps; ++k) {
    const auto next = transported(k + 1);
    cplx overlap{};
    for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(current[i]) * next[i];
    const double increment = std::arg(overlap);
    if (std::fabs(increment) >= std::numbers::pi)
      throw LoopTooCoarse("single-step phase increment reached pi");
    total += increment;
    current = next;
  }
  return 0.0 - total;
}

DensityMatrix reduced_density_atoms(const SectorState& state) noexcept {
  const auto& c = state.amplitudes;
  DensityMatrix rho;
  auto& r = rho.entries;
  r(0, 0) = c[0] * c[0];
  r(1, 1) = c[1] * c[1];
  r(2, 2) = c[2] * c[2];
  r(1, 2) = r(2, 1) = c[1] * c[2];
  r(3, 3) = c[3] * c[3];
  return rho;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto& r = rho.entries;
  const double trace = r(0, 0) + r(1, 1) + r(2, 2) + r(3, 3);
  if (std::fabs(trace - 1.0) > kDensityTol)
    throw NotDensityMatrix("trace " + std::to_string(trace) + " != 1");
  const auto es = eigh_symmetric(r);
  double s = 0.0;
  for (double p : es.values) {
    if (p < -kDensityTol) throw NotDensityMatrix("negative eigenvalue " + std::to_string(p));
    s += shannon_bits(p);
  }
  return s;
}

double entropy_closed(const SectorState& state) noexcept {
  const auto& c = state.amplitudes;
  return shannon_bits(c[0] * c[0]) + shannon_bits(c[1] * c[1] + c[2] * c[2]) +
         shannon_bits(c[3] * c[3]);
}

ObservableSet observables(const SectorState& state) noexcept {
  return {.energy = state.energy,
          .berry_phase = berry_phase_closed(state),
          .entropy = entropy_closed(state),
          .photon_expectation = photon_expectation(state)};
}

}  // namespace jckerr
