#pragma once

#include "jckerr/eigen.hpp"
#include "jckerr/matrix.hpp"

namespace jckerr {

/// Ground-level observables at one (n, Δ, ε) point.
struct ObservableSet {
  double energy = 0.0;
  double berry_phase = 0.0;  ///< radians
  double entropy = 0.0;      ///< bits
  double photon_expectation = 0.0;
};

/// Two-atom reduced density operator on [|ee>, |eg>, |ge>, |gg>].
struct DensityMatrix {
  Matrix<4> entries;
};

/// Discretized closed loop φ_k = 2πk/steps, k = 0..steps.
struct HolonomyLoop {
  int steps = 4096;

  double phase_at(int k) const noexcept;
};

/// Photon numbers carried by the four sector basis states.
Vec<4> sector_photon_numbers(Sector sector) noexcept;

/// ⟨a†a⟩ in a sector state.
double photon_expectation(const SectorState& state) noexcept;

/// Closed-form geometric phase 2π⟨a†a⟩ for the photon-number phase loop.
double berry_phase_closed(const SectorState& state) noexcept;

/// Geometric phase from discrete overlaps along the phase-shift loop.
///
/// Transports the state with exp(−iφ a†a), sums arg⟨ψ(φ_k)|ψ(φ_{k+1})⟩ without
/// wrapping and returns the negated total, so multiples of 2π survive.
/// Throws LoopTooCoarse if steps < 8 or if the fastest component advances by
/// π or more per step (increments would alias).
double berry_phase_holonomy(const SectorState& state, const HolonomyLoop& loop);

/// Partial trace over the field of |ψ><ψ|.
DensityMatrix reduced_density_atoms(const SectorState& state) noexcept;

/// −Σ p log₂ p over the spectrum of rho; eigenvalues below 1e-14 count as 0.
/// Throws NotDensityMatrix when the trace or positivity is off by > 1e-10.
double von_neumann_entropy(const DensityMatrix& rho);

/// Same quantity via the three photon-number weights of a sector state.
double entropy_closed(const SectorState& state) noexcept;

ObservableSet observables(const SectorState& state) noexcept;

}  // namespace jckerr
