#pragma once

#include <cstddef>

#include "jckerr/matrix.hpp"
#include "jckerr/model.hpp"

namespace jckerr {

/// Ascending eigenvalues with orthonormal eigenvectors.
///
/// `vectors[j]` pairs with `values[j]`. In every eigenvector the component of
/// largest magnitude is positive (lowest index wins near-ties), which makes
/// results bit-reproducible.
template <std::size_t N>
struct EigenSystem {
  Vec<N> values{};
  std::array<Vec<N>, N> vectors{};
};

inline constexpr double kDefaultJacobiTol = 1e-15;
inline constexpr int kJacobiSweepBudget = 50;
inline constexpr double kDefaultGapTol = 1e-9;

/// Cyclic Jacobi eigendecomposition of a real symmetric 3x3 or 4x4 matrix.
///
/// Sweeps until every off-diagonal magnitude is <= tol·‖m‖_F. Throws
/// NotSymmetric if |m_ij − m_ji| > 1e-12 and NoConvergence after 50 sweeps.
template <std::size_t N>
EigenSystem<N> eigh_symmetric(const Matrix<N>& m, double tol = kDefaultJacobiTol);

extern template EigenSystem<3> eigh_symmetric<3>(const Matrix<3>&, double);
extern template EigenSystem<4> eigh_symmetric<4>(const Matrix<4>&, double);

/// Normalized eigenvector of a sector block with its eigenvalue.
struct SectorState {
  Vec<4> amplitudes{};
  double energy = 0.0;
  Sector sector;
};

/// Lowest eigenpair; throws DegenerateGround if λ₁ − λ₀ < gap_tol.
SectorState ground_state(const EigenSystem<4>& es, Sector sector,
                         double gap_tol = kDefaultGapTol);

/// Eigenpair `index` without the degeneracy check.
SectorState eigen_state(const EigenSystem<4>& es, Sector sector, std::size_t index);

struct SymmetricReduction {
  /// Basis [|n,ee>, (|n+1,eg> + |n+1,ge>)/√2, |n+2,gg>].
  Matrix<3> symmetric;
  /// Eigenvalue of the exchange-odd state (|n+1,eg> − |n+1,ge>)/√2.
  double antisym_energy = 0.0;
};

/// Splits a sector block along the atom-exchange symmetry.
SymmetricReduction symmetric_reduce(const SectorBlock& block);

/// Eigenvalues of the block assembled from the reduction: the 3x3 symmetric
/// spectrum merged with the antisymmetric level, ascending.
Vec<4> reduced_spectrum(const SectorBlock& block);

}  // namespace jckerr
