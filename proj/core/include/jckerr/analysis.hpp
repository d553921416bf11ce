#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jckerr/eigen.hpp"
#include "jckerr/model.hpp"
#include "jckerr/observables.hpp"

namespace jckerr {

/// Closed-form characteristic curve for n = 0 (maximum of the ground energy in Δ).
double characteristic_delta_n0(double epsilon);

/// Characteristic curve for general n, with A = sqrt(n² + 3n + 2):
/// Δ = (2n+1)/2 + A − ½·sqrt(1 − 4(2n+3)A + 8A² + (12 + 8n − 8A)ε²).
/// Throws EpsilonZero for ε = 0 and OutsideCurveDomain on a negative radicand.
double characteristic_delta(int n, double epsilon);

/// Diagonalizes the sector block at (n, Δ, ε) and returns its spectrum.
EigenSystem<4> sector_spectrum(int n, double delta, double epsilon,
                               BlockMode mode = BlockMode::corrected, double chi = 1.0);

/// Non-degenerate ground state at (n, Δ, ε); throws DegenerateGround.
SectorState ground_state_at(int n, double delta, double epsilon,
                            BlockMode mode = BlockMode::corrected, double chi = 1.0);

struct ArgmaxOptions {
  /// Defaults to χ·[2n − 1, 2n + 5].
  std::optional<std::pair<double, double>> bracket;
  double tol = 1e-8;
  double chi = 1.0;
};

struct ArgmaxResult {
  double delta = 0.0;
  double energy = 0.0;
};

/// Maximizes the ground energy over Δ at fixed ε.
///
/// The endpoint slopes (Hellmann-Feynman: ⟨ψ₀|∂H/∂Δ|ψ₀⟩) must bracket an
/// interior maximum, otherwise NoInteriorMaximum is thrown. A golden-section
/// search narrows the bracket to tol; the slope's sign change inside the final
/// bracket is then bisected to machine precision.
ArgmaxResult argmax_ground_energy(int n, double epsilon, BlockMode mode = BlockMode::corrected,
                                  const ArgmaxOptions& options = {});

enum Quantity : unsigned {
  kEnergy = 1u << 0,
  kBerry = 1u << 1,
  kEntropy = 1u << 2,
  kAllEigenvalues = 1u << 3,
  kAllQuantities = kEnergy | kBerry | kEntropy | kAllEigenvalues,
};

/// Rectangular (Δ, ε) grid with inclusive endpoints.
struct SweepSpec {
  int n = 0;
  double delta_min = -2.0;
  double delta_max = 6.0;
  int delta_steps = 201;
  double eps_min = 0.0;
  double eps_max = 3.0;
  int eps_steps = 201;
  BlockMode mode = BlockMode::corrected;
  double chi = 1.0;
  unsigned quantities = kAllQuantities;

  /// Throws InvalidParams.
  void validate() const;
  double delta_at(int i) const noexcept;
  double eps_at(int j) const noexcept;
  std::size_t size() const noexcept;
};

/// One grid point. Unrequested quantities are NaN.
struct SweepRow {
  int n = 0;
  double delta = 0.0;
  double eps = 0.0;
  double chi = 1.0;
  BlockMode mode = BlockMode::corrected;
  Vec<4> eigenvalues{};
  double berry = 0.0;  ///< radians
  double entropy = 0.0;
  double photon = 0.0;
  bool degenerate = false;
};

/// Evaluates every grid point, ε-major then Δ-minor. Degenerate ground levels
/// are flagged in-row. Output does not depend on `threads`.
std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned threads = 1);

struct CrossingReport {
  int n = 0;
  double epsilon_probe = 0.0;
  std::vector<double> crossings;
  double symmetry_center = 0.0;
  double threshold = 0.0;
};

inline constexpr double kCrossingSpikeFactor = 10.0;

/// Locates kinks of the ground energy in Δ from second-difference spikes
/// (|d²| above 10× the median). Contiguous spike runs count as one crossing,
/// placed at the run's largest |d²|. Throws NoCrossingsFound.
CrossingReport detect_crossings(int n, double epsilon_probe, double delta_lo, double delta_hi,
                                int samples = 1601, double chi = 1.0);

struct CurveSample {
  int n = 0;
  double epsilon = 0.0;
  double delta_formula = 0.0;
  double delta_numeric = 0.0;
  double energy_at_max = 0.0;
  double berry_at_max = 0.0;  ///< radians
  double entropy_at_max = 0.0;
  double discrepancy = 0.0;
  /// Set when the sample failed; numeric fields are then NaN.
  std::optional<std::string> error;
};

/// Characteristic curve rows for each n over an inclusive ε grid, with the
/// numerical argmax and observables at that maximum.
std::vector<CurveSample> curve_family(const std::vector<int>& ns, double eps_min,
                                      double eps_max, int steps,
                                      BlockMode mode = BlockMode::corrected, double chi = 1.0,
                                      unsigned threads = 1);

/// Local minima of the ground-state entropy S(Δ) on a uniform grid, each
/// refined by golden-section search.
std::vector<double> entropy_local_minima(int n, double epsilon, double delta_lo,
                                         double delta_hi, int samples = 4001,
                                         double chi = 1.0);

}  // namespace jckerr
