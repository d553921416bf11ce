#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jckerr/matrix.hpp"

namespace jckerr {

/// Physical parameters of the two-atom Kerr Jaynes-Cummings model.
///
/// All energies are in units of the Kerr coupling `chi`. `omega_f` and
/// `omega_0` are only required when the full truncated Hamiltonian is built;
/// when both are set, `delta` must equal `omega_0 - omega_f`.
struct ModelParams {
  double delta = 0.0;
  double epsilon = 0.0;
  double chi = 1.0;
  std::optional<double> omega_f;
  std::optional<double> omega_0;

  /// Throws InvalidParams when an invariant is violated.
  void validate() const;

  /// Parameters with `delta` derived from the two bare frequencies.
  static ModelParams from_frequencies(double omega_f, double omega_0, double epsilon,
                                      double chi = 1.0);
};

/// Conserved-quantity sector K = n + 2, n >= 0.
struct Sector {
  int n = 0;

  constexpr int k() const noexcept { return n + 2; }
  friend constexpr bool operator==(Sector, Sector) = default;
};

/// Which (4,4) entry the sector block carries.
///
/// `printed` keeps Δ − χ(2n+2), identical to entry (1,1). `corrected` uses
/// −Δ + χ(2n+2), the value the full Hamiltonian produces after the sector
/// energy shift.
enum class BlockMode { corrected, printed };

std::string_view to_string(BlockMode mode) noexcept;
/// Throws InvalidParams for anything but "corrected" / "printed".
BlockMode parse_block_mode(std::string_view text);

/// 4x4 real symmetric Hamiltonian restricted to one sector, in basis order
/// [|n,e,e>, |n+1,e,g>, |n+1,g,e>, |n+2,g,g>].
struct SectorBlock {
  Matrix<4> entries;
  Sector sector;
  BlockMode mode = BlockMode::corrected;
  ModelParams params;
};

SectorBlock build_block(const ModelParams& params, Sector sector,
                        BlockMode mode = BlockMode::corrected);

/// dH/dΔ of the sector block: diag(1, 0, 0, -1) corrected, diag(1, 0, 0, 1) printed.
Vec<4> block_delta_derivative(BlockMode mode) noexcept;

enum class AtomLevel { excited, ground };

struct BasisLabel {
  int photons = 0;
  AtomLevel atom1 = AtomLevel::ground;
  AtomLevel atom2 = AtomLevel::ground;

  /// Eigenvalue of K = a†a + 1 + (σz¹ + σz²)/2.
  int excitation() const noexcept;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Dense operator on the sector-enumerated truncated space K = 0 .. k_max.
/// Sectors K = 0 and K = 1 carry 1 and 3 states; every other sector 4.
class OperatorMatrix {
public:
  OperatorMatrix(std::vector<BasisLabel> labels);

  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<BasisLabel>& basis_labels() const noexcept { return labels_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * dim() + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * dim() + j]; }

  /// Row index of a basis state, or npos.
  std::size_t index_of(const BasisLabel& label) const noexcept;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  std::vector<BasisLabel> labels_;
  std::vector<double> entries_;
};

/// Basis of K = 0 .. k_max in ascending K, fixed intra-sector order.
std::vector<BasisLabel> sector_basis(int k_max);

/// Full Hamiltonian (free field + atoms + Kerr + RWA coupling). Requires
/// omega_f and omega_0 in params and k_max >= 2.
OperatorMatrix build_full_hamiltonian(const ModelParams& params, int k_max);

/// Diagonal conserved quantity K on the same basis.
OperatorMatrix build_K_operator(int k_max);

/// max |(ab - ba)_ij|. Throws DimensionMismatch if the bases differ.
double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b);

struct ExtractedBlock {
  Matrix<4> submatrix;
  /// Per-sector energy offset; submatrix − shift·I is the corrected block.
  double shift = 0.0;
};

/// Pulls the K = n+2 rows/columns out of a full Hamiltonian. The shift is
/// ω_f(n+1) + χ(n+1)² + χ, which needs the frequencies stored in `params`.
ExtractedBlock extract_sector_block(const OperatorMatrix& h, Sector sector,
                                    const ModelParams& params);

}  // namespace jckerr
