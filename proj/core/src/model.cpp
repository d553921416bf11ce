#include "jckerr/model.hpp"

#include <algorithm>
#include <cmath>

#include "jckerr/errors.hpp"

namespace jckerr {

namespace {

int sign_of(AtomLevel level) noexcept { return level == AtomLevel::excited ? 1 : -1; }

void require_truncation(int k_max) {
  if (k_max < 2)
    throw InvalidTruncation("k_max must be >= 2 (got " + std::to_string(k_max) + ")");
}

// Sector-local basis with negative photon numbers dropped.
std::vector<BasisLabel> sector_states(int k) {
  const int n = k - 2;
  const BasisLabel candidates[] = {
      {n, AtomLevel::excited, AtomLevel::excited},
      {n + 1, AtomLevel::excited, AtomLevel::ground},
      {n + 1, AtomLevel::ground, AtomLevel::excited},
      {n + 2, AtomLevel::ground, AtomLevel::ground},
  };
  std::vector<BasisLabel> out;
  for (const auto& label : candidates)
    if (label.photons >= 0) out.push_back(label);
  return out;
}

}  // namespace

void ModelParams::validate() const {
  if (!std::isfinite(delta) || !std::isfinite(epsilon) || !std::isfinite(chi))
    throw InvalidParams("model parameters must be finite");
  if (!(chi > 0.0)) throw InvalidParams("chi must be positive");
  if (epsilon < 0.0) throw InvalidParams("epsilon must be non-negative");
  if (omega_f && omega_0 && delta != *omega_0 - *omega_f)
    throw InvalidParams("delta must equal omega_0 - omega_f");
}

ModelParams ModelParams::from_frequencies(double omega_f, double omega_0, double epsilon,
                                          double chi) {
  ModelParams p;
  p.delta = omega_0 - omega_f;
  p.epsilon = epsilon;
  p.chi = chi;
  p.omega_f = omega_f;
  p.omega_0 = omega_0;
  p.validate();
  return p;
}

std::string_view to_string(BlockMode mode) noexcept {
  return mode == BlockMode::corrected ? "corrected" : "printed";
}

BlockMode parse_block_mode(std::string_view text) {
  if (text == "corrected") return BlockMode::corrected;
  if (text == "printed") return BlockMode::printed;
  throw InvalidParams("unknown block mode '" + std::string(text) + "'");
}

SectorBlock build_block(const ModelParams& params, Sector sector, BlockMode mode) {
  params.validate();
  if (sector.n < 0) throw InvalidParams("sector photon index must be >= 0");

  const double n = sector.n;
  const double detuned = params.delta - params.chi * (2.0 * n + 2.0);
  const double g1 = params.epsilon * std::sqrt(n + 1.0);
  const double g2 = params.epsilon * std::sqrt(n + 2.0);

  SectorBlock block{.entries = {}, .sector = sector, .mode = mode, .params = params};
  auto& h = block.entries;
  h(0, 0) = detuned;
  h(1, 1) = -params.chi;
  h(2, 2) = -params.chi;
  h(3, 3) = mode == BlockMode::corrected ? 0.0 - detuned : detuned;
  h(0, 1) = h(1, 0) = g1;
  h(0, 2) = h(2, 0) = g1;
  h(1, 3) = h(3, 1) = g2;
  h(2, 3) = h(3, 2) = g2;
  return block;
}

Vec<4> block_delta_derivative(BlockMode mode) noexcept {
  return {1.0, 0.0, 0.0, mode == BlockMode::corrected ? -1.0 : 1.0};
}

int BasisLabel::excitation() const noexcept {
  return photons + 1 + (sign_of(atom1) + sign_of(atom2)) / 2;
}

OperatorMatrix::OperatorMatrix(std::vector<BasisLabel> labels)
    : labels_(std::move(labels)), entries_(labels_.size() * labels_.size(), 0.0) {}

std::size_t OperatorMatrix::index_of(const BasisLabel& label) const noexcept {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? npos : static_cast<std::size_t>(it - labels_.begin());
}

std::vector<BasisLabel> sector_basis(int k_max) {
  require_truncation(k_max);
  std::vector<BasisLabel> basis;
  for (int k = 0; k <= k_max; ++k) {
    auto states = sector_states(k);
    basis.insert(basis.end(), states.begin(), states.end());
  }
  return basis;
}

OperatorMatrix build_full_hamiltonian(const ModelParams& params, int k_max) {
  require_truncation(k_max);
  if (!params.omega_f || !params.omega_0)
    throw InvalidParams("full Hamiltonian needs omega_f and omega_0");
  params.validate();

  const double wf = *params.omega_f;
  const double w0 = *params.omega_0;
  OperatorMatrix h(sector_basis(k_max));
  const auto& basis = h.basis_labels();

  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& s = basis[i];
    const double m = s.photons;
    h(i, i) = wf * m + 0.5 * w0 * (sign_of(s.atom1) + sign_of(s.atom2)) + params.chi * m * m;
  }

  // a σ+^j: |m, g_j> -> sqrt(m) |m-1, e_j>, plus the Hermitian conjugate.
  // Both states stay inside the truncation because K is conserved.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& s = basis[i];
    if (s.photons == 0) continue;
    for (int atom = 0; atom < 2; ++atom) {
      const AtomLevel level = atom == 0 ? s.atom1 : s.atom2;
      if (level != AtomLevel::ground) continue;
      BasisLabel target = s;
      target.photons -= 1;
      (atom == 0 ? target.atom1 : target.atom2) = AtomLevel::excited;
      const std::size_t j = h.index_of(target);
      const double amp = params.epsilon * std::sqrt(static_cast<double>(s.photons));
      h(j, i) = amp;
      h(i, j) = amp;
    }
  }
  return h;
}

OperatorMatrix build_K_operator(int k_max) {
  OperatorMatrix k(sector_basis(k_max));
  for (std::size_t i = 0; i < k.dim(); ++i) k(i, i) = k.basis_labels()[i].excitation();
  return k;
}

double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim() || a.basis_labels() != b.basis_labels())
    throw DimensionMismatch("commutator operands must share a basis");
  const std::size_t d = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < d; ++l) acc += a(i, l) * b(l, j) - b(i, l) * a(l, j);
      worst = std::max(worst, std::fabs(acc));
    }
  }
  return worst;
}

ExtractedBlock extract_sector_block(const OperatorMatrix& h, Sector sector,
                                    const ModelParams& params) {
  if (sector.n < 0) throw SectorOutOfRange("sector photon index must be >= 0");
  if (!params.omega_f) throw InvalidParams("sector shift needs omega_f");

  const auto states = sector_states(sector.k());
  std::array<std::size_t, 4> rows{};
  for (std::size_t i = 0; i < 4; ++i) {
    rows[i] = h.index_of(states[i]);
    if (rows[i] == OperatorMatrix::npos)
      throw SectorOutOfRange("sector K=" + std::to_string(sector.k()) +
                             " is not contained in the truncation");
  }

  ExtractedBlock out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out.submatrix(i, j) = h(rows[i], rows[j]);
  const double n1 = sector.n + 1.0;
  out.shift = *params.omega_f * n1 + params.chi * n1 * n1 + params.chi;
  return out;
}

}  // namespace jckerr
