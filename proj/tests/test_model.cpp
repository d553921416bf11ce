#include <cmath>

#include "doctest.h"
#include "jckerr/errors.hpp"
#include "jckerr/model.hpp"
#include "jckerr/rng.hpp"

using namespace jckerr;

namespace {

ModelParams params(double delta, double eps, double chi = 1.0) {
  ModelParams p;
  p.delta = delta;
  p.epsilon = eps;
  p.chi = chi;
  return p;
}

void check_matrix(const Matrix<4>& got, const double (&want)[4][4], double tol = 1e-15) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(got(i, j) == doctest::Approx(want[i][j]).epsilon(tol));
}

}  // namespace

TEST_CASE("build_block substitutes the sector entries") {
  const double r2 = std::sqrt(2.0);
  SUBCASE("corrected n=0") {
    const auto b = build_block(params(2, 1), Sector{0}, BlockMode::corrected);
    const double want[4][4] = {{0, 1, 1, 0}, {1, -1, 0, r2}, {1, 0, -1, r2}, {0, r2, r2, 0}};
    check_matrix(b.entries, want);
    CHECK(b.sector.k() == 2);
  }
  SUBCASE("printed n=1") {
    const auto b = build_block(params(0, 2), Sector{1}, BlockMode::printed);
    const double g1 = 2 * std::sqrt(2.0), g2 = 2 * std::sqrt(3.0);
    const double want[4][4] = {{-4, g1, g1, 0}, {g1, -1, 0, g2}, {g1, 0, -1, g2}, {0, g2, g2, -4}};
    check_matrix(b.entries, want);
  }
  SUBCASE("zero coupling is diagonal") {
    const auto b = build_block(params(5, 0), Sector{0}, BlockMode::corrected);
    CHECK(b.entries == Matrix<4>::diagonal({3, -1, -1, -3}));
  }
}

TEST_CASE("build_block validates parameters") {
  CHECK_THROWS_AS(build_block(params(0, -1), Sector{0}), InvalidParams);
  CHECK_THROWS_AS(build_block(params(0, 1, 0), Sector{0}), InvalidParams);
  CHECK_THROWS_AS(build_block(params(0, 1), Sector{-1}), InvalidParams);
  auto p = params(1.0, 1.0);
  p.omega_f = 1.0;
  p.omega_0 = 3.0;
  CHECK_THROWS_AS(p.validate(), InvalidParams);
  CHECK_THROWS_AS(parse_block_mode("typo"), InvalidParams);
  CHECK(parse_block_mode("printed") == BlockMode::printed);
}

TEST_CASE("block structure holds for random parameters") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(0, 40);
    const auto p = params(rng.uniform(-10, 90), rng.uniform(0, 3), rng.uniform(0.2, 3));
    const auto c = build_block(p, Sector{n}, BlockMode::corrected).entries;
    const auto pr = build_block(p, Sector{n}, BlockMode::printed).entries;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(c(i, j) == c(j, i));
        if (i != 3 || j != 3) CHECK(c(i, j) == pr(i, j));
      }
    CHECK(pr(3, 3) - c(3, 3) == doctest::Approx(2 * (p.delta - p.chi * (2 * n + 2))));
    CHECK(c(0, 3) == 0.0);
    CHECK(c(1, 2) == 0.0);
    CHECK(c(0, 1) == c(0, 2));
    CHECK(c(1, 3) == c(2, 3));
    // exchange 2 <-> 3
    const int perm[4] = {0, 2, 1, 3};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(c(perm[i], perm[j]) == c(i, j));
        CHECK(pr(perm[i], perm[j]) == pr(i, j));
      }
  }
}

TEST_CASE("sector basis enumerates K ascending with truncated low sectors") {
  const auto basis = sector_basis(2);
  REQUIRE(basis.size() == 8);
  const int expected_k[] = {0, 1, 1, 1, 2, 2, 2, 2};
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i].excitation() == expected_k[i]);
  CHECK(basis[4] == BasisLabel{0, AtomLevel::excited, AtomLevel::excited});
  CHECK(basis[7] == BasisLabel{2, AtomLevel::ground, AtomLevel::ground});
  CHECK(sector_basis(8).size() == 1 + 3 + 4 * 7);
  CHECK_THROWS_AS(sector_basis(1), InvalidTruncation);
}

TEST_CASE("full Hamiltonian") {
  SUBCASE("free Hamiltonian is diagonal") {
    const auto p = ModelParams::from_frequencies(1.3, 2.1, 0.0, 0.7);
    const auto h = build_full_hamiltonian(p, 4);
    for (std::size_t i = 0; i < h.dim(); ++i) {
      const auto& s = h.basis_labels()[i];
      const double m = s.photons;
      const double sz = (s.atom1 == AtomLevel::excited ? 1 : -1) + (s.atom2 == AtomLevel::excited ? 1 : -1);
      CHECK(h(i, i) == doctest::Approx(1.3 * m + 0.5 * 2.1 * sz + 0.7 * m * m));
      for (std::size_t j = 0; j < h.dim(); ++j)
        if (i != j) CHECK(h(i, j) == 0.0);
    }
  }
  SUBCASE("requires frequencies and a full sector") {
    CHECK_THROWS_AS(build_full_hamiltonian(params(1, 1), 4), InvalidParams);
    CHECK_THROWS_AS(build_full_hamiltonian(ModelParams::from_frequencies(1, 1, 1), 1),
                    InvalidTruncation);
  }
  SUBCASE("interaction matrix element") {
    const auto p = ModelParams::from_frequencies(1, 1, 0.5);
    const auto h = build_full_hamiltonian(p, 3);
    const auto from = h.index_of({2, AtomLevel::ground, AtomLevel::excited});
    const auto to = h.index_of({1, AtomLevel::excited, AtomLevel::excited});
    CHECK(h(to, from) == doctest::Approx(0.5 * std::sqrt(2.0)));
    CHECK(h(from, to) == h(to, from));
  }
}

TEST_CASE("K operator and commutation") {
  const auto k = build_K_operator(5);
  for (std::size_t i = 0; i < k.dim(); ++i) {
    const auto& s = k.basis_labels()[i];
    CHECK(k(i, i) == s.excitation());
  }
  const auto ee = k.index_of({3, AtomLevel::excited, AtomLevel::excited});
  const auto gg = k.index_of({5, AtomLevel::ground, AtomLevel::ground});
  CHECK(k(ee, ee) == 5.0);
  CHECK(k(gg, gg) == 5.0);

  OperatorMatrix ident(sector_basis(5));
  for (std::size_t i = 0; i < ident.dim(); ++i) ident(i, i) = 1.0;
  const auto h = build_full_hamiltonian(ModelParams::from_frequencies(1, 2.5, 0.7), 5);
  CHECK(commutator_norm(ident, h) == 0.0);
  CHECK(commutator_norm(k, k) == 0.0);
  CHECK(commutator_norm(build_full_hamiltonian(ModelParams::from_frequencies(1, 2.5, 0.7), 6),
                        build_K_operator(6)) <= 1e-12);
  CHECK_THROWS_AS(commutator_norm(k, build_K_operator(4)), DimensionMismatch);

  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = ModelParams::from_frequencies(rng.uniform(0.1, 3), rng.uniform(0.1, 3),
                                                 rng.uniform(0, 3), rng.uniform(0.2, 2));
    CHECK(commutator_norm(build_full_hamiltonian(p, 8), build_K_operator(8)) <= 1e-12);
  }
}

TEST_CASE("sector extraction reproduces the corrected block") {
  SUBCASE("fixed point") {
    const auto p = ModelParams::from_frequencies(1, 3, 1);
    const auto ex = extract_sector_block(build_full_hamiltonian(p, 4), Sector{0}, p);
    const auto corrected = build_block(params(2, 1), Sector{0}, BlockMode::corrected).entries;
    const auto printed = build_block(params(2, 1), Sector{0}, BlockMode::printed).entries;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double shifted = ex.submatrix(i, j) - (i == j ? ex.shift : 0.0);
        CHECK(std::fabs(shifted - corrected(i, j)) <= 1e-12);
        if (i != 3 || j != 3) CHECK(std::fabs(shifted - printed(i, j)) <= 1e-12);
      }
    // (4,4) differs from the printed entry by 2(Δ − χ(2n+2)) = 0 here; use Δ=3.
    const auto p2 = ModelParams::from_frequencies(1, 4, 1);
    const auto ex2 = extract_sector_block(build_full_hamiltonian(p2, 4), Sector{0}, p2);
    const auto printed2 = build_block(params(3, 1), Sector{0}, BlockMode::printed).entries;
    CHECK(printed2(3, 3) - (ex2.submatrix(3, 3) - ex2.shift) == doctest::Approx(2.0));
  }
  SUBCASE("zero coupling diagonal") {
    const auto p = ModelParams::from_frequencies(0.8, 5.3, 0.0, 1.0);
    const auto ex = extract_sector_block(build_full_hamiltonian(p, 6), Sector{3}, p);
    const double d = p.delta - 8.0;
    const double want[] = {d, -1.0, -1.0, -d};
    for (int i = 0; i < 4; ++i) CHECK(ex.submatrix(i, i) - ex.shift == doctest::Approx(want[i]));
  }
  SUBCASE("every contained sector, random params, ω_f independent") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const double wf = rng.uniform(0.1, 4);
      const auto p = ModelParams::from_frequencies(wf, wf + rng.uniform(-3, 12), rng.uniform(0, 3),
                                                   rng.uniform(0.3, 2));
      const auto h = build_full_hamiltonian(p, 8);
      for (int n = 0; n + 2 <= 8; ++n) {
        const auto ex = extract_sector_block(h, Sector{n}, p);
        const auto c = build_block(p, Sector{n}, BlockMode::corrected).entries;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            CHECK(std::fabs(ex.submatrix(i, j) - (i == j ? ex.shift : 0.0) - c(i, j)) <= 1e-12);
      }
    }
  }
  SUBCASE("out of range") {
    const auto p = ModelParams::from_frequencies(1, 3, 1);
    CHECK_THROWS_AS(extract_sector_block(build_full_hamiltonian(p, 4), Sector{3}, p),
                    SectorOutOfRange);
  }
}
