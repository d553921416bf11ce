#include "jckerr/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jckerr/errors.hpp"

namespace jckerr {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSignTieTol = 1e-12;

template <std::size_t N>
void canonicalize_sign(Vec<N>& v) noexcept {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::fabs(x));
  for (std::size_t i = 0; i < N; ++i) {
    if (std::fabs(v[i]) >= peak - kSignTieTol) {
      if (v[i] < 0.0)
        for (double& x : v) x = -x;
      return;
    }
  }
}

}  // namespace

template <std::size_t N>
EigenSystem<N> eigh_symmetric(const Matrix<N>& m, double tol) {
  static_assert(N == 3 || N == 4, "eigh_symmetric supports 3x3 and 4x4 only");
  if (max_abs_asymmetry(m) > kSymmetryTol) throw NotSymmetric("matrix is not symmetric");
  if (!(tol > 0.0)) throw InvalidParams("Jacobi tolerance must be positive");

  Matrix<N> a = m;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) a(j, i) = a(i, j);
  Matrix<N> v = Matrix<N>::identity();
  const double threshold = tol * frobenius_norm(m);

  const auto converged = [&] {
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q)
        if (std::fabs(a(p, q)) > threshold) return false;
    return true;
  };

  int sweep = 0;
  for (; sweep < kJacobiSweepBudget && !converged(); ++sweep) {
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t r = 0; r < N; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;

        for (std::size_t r = 0; r < N; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged()) throw NoConvergence("Jacobi did not converge within the sweep budget");

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EigenSystem<N> es;
  for (std::size_t j = 0; j < N; ++j) {
    es.values[j] = a(order[j], order[j]);
    for (std::size_t r = 0; r < N; ++r) es.vectors[j][r] = v(r, order[j]);
    canonicalize_sign(es.vectors[j]);
  }
  return es;
}

template EigenSystem<3> eigh_symmetric<3>(const Matrix<3>&, double);
template EigenSystem<4> eigh_symmetric<4>(const Matrix<4>&, double);

SectorState eigen_state(const EigenSystem<4>& es, Sector sector, std::size_t index) {
  SectorState state{.amplitudes = es.vectors.at(index), .energy = es.values[index], .sector = sector};
  const double norm = std::sqrt(dot(state.amplitudes, state.amplitudes));
  for (double& c : state.amplitudes) c /= norm;
  return state;
}

SectorState ground_state(const EigenSystem<4>& es, Sector sector, double gap_tol) {
  const double gap = es.values[1] - es.values[0];
  if (gap < gap_tol) throw DegenerateGround(gap);
  return eigen_state(es, sector, 0);
}

SymmetricReduction symmetric_reduce(const SectorBlock& block) {
  const auto& h = block.entries;
  SymmetricReduction out;
  auto& s = out.symmetric;
  s(0, 0) = h(0, 0);
  s(1, 1) = h(1, 1) + h(1, 2);
  s(2, 2) = h(3, 3);
  s(0, 1) = s(1, 0) = std::sqrt(2.0) * h(0, 1);
  s(1, 2) = s(2, 1) = std::sqrt(2.0) * h(1, 3);
  out.antisym_energy = h(1, 1) - h(1, 2);
  return out;
}

Vec<4> reduced_spectrum(const SectorBlock& block) {
  const auto reduced = symmetric_reduce(block);
  const auto es = eigh_symmetric(reduced.symmetric);
  Vec<4> values{es.values[0], es.values[1], es.values[2], reduced.antisym_energy};
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace jckerr
