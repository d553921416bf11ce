#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace jckerr {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Fixed-size dense square matrix, row-major.
template <std::size_t N>
struct Matrix {
  std::array<double, N * N> data{};

  static constexpr std::size_t size() noexcept { return N; }

  constexpr double& operator()(std::size_t i, std::size_t j) noexcept { return data[i * N + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const noexcept { return data[i * N + j]; }

  static constexpr Matrix identity() noexcept {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const Vec<N>& d) noexcept {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  friend constexpr bool operator==(const Matrix&, const Matrix&) = default;
};

template <std::size_t N>
Vec<N> operator*(const Matrix<N>& m, const Vec<N>& v) noexcept {
  Vec<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

template <std::size_t N>
double dot(const Vec<N>& a, const Vec<N>& b) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) acc += a[i] * b[i];
  return acc;
}

template <std::size_t N>
double frobenius_norm(const Matrix<N>& m) noexcept {
  double acc = 0.0;
  for (double x : m.data) acc += x * x;
  return std::sqrt(acc);
}

template <std::size_t N>
double max_abs_asymmetry(const Matrix<N>& m) noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) worst = std::fmax(worst, std::fabs(m(i, j) - m(j, i)));
  return worst;
}

}  // namespace jckerr
