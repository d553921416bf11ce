#pragma once

#include <cmath>
#include <utility>

namespace jckerr {

struct ScalarExtremum {
  double x = 0.0;
  double value = 0.0;
  /// Final bracket; the extremum lies inside when f is unimodal on [a, b].
  double lo = 0.0;
  double hi = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [a, b], stopping
/// once the bracket is narrower than tol.
template <class F>
ScalarExtremum golden_section_maximize(F&& f, double a, double b, double tol,
                                       int max_iter = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (b < a) std::swap(a, b);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  ScalarExtremum out{.x = f1 >= f2 ? x1 : x2, .value = 0.0, .lo = a, .hi = b};
  out.value = f1 >= f2 ? f1 : f2;
  return out;
}

template <class F>
ScalarExtremum golden_section_minimize(F&& f, double a, double b, double tol,
                                       int max_iter = 500) {
  auto r = golden_section_maximize([&](double x) { return -f(x); }, a, b, tol, max_iter);
  r.value = -r.value;
  return r;
}

/// Bisection for a sign change of g on [a, b]; g(a) and g(b) must differ in sign.
template <class G>
double bisect_root(G&& g, double a, double b, int max_iter = 200) {
  double ga = g(a);
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (ga > 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace jckerr
