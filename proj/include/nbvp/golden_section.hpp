#pragma once

#include <cmath>

namespace nbvp {

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [a, b], run until
/// the bracket is narrower than `tol`. The endpoints are compared against the
/// interior estimate at the end, so maxima sitting on a or b are returned
/// exactly; ties go to the larger abscissa.
template <class F>
Extremum golden_section_max(F&& f, double a, double b, double tol = 1e-10) {
  const double lo_end = a;
  const double hi_end = b;
  constexpr double inv_phi = 0.6180339887498948482;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
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
  Extremum best = f1 > f2 ? Extremum{x1, f1} : Extremum{x2, f2};
  const double fa = f(lo_end);
  const double fb = f(hi_end);
  if (fa > best.value) best = {lo_end, fa};
  if (fb >= best.value) best = {hi_end, fb};
  return best;
}

}  // namespace nbvp
