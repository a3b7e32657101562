#pragma once

#include <cmath>
#include <utility>

namespace cfdim {

struct BisectResult {
  double root = 0.0;
  double bracket_width = 0.0;
  bool boundary_low = false;   // f(lo) <= 0 already: root clamped to lo
  bool boundary_high = false;  // f(hi) >= 0 still: root clamped to hi
  int iterations = 0;
};

// Root of a (weakly) decreasing function on [lo, hi] by bisection. Expects
// f(lo) >= 0 >= f(hi); boundary ties are reported, never silently inverted.
template <class F>
BisectResult bisect_decreasing(F&& f, double lo, double hi, double tol, int max_iter = 80) {
  BisectResult r;
  const double flo = f(lo);
  if (flo <= 0.0) {
    r.root = lo;
    r.boundary_low = true;
    return r;
  }
  const double fhi = f(hi);
  if (fhi >= 0.0) {
    r.root = hi;
    r.boundary_high = true;
    return r;
  }
  double a = lo, b = hi;
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm >= 0.0) a = mid; else b = mid;
    ++r.iterations;
  }
  r.root = 0.5 * (a + b);
  r.bracket_width = b - a;
  return r;
}

}  // namespace cfdim
