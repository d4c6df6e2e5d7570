#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace stacknash::roots {

struct BracketOptions {
  int max_iterations = 200;
  // Absolute floor added to the relative x-tolerance of a few ulps.
  double x_tolerance = 0.0;
};

template <class T>
struct BasicRootResult {
  T x = 0;
  T fx = 0;
  int iterations = 0;
  bool bracketed = false;
  bool converged = false;
};

using RootResult = BasicRootResult<double>;

// Root of f on [lo, hi] by bisection refined with a secant step.
//
// Keeps a sign-changing bracket [a, b] where b is the best iterate. Each step
// proposes the secant through the last two iterates and accepts it only when
// it lands strictly between b and the bracket midpoint. If the bracket has
// not halved within three consecutive steps a plain bisection is forced, so
// the worst case is no slower than bisection.
template <class F, class T>
BasicRootResult<T> find_root(F&& f, T lo, T hi, const BracketOptions& opts = {}) {
  BasicRootResult<T> r;
  T a = lo;
  T b = hi;
  T fa = f(a);
  T fb = f(b);
  if (fa == 0) return {a, fa, 0, true, true};
  if (fb == 0) return {b, fb, 0, true, true};
  if ((fa > 0) == (fb > 0) || std::isnan(fa) || std::isnan(fb)) {
    r.x = b;
    r.fx = fb;
    return r;
  }
  r.bracketed = true;

  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  T prev = a;  // previous iterate, for the secant
  T fprev = fa;
  T width_mark = std::abs(b - a);
  int stalled = 0;

  constexpr T eps = std::numeric_limits<T>::epsilon();
  for (int it = 1; it <= opts.max_iterations; ++it) {
    r.iterations = it;
    const T tol = 2 * eps * std::abs(b) + T(0.5) * T(opts.x_tolerance);
    const T mid = (a + b) / 2;
    if (std::abs(mid - b) <= tol || fb == 0) {
      r.converged = true;
      break;
    }

    T next = mid;
    if (stalled < 3 && fb != fprev) {
      const T s = b - fb * (b - prev) / (fb - fprev);
      const bool between = (s > std::min(b, mid) && s < std::max(b, mid));
      if (between) next = s;
    }
    // Never step by less than the tolerance.
    if (std::abs(next - b) < tol) next = b + (mid > b ? tol : -tol);

    const T fnext = f(next);
    prev = b;
    fprev = fb;
    if ((fnext > 0) == (fa > 0)) {
      a = b;
      fa = fb;
    }
    b = next;
    fb = fnext;
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }

    const T width = std::abs(b - a);
    if (width <= width_mark / 2) {
      width_mark = width;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
  r.x = b;
  r.fx = fb;
  return r;
}

}  // namespace stacknash::roots
