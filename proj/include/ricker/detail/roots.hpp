#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "ricker/model.hpp"
#include "ricker/stability.hpp"

namespace ricker::detail {

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign. Stops when
/// the bracket is narrower than xtol or cannot be split further.
template <class Fn>
double bisect(Fn&& fn, double lo, double hi, double flo, double xtol, int max_iter = 400) {
  double fhi = fn(hi);
  for (int i = 0; i < max_iter; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= xtol || mid <= lo || mid >= hi) break;
    const double fmid = fn(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

struct Newton2Result {
  PlanarPoint point;
  double residual;
  bool converged;
};

/// Damped Newton for a 2D system. `system(p)` returns the residual as a
/// PlanarPoint, `jacobian(p)` the 2x2 Jacobian. Steps are halved until the
/// residual decreases and the iterate stays inside `domain`.
template <class System, class Jacobian, class Domain>
Newton2Result newton2(System&& system, Jacobian&& jacobian, Domain&& domain, PlanarPoint start,
                      double ftol = 1e-13, int max_iter = 100) {
  auto norm = [](const PlanarPoint& v) { return std::max(std::abs(v.x), std::abs(v.y)); };
  PlanarPoint p = start;
  if (!domain(p)) return {p, HUGE_VAL, false};
  PlanarPoint res = system(p);
  double rn = norm(res);
  for (int it = 0; it < max_iter && std::isfinite(rn); ++it) {
    if (rn <= ftol) return {p, rn, true};
    const Mat2 j = jacobian(p);
    const double det = j.det();
    if (det == 0.0 || !std::isfinite(det)) break;
    const PlanarPoint delta{(-res.x * j.d + res.y * j.b) / det, (-res.y * j.a + res.x * j.c) / det};
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      const PlanarPoint trial{p.x + lambda * delta.x, p.y + lambda * delta.y};
      if (!domain(trial)) continue;
      const PlanarPoint tres = system(trial);
      const double tn = norm(tres);
      if (std::isfinite(tn) && tn < rn) {
        p = trial;
        res = tres;
        rn = tn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {p, rn, rn <= ftol};
}

}  // namespace ricker::detail
