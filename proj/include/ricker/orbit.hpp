#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ricker/constant.hpp"
#include "ricker/detail/roots.hpp"
#include "ricker/error.hpp"
#include "ricker/model.hpp"
#include "ricker/periodic.hpp"
#include "ricker/stability.hpp"

namespace ricker {

inline constexpr double kOverflowGuard = 1e300;

/// x_1, ..., x_n from (x_0, x_{-1}); x_{k+1} = F_k(x_k, x_{k-1}).
inline std::vector<double> simulate(const ModelParams& params, double x0, double x_minus1, std::size_t n_steps) {
  detail::require_nonnegative(x0, x_minus1);
  if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "n_steps must be >= 1");
  std::vector<double> out;
  out.reserve(n_steps);
  double cur = x0, prev = x_minus1;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double next = cur * std::exp(params.r() - prev) + params.h(k);
    if (!(next <= kOverflowGuard)) {
      throw Error(ErrorCode::Overflow, "orbit exceeds 1e300 at step " + std::to_string(k + 1));
    }
    prev = cur;
    cur = next;
    out.push_back(cur);
  }
  return out;
}

enum class AttractorKind { Equilibrium, Cycle, InvariantCurve, Unresolved };

constexpr std::string_view to_string(AttractorKind k) noexcept {
  switch (k) {
    case AttractorKind::Equilibrium: return "Equilibrium";
    case AttractorKind::Cycle: return "Cycle";
    case AttractorKind::InvariantCurve: return "InvariantCurve";
    case AttractorKind::Unresolved: return "Unresolved";
  }
  return "Unknown";
}

struct OrbitResult {
  std::vector<PlanarPoint> samples;  // (x_n, x_{n-1}) over the window
  AttractorKind attractor = AttractorKind::Unresolved;
  double value = 0.0;          // Equilibrium
  std::size_t period = 0;      // Cycle
  std::vector<double> points;  // Cycle, in orbit order from an even index
  std::size_t transient_used = 0;
  double tolerance = 0.0;
};

struct ClassifyOptions {
  std::size_t transient = 10'000;
  std::size_t window = 4096;
  double tol = 1e-6;
  std::size_t max_period = 64;
};

namespace detail {

/// Whether the nearest equilibrium or 2-cycle has a complex pair outside
/// the unit circle.
inline bool local_complex_unstable(const ModelParams& params) {
  try {
    if (params.is_constant()) {
      const auto eq = solve_equilibrium(params);
      return eq.eigenvalues.is_complex() && eq.det > 1.0;
    }
    if (params.period() == 2) {
      const auto tc = solve_two_cycle(params);
      return tc.eigenvalues.is_complex() && tc.det > 1.0;
    }
  } catch (const Error&) {
  }
  return false;
}

}  // namespace detail

inline OrbitResult classify_attractor(const ModelParams& params, double x0, double x_minus1,
                                      const ClassifyOptions& opt = {}) {
  if (opt.window < 2 * opt.max_period) {
    throw Error(ErrorCode::InvalidArgument, "window must be at least twice max_period");
  }
  // keep the window phase-aligned with the stocking schedule
  const std::size_t p = params.period();
  const std::size_t transient = (opt.transient + p - 1) / p * p;
  const std::size_t total = transient + opt.window + opt.max_period;
  const std::vector<double> orbit = simulate(params, x0, x_minus1, total);
  // orbit[k] = x_{k+1}
  OrbitResult res;
  res.transient_used = transient;
  res.tolerance = opt.tol;
  const std::size_t first = transient;  // index of x_{transient+1}
  for (std::size_t i = first; i < first + opt.window; ++i) res.samples.push_back({orbit[i], orbit[i - 1]});

  const auto [lo_it, hi_it] = std::minmax_element(orbit.begin() + first, orbit.begin() + first + opt.window);
  if (*hi_it - *lo_it < opt.tol) {
    res.attractor = AttractorKind::Equilibrium;
    res.value = 0.5 * (*lo_it + *hi_it);
    return res;
  }
  for (std::size_t k = 1; k <= opt.max_period; ++k) {
    bool cyclic = true;
    for (std::size_t i = first; i < first + opt.window && cyclic; ++i) cyclic = std::abs(orbit[i + k] - orbit[i]) < opt.tol;
    if (!cyclic) continue;
    res.attractor = AttractorKind::Cycle;
    res.period = k;
    // x_{transient+1} has odd index when transient is even; start the list at an even index
    const std::size_t start = first + 1;
    res.points.assign(orbit.begin() + start, orbit.begin() + start + k);
    return res;
  }
  res.attractor = detail::local_complex_unstable(params) ? AttractorKind::InvariantCurve : AttractorKind::Unresolved;
  return res;
}

struct NSCrossing {
  double s_lo{};
  double s_hi{};
  double s{};
  double modulus{};
  double argument{};
};

using ParamsFamily = std::function<ModelParams(double)>;

namespace detail {

/// Trace and determinant of the linearization at the family's equilibrium
/// (period 1) or 2-cycle (period 2).
inline std::pair<double, double> family_trace_det(const ModelParams& params) {
  if (params.is_constant()) {
    const auto eq = solve_equilibrium(params);
    return {eq.trace, eq.det};
  }
  const auto tc = solve_two_cycle(params);
  return {tc.trace, tc.det};
}

}  // namespace detail

/// Scans s over [lo, hi] for a complex eigenvalue pair crossing the unit
/// circle (det = 1 while complex) and refines by bisection to 1e-8 in s.
inline NSCrossing neimark_sacker_scan(const ParamsFamily& family, double lo, double hi, int steps = 200) {
  if (!(lo < hi) || steps < 1) throw Error(ErrorCode::InvalidArgument, "scan needs lo < hi and steps >= 1");
  auto probe = [&](double s) {
    const auto [tr, det] = detail::family_trace_det(family(s));
    return std::make_pair(EigenPair::from_trace_det(tr, det), det - 1.0);
  };
  double prev_s = lo;
  auto [prev_eig, prev_gap] = probe(lo);
  for (int k = 1; k <= steps; ++k) {
    const double s = lo + (hi - lo) * k / steps;
    const auto [eig, gap] = probe(s);
    if (prev_eig.is_complex() && eig.is_complex() && (gap >= 0.0) != (prev_gap >= 0.0)) {
      double a = prev_s, b = s, ga = prev_gap;
      while (b - a > 1e-8) {
        const double m = 0.5 * (a + b);
        const double gm = probe(m).second;
        if ((gm >= 0.0) == (ga >= 0.0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      NSCrossing c;
      c.s_lo = a;
      c.s_hi = b;
      c.s = 0.5 * (a + b);
      const auto at = probe(c.s).first;
      c.modulus = std::abs(at.first);
      c.argument = std::abs(std::arg(at.first));
      return c;
    }
    prev_s = s;
    prev_eig = eig;
    prev_gap = gap;
  }
  throw Error(ErrorCode::NoCrossing, "complex pair modulus does not cross 1 on the range");
}

}  // namespace ricker
