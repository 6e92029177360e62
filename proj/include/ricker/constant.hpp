#pragma once

// Constant stocking, y_{n+1} = y_n exp(r - y_{n-1}) + h.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ricker/detail/roots.hpp"
#include "ricker/embedding.hpp"
#include "ricker/error.hpp"
#include "ricker/model.hpp"
#include "ricker/stability.hpp"
#include "ricker/verdict.hpp"

namespace ricker {

struct EquilibriumReport {
  double y_bar{};
  double trace{};  // 1 - h / y_bar
  double det{};    // y_bar - h
  EigenPair eigenvalues{};
  LocalVerdict local_verdict = LocalVerdict::LAS;
  double residual{};
};

struct ThresholdSet {
  double r1{};
  double H_star{};
  double r2{};
};

namespace detail {

inline double require_constant_h(const ModelParams& params) {
  if (!params.is_constant()) {
    throw Error(ErrorCode::InvalidArgument, "constant-stocking analysis needs period 1");
  }
  return params.h();
}

inline double equilibrium_residual(double y, double r, double h) { return y - y * std::exp(r - y) - h; }

}  // namespace detail

/// Jacobian of T at (y, y): [[1 - h/y, -(y - h)], [1, 0]].
inline Mat2 jacobian_at_equilibrium(double y_bar, double h) noexcept {
  return {1.0 - h / y_bar, -(y_bar - h), 1.0, 0.0};
}

inline EquilibriumReport solve_equilibrium(const ModelParams& params) {
  const double h = detail::require_constant_h(params);
  const double r = params.r();
  double y = r;  // h = 0: the positive equilibrium is r itself
  if (h > 0.0) {
    auto g = [&](double t) { return detail::equilibrium_residual(t, r, h); };
    const double lo = std::max(r, h);
    const double hi = h + std::exp(r - 1.0) + 1.0;
    const double glo = g(lo);
    if (!(glo < 0.0) || !(g(hi) > 0.0)) {
      throw Error(ErrorCode::BracketFailure, "equilibrium bracket has no sign change");
    }
    y = detail::bisect(g, lo, hi, glo, 1e-14 * hi);
    // one Newton polish, kept only if it helps
    const double dg = 1.0 + (y - 1.0) * std::exp(r - y);
    if (dg != 0.0) {
      const double polished = y - g(y) / dg;
      if (polished > lo && std::abs(g(polished)) < std::abs(g(y))) y = polished;
    }
  }
  EquilibriumReport rep;
  rep.y_bar = y;
  rep.trace = 1.0 - h / y;
  rep.det = y - h;
  rep.eigenvalues = EigenPair::from_trace_det(rep.trace, rep.det);
  rep.residual = std::abs(detail::equilibrium_residual(y, r, h));
  const double margin = (1.0 + h) - y;
  if (std::abs(margin) < 1e-10) {
    rep.local_verdict = LocalVerdict::Marginal;
  } else {
    rep.local_verdict = margin > 0.0 ? LocalVerdict::LAS : LocalVerdict::Unstable;
  }
  return rep;
}

inline ThresholdSet thresholds(double h) {
  if (!std::isfinite(h) || h <= 0.0) throw Error(ErrorCode::InvalidArgument, "thresholds need h > 0");
  ThresholdSet t;
  t.r1 = h + 1.0 - std::log1p(h);
  t.H_star = 0.5 * (h + std::sqrt(h * h + 4.0 * h));
  // H* - h = h / H*, which avoids cancellation for small h
  t.r2 = t.H_star + std::log(h / t.H_star) - std::log(t.H_star);
  return t;
}

/// g1(t) = h / (1 - f(t)), defined for t > r.
inline double g1(double t, double r, double h) {
  if (!(t > r)) throw Error(ErrorCode::InvalidArgument, "g1 needs t > r");
  return h / -std::expm1(r - t);
}

/// Solutions of x = x f(y) + h, y = y f(x) + h: the equilibrium and, when
/// r2 < r < h, the pseudo fixed points (x*, y*) and (y*, x*). Sorted by x.
inline std::vector<PlanarPoint> find_intersections(const ModelParams& params) {
  const double h = detail::require_constant_h(params);
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "intersections need h > 0");
  const double r = params.r();
  const double yb = solve_equilibrium(params).y_bar;
  const ThresholdSet th = thresholds(h);

  // x* solves g1(g1(t)) = t on (r, y_bar); g1 maps (r, y_bar) above y_bar.
  auto psi = [&](double t) { return g1(g1(t, r, h), r, h) - t; };
  const double span = yb - r;
  constexpr int kSamples = 4096;
  std::vector<double> grid;
  grid.reserve(2 * kSamples);
  for (int k = 0; k < kSamples; ++k) {
    const double e = -9.0 + 9.0 * k / (kSamples - 1);  // offsets 1e-9 .. 1 of the span
    grid.push_back(r + span * 0.5 * std::pow(10.0, e));
    grid.push_back(yb - span * 0.5 * std::pow(10.0, e));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> roots;
  double prev_t = grid.front();
  double prev_v = psi(prev_t);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double t = grid[i];
    const double v = psi(t);
    if (v == 0.0 || (v < 0.0) != (prev_v < 0.0)) {
      const double root = v == 0.0 ? t : detail::bisect(psi, prev_t, t, prev_v, 1e-15 * t);
      if (std::abs(root - yb) > 1e-6 && (roots.empty() || std::abs(root - roots.back()) > 1e-6)) {
        roots.push_back(root);
      }
    }
    prev_t = t;
    prev_v = v;
  }

  std::vector<PlanarPoint> out{{yb, yb}};
  for (double x : roots) {
    const double y = g1(x, r, h);
    out.push_back({x, y});
    out.push_back({y, x});
  }
  std::sort(out.begin(), out.end(), [](const PlanarPoint& p, const PlanarPoint& q) { return p.x < q.x; });

  const std::size_t expected = (th.r2 < r && r < h) ? 3 : 1;
  if (out.size() != expected) {
    throw Error(ErrorCode::CountMismatch, "found " + std::to_string(out.size()) + " intersections, expected " +
                                              std::to_string(expected));
  }
  return out;
}

/// A compatible box [a, b] with target in [a, b]^2. Requires h > r.
inline BoxRegion feasible_ab(const ModelParams& params, const PlanarPoint& target) {
  const double h = detail::require_constant_h(params);
  const double r = params.r();
  if (!(h > r)) throw Error(ErrorCode::Infeasible, "no compatible box when h <= r");
  const double tmin = std::min(target.x, target.y);
  const double tmax = std::max(target.x, target.y);
  if (!(tmin > r)) throw Error(ErrorCode::Infeasible, "target lies at or below r, outside every compatible box");
  const double a = r + 0.9 * (std::min(h, tmin) - r);
  const double b = std::max(g1(a, r, h) * (1.0 + 1e-9), tmax);
  BoxRegion box{a, b};
  const RickerMap f{r, h};
  if (!se_leq(PlanarPoint{a, b}, PlanarPoint{f(a, b), f(b, a)})) {
    throw Error(ErrorCode::Infeasible, "constructed box fails the compatibility check");
  }
  return box;
}

inline ClassificationVerdict certify_constant(const ModelParams& params) {
  const double h = detail::require_constant_h(params);
  const double r = params.r();
  ClassificationVerdict v;
  const EquilibriumReport eq = solve_equilibrium(params);
  v.local = eq.local_verdict;
  if (h == 0.0) {
    v.tag = VerdictTag::NotApplicable;
    v.provenance = "constant:h=0";
    v.notes.push_back("no compatible box without stocking; y_bar = r is a limiting case");
    return v;
  }
  const ThresholdSet th = thresholds(h);

  if (r <= th.r2) {
    v.tag = VerdictTag::GloballyStable;
    v.provenance = "constant:gas[r<=r2]";
    v.witness = feasible_ab(params, {eq.y_bar, eq.y_bar});
    v.enclosure = Interval{eq.y_bar, eq.y_bar};
    return v;
  }

  if (r < h) {
    try {
      const auto pts = find_intersections(params);
      v.enclosure = Interval{pts.front().x, pts.back().x};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CountMismatch) throw;
      // close to r2 the pseudo pair merges with y_bar; fall back to the corner limits
      CornerOptions opts;
      opts.throw_on_max_iter = false;
      opts.max_iter = 200'000;
      opts.monotonicity_samples = 0;
      const BoxRegion box = feasible_ab(params, {eq.y_bar, eq.y_bar});
      const Enclosure enc = corner_iterate(build_G(params.map(0)), box, opts);
      v.enclosure = Interval{enc.lower.x, enc.upper.x};
      v.notes.push_back("intersection scan unresolved near r2; enclosure from corner iteration");
    }
    v.witness = feasible_ab(params, {v.enclosure->lo, v.enclosure->hi});
  }

  if (r > th.r1) {
    v.tag = VerdictTag::Unstable;
    v.provenance = "constant:unstable[r>r1]";
    if (v.enclosure) v.notes.push_back("orbits still absorbed into [x*, y*]^2");
  } else if (r < h) {
    v.tag = VerdictTag::AbsorbingBox;
    v.provenance = "constant:absorbing[r2<r<h]";
  } else {
    v.tag = VerdictTag::LocallyStableGlobalOpen;
    v.provenance = "constant:las[h<=r<=r1]";
    v.notes.push_back("global stability conjectured, not certified");
  }
  return v;
}

}  // namespace ricker
