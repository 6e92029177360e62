#pragma once

// 2-periodic stocking h = (h0, h1). Orbits start at n = 0, so odd-indexed
// terms follow h0 and even-indexed terms follow h1; a 2-cycle {z0, z1} has
// the even terms at z0.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ricker/detail/roots.hpp"
#include "ricker/embedding.hpp"
#include "ricker/error.hpp"
#include "ricker/model.hpp"
#include "ricker/stability.hpp"
#include "ricker/verdict.hpp"

namespace ricker {

enum class TwoCycleMethod { FoldedIteration, NewtonSeeds, Reduction };

constexpr std::string_view to_string(TwoCycleMethod m) noexcept {
  switch (m) {
    case TwoCycleMethod::FoldedIteration: return "FoldedIteration";
    case TwoCycleMethod::NewtonSeeds: return "NewtonSeeds";
    case TwoCycleMethod::Reduction: return "Reduction";
  }
  return "Unknown";
}

struct TwoCycleReport {
  double z0{};
  double z1{};
  double trace{};
  double det{};
  EigenPair eigenvalues{};
  LocalVerdict local_verdict = LocalVerdict::LAS;
  std::pair<double, double> residuals{};
  bool det_below_one = false;  // sufficient for LAS on its own
  TwoCycleMethod method = TwoCycleMethod::FoldedIteration;
};

namespace detail {

inline std::pair<double, double> require_period2(const ModelParams& params) {
  if (params.period() != 2) {
    throw Error(ErrorCode::InvalidArgument, "2-periodic analysis needs h0 != h1");
  }
  return {params.h(0), params.h(1)};
}

struct TwoCycleSystem {
  double r, h0, h1;

  PlanarPoint residual(const PlanarPoint& z) const {
    return {z.y * std::exp(r - z.x) + h1 - z.x, z.x * std::exp(r - z.y) + h0 - z.y};
  }

  Mat2 jacobian(const PlanarPoint& z) const {
    const double f0 = std::exp(r - z.x);
    const double f1 = std::exp(r - z.y);
    return {-z.y * f0 - 1.0, f0, f1, -z.x * f1 - 1.0};
  }
};

inline double sup_abs(const PlanarPoint& p) { return std::max(std::abs(p.x), std::abs(p.y)); }

}  // namespace detail

inline TwoCycleReport make_two_cycle_report(const ModelParams& params, double z0, double z1) {
  const auto [h0, h1] = detail::require_period2(params);
  const detail::TwoCycleSystem sys{params.r(), h0, h1};
  TwoCycleReport rep;
  rep.z0 = z0;
  rep.z1 = z1;
  const PlanarPoint res = sys.residual({z0, z1});
  rep.residuals = {res.x, res.y};
  rep.trace = (h1 - z0) + (h0 - z1) + (1.0 - h0 / z1) * (1.0 - h1 / z0);
  rep.det = (z1 - h0) * (z0 - h1);
  rep.eigenvalues = EigenPair::from_trace_det(rep.trace, rep.det);
  rep.local_verdict = jury_verdict(rep.trace, rep.det);
  rep.det_below_one = rep.det < 1.0;
  return rep;
}

/// The 2-cycle z0 = z1 f(z0) + h1, z1 = z0 f(z1) + h0.
inline TwoCycleReport solve_two_cycle(const ModelParams& params) {
  const auto [h0, h1] = detail::require_period2(params);
  const double r = params.r();
  const detail::TwoCycleSystem sys{r, h0, h1};
  const double bound = orbit_bound(params);
  constexpr double kEps = 1e-9;
  auto in_domain = [&](const PlanarPoint& z) { return z.x > h1 && z.y > h0 && z.x <= bound && z.y <= bound; };
  auto residual = [&](const PlanarPoint& z) { return sys.residual(z); };
  auto jacobian = [&](const PlanarPoint& z) { return sys.jacobian(z); };
  auto accept = [&](const PlanarPoint& z) {
    return in_domain(z) && detail::sup_abs(sys.residual(z)) < 1e-10 * std::max(1.0, std::max(z.x, z.y));
  };

  // 1. folded map T10 on (x_{2k}, x_{2k-1})
  {
    const RickerMap f0 = params.map(0), f1 = params.map(1);
    PlanarPoint z{0.5 * bound, 0.5 * bound};
    bool settled = false;
    for (int it = 0; it < 100'000; ++it) {
      const double odd = f0(z.x, z.y);
      const PlanarPoint next{f1(odd, z.x), odd};
      const double change = sup_distance(next, z);
      z = next;
      if (change < 1e-13 * std::max(1.0, std::max(z.x, z.y))) {
        settled = true;
        break;
      }
    }
    if (settled && in_domain(z)) {
      const auto polished = detail::newton2(residual, jacobian, in_domain, z, 1e-14);
      const PlanarPoint best = detail::sup_abs(sys.residual(polished.point)) <= detail::sup_abs(sys.residual(z))
                                   ? polished.point
                                   : z;
      if (accept(best)) {
        auto rep = make_two_cycle_report(params, best.x, best.y);
        rep.method = TwoCycleMethod::FoldedIteration;
        return rep;
      }
    }
  }

  // 2. Newton from a 3x3 grid of seeds
  for (double sx : {0.1, 0.5, 0.9}) {
    for (double sy : {0.1, 0.5, 0.9}) {
      const PlanarPoint seed{h1 + kEps + sx * (bound - h1), h0 + kEps + sy * (bound - h0)};
      const auto res = detail::newton2(residual, jacobian, in_domain, seed, 1e-13);
      if (accept(res.point)) {
        auto rep = make_two_cycle_report(params, res.point.x, res.point.y);
        rep.method = TwoCycleMethod::NewtonSeeds;
        return rep;
      }
    }
  }

  // 3. reduce to one unknown: z1(z0) is the unique root of z0 f(z1) + h0 - z1
  auto z1_of = [&](double z0) {
    auto phi = [&](double z1) { return z0 * std::exp(r - z1) + h0 - z1; };
    const double lo = h0;
    const double hi = h0 + z0 * std::exp(r - h0) + 1.0;
    return detail::bisect(phi, lo, hi, phi(lo), 1e-15 * hi);
  };
  auto psi = [&](double z0) { return z1_of(z0) * std::exp(r - z0) + h1 - z0; };
  std::optional<PlanarPoint> best;
  double best_res = HUGE_VAL;
  constexpr int kScan = 4096;
  double prev_t = h1 + kEps;
  double prev_v = psi(prev_t);
  for (int k = 1; k <= kScan; ++k) {
    const double t = h1 + kEps * std::pow((bound - h1) / kEps, static_cast<double>(k) / kScan);
    const double v = psi(t);
    if (v == 0.0 || (v < 0.0) != (prev_v < 0.0)) {
      const double z0 = v == 0.0 ? t : detail::bisect(psi, prev_t, t, prev_v, 1e-15 * t);
      PlanarPoint z{z0, z1_of(z0)};
      const auto polished = detail::newton2(residual, jacobian, in_domain, z, 1e-14);
      if (detail::sup_abs(sys.residual(polished.point)) < detail::sup_abs(sys.residual(z))) z = polished.point;
      const double rn = detail::sup_abs(sys.residual(z));
      if (rn < best_res) {
        best_res = rn;
        best = z;
      }
    }
    prev_t = t;
    prev_v = v;
  }
  if (best && accept(*best)) {
    auto rep = make_two_cycle_report(params, best->x, best->y);
    rep.method = TwoCycleMethod::Reduction;
    return rep;
  }
  throw Error(ErrorCode::NonConvergence, "no 2-cycle found by folding, Newton seeds or reduction");
}

enum class CorollaryClause {
  SmallGrowthDetBelowOne,    // r <= 1 gives Det < 1
  BelowShiftedStockingLAS,   // z0 <= h1 + 1 and z1 <= h0 + 1 gives LAS
  AboveShiftedStockingUnst,  // z0 > h1 + 1 and z1 > h0 + 1 gives Unstable
};

constexpr std::string_view to_string(CorollaryClause c) noexcept {
  switch (c) {
    case CorollaryClause::SmallGrowthDetBelowOne: return "r<=1=>Det<1";
    case CorollaryClause::BelowShiftedStockingLAS: return "z<=h+1=>LAS";
    case CorollaryClause::AboveShiftedStockingUnst: return "z>h+1=>Unstable";
  }
  return "Unknown";
}

/// Clauses that apply to the report, each cross-checked against the Jury
/// verdict. A Marginal verdict never counts as a contradiction.
inline std::vector<CorollaryClause> corollary_shortcuts(const TwoCycleReport& rep, const ModelParams& params) {
  const auto [h0, h1] = detail::require_period2(params);
  std::vector<CorollaryClause> fired;
  auto contradiction = [](std::string_view clause) {
    throw Error(ErrorCode::ContradictionDetected, std::string(clause) + " disagrees with the Jury verdict");
  };
  if (params.r() <= 1.0) {
    fired.push_back(CorollaryClause::SmallGrowthDetBelowOne);
    if (!(rep.det < 1.0 + 1e-10)) contradiction(to_string(CorollaryClause::SmallGrowthDetBelowOne));
  }
  if (rep.z0 <= h1 + 1.0 && rep.z1 <= h0 + 1.0) {
    fired.push_back(CorollaryClause::BelowShiftedStockingLAS);
    if (rep.local_verdict == LocalVerdict::Unstable) contradiction(to_string(CorollaryClause::BelowShiftedStockingLAS));
  }
  if (rep.z0 > h1 + 1.0 && rep.z1 > h0 + 1.0) {
    fired.push_back(CorollaryClause::AboveShiftedStockingUnst);
    if (rep.local_verdict == LocalVerdict::LAS) contradiction(to_string(CorollaryClause::AboveShiftedStockingUnst));
  }
  return fired;
}

/// Residual of the system whose solutions are the fixed points
/// (x, y, F1(y, x), F0(x, y)) of G1 o G0.
inline PlanarPoint artificial_residual(const ModelParams& params, const PlanarPoint& p) {
  const auto [h0, h1] = detail::require_period2(params);
  const double r = params.r();
  const double fx = std::exp(r - p.x);
  const double fy = std::exp(r - p.y);
  return {p.x - h1 - (p.x * fy + h0) * std::exp(r - (p.y * fx + h1)),
          p.y - h0 - (p.y * fx + h1) * std::exp(r - (p.x * fy + h0))};
}

/// (x, y) -> (x, y, u, v) with (u, v) = (F1(y, x), F0(x, y)).
inline QuadPoint artificial_partner(const ModelParams& params, const PlanarPoint& p) {
  const RickerMap f0 = params.map(0), f1 = params.map(1);
  return {p.x, p.y, f1(p.y, p.x), f0(p.x, p.y)};
}

struct ArtificialCycle {
  QuadPoint point;
  G10Class kind;
};

struct ArtificialCycleSet {
  std::vector<ArtificialCycle> cycles;  // excludes the true 2-cycle
  std::optional<QuadPoint> two_cycle;   // (z0, z1, z0, z1) when met by the scan
  int resolution = 0;

  std::size_t count() const noexcept { return cycles.size(); }
};

/// Grid scan of the artificial-cycle system over (h1, B] x (h0, B], B the
/// two-step bound, with log-spaced offsets from the singular lines. Cells
/// where both residual components change sign seed a Newton polish.
/// Uniqueness claims are relative to the scan resolution.
inline ArtificialCycleSet find_artificial_cycles(const ModelParams& params, int resolution = 1024) {
  const auto [h0, h1] = detail::require_period2(params);
  if (resolution < 8) throw Error(ErrorCode::InvalidArgument, "scan resolution must be >= 8");
  const double bound = orbit_bound(params);
  constexpr double kEps = 1e-9;
  const int n = resolution + 1;
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / resolution;
    xs[i] = h1 + kEps * std::pow((bound - h1) / kEps, s);
    ys[i] = h0 + kEps * std::pow((bound - h0) / kEps, s);
  }
  std::vector<PlanarPoint> values(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) values[static_cast<std::size_t>(i) * n + j] = artificial_residual(params, {xs[i], ys[j]});
  }

  auto in_domain = [&](const PlanarPoint& p) { return p.x > h1 && p.y > h0 && p.x <= bound && p.y <= bound; };
  auto residual = [&](const PlanarPoint& p) { return artificial_residual(params, p); };
  auto jacobian = [&](const PlanarPoint& p) {
    const double dx = 1e-7 * std::max(1.0, std::abs(p.x));
    const double dy = 1e-7 * std::max(1.0, std::abs(p.y));
    const PlanarPoint xp = residual({p.x + dx, p.y}), xm = residual({p.x - dx, p.y});
    const PlanarPoint yp = residual({p.x, p.y + dy}), ym = residual({p.x, p.y - dy});
    return Mat2{(xp.x - xm.x) / (2 * dx), (yp.x - ym.x) / (2 * dy), (xp.y - xm.y) / (2 * dx), (yp.y - ym.y) / (2 * dy)};
  };

  std::vector<PlanarPoint> roots;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const std::array<PlanarPoint, 4> c{values[static_cast<std::size_t>(i) * n + j],
                                         values[static_cast<std::size_t>(i + 1) * n + j],
                                         values[static_cast<std::size_t>(i) * n + j + 1],
                                         values[static_cast<std::size_t>(i + 1) * n + j + 1]};
      auto changes = [&](auto get) {
        bool pos = false, neg = false;
        for (const auto& v : c) {
          const double t = get(v);
          pos = pos || t >= 0.0;
          neg = neg || t <= 0.0;
        }
        return pos && neg;
      };
      if (!changes([](const PlanarPoint& v) { return v.x; }) || !changes([](const PlanarPoint& v) { return v.y; })) {
        continue;
      }
      const PlanarPoint seed{0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])};
      const auto res = detail::newton2(residual, jacobian, in_domain, seed, 1e-12);
      const double scale = std::max(1.0, std::max(res.point.x, res.point.y));
      if (detail::sup_abs(residual(res.point)) < 1e-10 * scale) roots.push_back(res.point);
    }
  }

  std::sort(roots.begin(), roots.end(), [](const PlanarPoint& p, const PlanarPoint& q) {
    return p.x != q.x ? p.x < q.x : p.y < q.y;
  });
  std::vector<PlanarPoint> unique;
  for (const auto& p : roots) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const PlanarPoint& q) { return sup_distance(p, q) < 1e-6; });
    if (!dup) unique.push_back(p);
  }

  ArtificialCycleSet out;
  out.resolution = resolution;
  const RickerMap f0 = params.map(0), f1 = params.map(1);
  for (const auto& p : unique) {
    const QuadPoint q = artificial_partner(params, p);
    const G10Class kind = classify_G10_fixed_point(q, f0, f1, 1e-6);
    if (kind == G10Class::TrueTwoCycle) {
      out.two_cycle = q;
    } else {
      out.cycles.push_back({q, kind});
    }
  }
  return out;
}

/// g1(t) = h0 / (1 - f(t)), g2(t) = (h0 f(t) + h1) / (1 - f(t)^2), t > r.
inline std::pair<double, double> g_maps(double t, const ModelParams& params) {
  const auto [h0, h1] = detail::require_period2(params);
  if (!(t > params.r())) throw Error(ErrorCode::InvalidArgument, "g maps need t > r");
  const double f = std::exp(params.r() - t);
  const double one_minus_f = -std::expm1(params.r() - t);
  return {h0 / one_minus_f, (h0 * f + h1) / (one_minus_f * (1.0 + f))};
}

/// a < min{F0(a, b), F1(F0(a, b), b)} and b > max{F0(b, a), F1(F0(b, a), a)}:
/// the box [a, b] is compatible for G1 o G0.
inline bool periodic_witness_holds(const ModelParams& params, double a, double b) {
  const RickerMap f0 = params.map(0), f1 = params.map(1);
  const double fab = f0(a, b);
  const double fba = f0(b, a);
  return a < b && a < std::min(fab, f1(fab, b)) && b > std::max(fba, f1(fba, a));
}

/// A witness box for the periodic argument; needs min(h0, h1) > r.
inline BoxRegion periodic_witness(const ModelParams& params, const std::optional<PlanarPoint>& target = {}) {
  const auto [h0, h1] = detail::require_period2(params);
  const double r = params.r();
  if (!(std::min(h0, h1) > r)) {
    throw Error(ErrorCode::WitnessConstructionFailed, "witness needs both stocking values above r");
  }
  double lo_cap = std::min(h0, h1);
  double hi_floor = 0.0;
  if (target) {
    lo_cap = std::min(lo_cap, std::min(target->x, target->y));
    hi_floor = std::max(target->x, target->y);
  }
  auto g1 = [&](double t) { return g_maps(t, params).first; };
  auto try_box = [&](double a, double b) -> std::optional<BoxRegion> {
    b = std::max(b, hi_floor);
    if (a > r && a <= lo_cap && std::isfinite(b) && periodic_witness_holds(params, a, b)) return BoxRegion{a, b};
    return std::nullopt;
  };
  constexpr std::array<double, 7> kFractions{0.5, 0.25, 0.75, 0.1, 0.9, 0.01, 0.99};
  constexpr std::array<double, 5> kStretch{1.0 + 1e-9, 1.01, 1.1, 2.0, 10.0};
  if (h0 > h1) {
    for (double s : kFractions) {
      const double a = r + s * (lo_cap - r);
      for (double k : kStretch) {
        if (auto box = try_box(a, g1(a) * k)) return *box;
      }
    }
  } else {
    const double start = g_maps(h0, params).second;
    for (double k : kStretch) {
      for (double m : {1.0, 1.5, 3.0, 10.0}) {
        const double b = std::max(start * k, start * m);
        const double a = std::min(g1(b) * (1.0 - 1e-9), lo_cap);
        if (auto box = try_box(a, b)) return *box;
        for (double s : kFractions) {
          if (auto alt = try_box(r + s * (lo_cap - r), b)) return *alt;
        }
      }
    }
  }
  // last resort: coarse search over a in (r, lo_cap), b up to the orbit bound
  const double bound = orbit_bound(params);
  for (int i = 1; i < 64; ++i) {
    const double a = r + (lo_cap - r) * i / 64.0;
    for (int j = 0; j <= 64; ++j) {
      const double b = lo_cap + (bound - lo_cap) * std::pow(2.0, -j / 4.0);
      if (auto box = try_box(a, b)) return *box;
    }
  }
  throw Error(ErrorCode::WitnessConstructionFailed, "no (a, b) satisfying the periodic box inequalities found");
}

struct PeriodicCertifyOptions {
  int scan_resolution = 1024;
  bool ranges_when_not_applicable = true;  // attach informational ranges from the scan
};

inline ClassificationVerdict certify_periodic(const ModelParams& params, const PeriodicCertifyOptions& options = {}) {
  const auto [h0, h1] = detail::require_period2(params);
  const double r = params.r();
  ClassificationVerdict v;
  const TwoCycleReport tc = solve_two_cycle(params);
  v.local = tc.local_verdict;

  auto attach_ranges = [&](const ArtificialCycleSet& set) {
    double even_lo = tc.z0, even_hi = tc.z0, odd_lo = tc.z1, odd_hi = tc.z1;
    for (const auto& c : set.cycles) {
      even_lo = std::min({even_lo, c.point.x, c.point.u});
      even_hi = std::max({even_hi, c.point.x, c.point.u});
      odd_lo = std::min({odd_lo, c.point.y, c.point.v});
      odd_hi = std::max({odd_hi, c.point.y, c.point.v});
    }
    v.even_range = Interval{even_lo, even_hi};
    v.odd_range = Interval{odd_lo, odd_hi};
  };

  if (!(std::min(h0, h1) > r)) {
    v.tag = VerdictTag::NotApplicable;
    v.provenance = "periodic:not-applicable[min(h)<=r]";
    v.notes.push_back("embedding needs h0, h1 > r; local verdict from the Jury test only");
    if (options.ranges_when_not_applicable) {
      const auto set = find_artificial_cycles(params, options.scan_resolution);
      if (set.count() > 0) {
        attach_ranges(set);
        v.notes.push_back("ranges spanned by artificial cycles are informational, not certified");
      }
    }
    return v;
  }

  v.witness = periodic_witness(params, PlanarPoint{tc.z0, tc.z1});
  const auto set = find_artificial_cycles(params, options.scan_resolution);
  v.notes.push_back("uniqueness checked on a " + std::to_string(set.resolution) + "^2 scan");
  if (set.count() == 0) {
    v.tag = VerdictTag::GloballyStable;
    v.provenance = "periodic:gas[unique-fixed-point-G10]";
    v.even_range = Interval{tc.z0, tc.z0};
    v.odd_range = Interval{tc.z1, tc.z1};
    if (tc.local_verdict != LocalVerdict::LAS) {
      v.notes.push_back("Jury verdict " + std::string(to_string(tc.local_verdict)) + " at the certified 2-cycle");
    }
    return v;
  }
  v.tag = VerdictTag::AbsorbingBox;
  v.provenance = "periodic:absorbing[artificial-cycles]";
  attach_ranges(set);
  return v;
}

}  // namespace ricker
