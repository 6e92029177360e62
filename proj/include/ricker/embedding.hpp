#pragma once

// Monotone embedding of planar second-order maps into V^4.
//
// For a planar map F that is non-decreasing in its first and non-increasing
// in its second argument, G(x, y, u, v) = (F(x, y), u, F(u, v), x) is
// monotone for the southeast order on V^2 x V^2. Orbits started inside a
// compatible box are squeezed between the two corner orbits, which converge
// monotonically to fixed points of G.
//
// Nothing here assumes positivity; the Ricker instantiation does.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "ricker/error.hpp"
#include "ricker/model.hpp"

namespace ricker {

template <class F>
concept PlanarMap = std::regular_invocable<const F&, double, double> &&
                    std::convertible_to<std::invoke_result_t<const F&, double, double>, double>;

template <class M>
concept QuadMap = std::regular_invocable<const M&, const QuadPoint&> &&
                  std::same_as<std::invoke_result_t<const M&, const QuadPoint&>, QuadPoint>;

template <class M>
concept VectorMap = std::regular_invocable<const M&, const PlanarPoint&> &&
                    std::same_as<std::invoke_result_t<const M&, const PlanarPoint&>, PlanarPoint>;

// ---------------------------------------------------------------------------
// Southeast order

/// (x1, y1) <=_se (x2, y2)  iff  x1 <= x2 and y1 >= y2.
inline bool se_leq(const PlanarPoint& p, const PlanarPoint& q, double slack = 0.0) noexcept {
  return p.x <= q.x + slack && p.y + slack >= q.y;
}

/// Order on W x W, W = V^2: (X1, U1) <= (X2, U2) iff X1 <=_se X2 and
/// U2 <=_se U1, i.e. x1 <= x2, y1 >= y2, u1 >= u2, v1 <= v2. This is the
/// order G preserves; the box corners are (a, b, b, a) and (b, a, a, b).
inline bool se_leq(const QuadPoint& p, const QuadPoint& q, double slack = 0.0) noexcept {
  return p.x <= q.x + slack && p.y + slack >= q.y && p.u + slack >= q.u && p.v <= q.v + slack;
}

// ---------------------------------------------------------------------------
// Maps

template <PlanarMap F>
struct EmbeddedMap {
  F f;

  QuadPoint operator()(const QuadPoint& q) const {
    return {static_cast<double>(f(q.x, q.y)), q.u, static_cast<double>(f(q.u, q.v)), q.x};
  }
};

/// G(x, y, u, v) = (F(x, y), u, F(u, v), x).
template <PlanarMap F>
EmbeddedMap<F> build_G(F f) {
  return EmbeddedMap<F>{std::move(f)};
}

/// Vector form T(x, y) = (F(x, y), x).
template <PlanarMap F>
struct VectorForm {
  F f;

  PlanarPoint operator()(const PlanarPoint& p) const { return {static_cast<double>(f(p.x, p.y)), p.x}; }
};

template <PlanarMap F>
VectorForm<F> vector_form(F f) {
  return VectorForm<F>{std::move(f)};
}

/// outer(inner(p)).
template <class Outer, class Inner>
struct Composed {
  Outer outer;
  Inner inner;

  template <class P>
  auto operator()(const P& p) const {
    return outer(inner(p));
  }
};

template <class Outer, class Inner>
Composed<Outer, Inner> compose(Outer outer, Inner inner) {
  return {std::move(outer), std::move(inner)};
}

// ---------------------------------------------------------------------------
// Periodic folding

/// T10 = T1 o T0 advances even-indexed states, T01 = T0 o T1 odd-indexed ones.
template <class T0, class T1>
struct FoldedPair {
  Composed<T1, T0> t10;
  Composed<T0, T1> t01;
};

template <VectorMap T0, VectorMap T1>
FoldedPair<T0, T1> fold_period2(T0 t0, T1 t1) {
  return {{t1, t0}, {t0, t1}};
}

using VectorMapFn = std::function<PlanarPoint(const PlanarPoint&)>;

/// Folding of a p-periodic system [T_0, ..., T_{p-1}]: entry i advances the
/// subsequence X_i, X_{p+i}, X_{2p+i}, ... by applying T_i first and
/// T_{i-1} last.
inline std::vector<VectorMapFn> fold_periodic(std::vector<VectorMapFn> maps) {
  if (maps.empty()) throw Error(ErrorCode::InvalidArgument, "fold_periodic: no maps");
  const std::size_t p = maps.size();
  auto shared = std::make_shared<const std::vector<VectorMapFn>>(std::move(maps));
  std::vector<VectorMapFn> folded;
  folded.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    folded.emplace_back([shared, i, p](const PlanarPoint& start) {
      PlanarPoint s = start;
      for (std::size_t k = 0; k < p; ++k) s = (*shared)[(i + k) % p](s);
      return s;
    });
  }
  return folded;
}

// ---------------------------------------------------------------------------
// Boxes and corner iteration

struct BoxRegion {
  double a{};
  double b{};

  BoxRegion() = default;
  BoxRegion(double lower, double upper) : a(lower), b(upper) {
    if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
      throw Error(ErrorCode::InvalidArgument, "box requires finite a <= b");
    }
  }

  QuadPoint lower_corner() const noexcept { return {a, b, b, a}; }
  QuadPoint upper_corner() const noexcept { return {b, a, a, b}; }

  /// (a, b) <=_se X <=_se (b, a), i.e. X in [a, b]^2.
  bool contains(const PlanarPoint& p) const noexcept {
    return se_leq(PlanarPoint{a, b}, p) && se_leq(p, PlanarPoint{b, a});
  }

  friend bool operator==(const BoxRegion&, const BoxRegion&) = default;
};

/// (A, B) <= G(A, B) and G(B, A) <= (B, A). For an embedded planar map this
/// is (a, b) <=_se (F(a, b), F(b, a)).
template <QuadMap G>
bool is_compatible(const G& g, const BoxRegion& box) {
  const QuadPoint lo = box.lower_corner();
  const QuadPoint hi = box.upper_corner();
  return se_leq(lo, g(lo)) && se_leq(g(hi), hi);
}

/// Smallest (to ~1e-12 relative) compatible box [a, b'] with b' >= b.
template <QuadMap G>
BoxRegion expand_to_compatible(const G& g, const BoxRegion& box) {
  if (is_compatible(g, box)) return box;
  double incompatible = box.b;
  double width = std::max(box.b - box.a, 1e-3 * std::max(1.0, std::abs(box.a)));
  for (int k = 0; k < 64; ++k) {
    width *= 2.0;
    const double candidate = box.a + width;
    if (!std::isfinite(candidate)) break;
    if (is_compatible(g, BoxRegion{box.a, candidate})) {
      double lo = incompatible;
      double hi = candidate;
      for (int i = 0; i < 200 && hi - lo > 1e-12 * std::abs(hi); ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (is_compatible(g, BoxRegion{box.a, mid})) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return BoxRegion{box.a, hi};
    }
    incompatible = candidate;
  }
  throw Error(ErrorCode::PreconditionViolated,
              "no compatible box found by raising b above " + std::to_string(box.b));
}

/// Samples ordered pairs P <= Q in [a, b]^4 and checks G(P) <= G(Q).
/// Throws NonMonotoneDetected on the first violation.
template <QuadMap G>
void sample_monotonicity(const G& g, const BoxRegion& box, std::size_t pairs, std::uint64_t seed = 0x5eedULL) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(box.a, box.b);
  for (std::size_t i = 0; i < pairs; ++i) {
    const double x1 = coord(rng), x2 = coord(rng), y1 = coord(rng), y2 = coord(rng);
    const double u1 = coord(rng), u2 = coord(rng), v1 = coord(rng), v2 = coord(rng);
    const QuadPoint p{std::min(x1, x2), std::max(y1, y2), std::max(u1, u2), std::min(v1, v2)};
    const QuadPoint q{std::max(x1, x2), std::min(y1, y2), std::min(u1, u2), std::max(v1, v2)};
    const QuadPoint gp = g(p);
    const QuadPoint gq = g(q);
    const double slack = 1e-13 * std::max({1.0, sup_norm(gp), sup_norm(gq)});
    if (!se_leq(gp, gq, slack)) {
      throw Error(ErrorCode::NonMonotoneDetected, "sampled ordered pair maps to unordered images");
    }
  }
}

enum class BoxPolicy {
  Strict,       ///< incompatible box -> PreconditionViolated
  ExpandUpper,  ///< raise b until the box is compatible
};

struct CornerOptions {
  double tol = 1e-12;
  std::size_t max_iter = 1'000'000;
  BoxPolicy policy = BoxPolicy::Strict;
  std::size_t monotonicity_samples = 10'000;
  std::uint64_t seed = 0x5eedULL;
  bool throw_on_max_iter = true;
};

struct Enclosure {
  QuadPoint lower;
  QuadPoint upper;
  bool converged = false;
  std::size_t iterations = 0;
  BoxRegion box;  ///< the box actually iterated (after expansion)

  bool collapsed(double tol = 1e-8) const noexcept { return sup_distance(lower, upper) <= tol; }
};

struct NoCornerObserver {
  void operator()(std::size_t, const QuadPoint&, const QuadPoint&) const noexcept {}
};

/// Iterates G from the lower corner (a, b, b, a) and the upper corner
/// (b, a, a, b). The lower orbit must increase and the upper orbit decrease
/// in the quad order at every step; a violation raises NonMonotoneDetected.
/// Stops when the sup-norm change of both corners drops below tol.
template <QuadMap G, class Observer = NoCornerObserver>
Enclosure corner_iterate(const G& g, const BoxRegion& requested, const CornerOptions& options = {},
                         Observer&& observer = {}) {
  BoxRegion box = requested;
  if (!is_compatible(g, box)) {
    if (options.policy == BoxPolicy::Strict) {
      throw Error(ErrorCode::PreconditionViolated,
                  "box [" + std::to_string(box.a) + ", " + std::to_string(box.b) +
                      "] is not compatible: (a, b) <=_se (F(a, b), F(b, a)) fails");
    }
    box = expand_to_compatible(g, box);
  }
  if (options.monotonicity_samples > 0) sample_monotonicity(g, box, options.monotonicity_samples, options.seed);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  QuadPoint lo = box.lower_corner();
  QuadPoint hi = box.upper_corner();
  observer(std::size_t{0}, lo, hi);
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    const QuadPoint next_lo = g(lo);
    const QuadPoint next_hi = g(hi);
    const double slack = 64.0 * eps * std::max({1.0, sup_norm(next_lo), sup_norm(next_hi)});
    if (!se_leq(lo, next_lo, slack) || !se_leq(next_hi, hi, slack) || !se_leq(next_lo, next_hi, slack)) {
      throw Error(ErrorCode::NonMonotoneDetected,
                  "corner orbits lost their order at iteration " + std::to_string(it));
    }
    const double change = std::max(sup_distance(next_lo, lo), sup_distance(next_hi, hi));
    lo = next_lo;
    hi = next_hi;
    observer(it, lo, hi);
    if (change < options.tol) return Enclosure{lo, hi, true, it, box};
  }
  if (options.throw_on_max_iter) {
    throw Error(ErrorCode::MaxIterExceeded,
                "corner iteration did not settle within " + std::to_string(options.max_iter) + " steps");
  }
  return Enclosure{lo, hi, false, options.max_iter, box};
}

// ---------------------------------------------------------------------------
// Fixed points of the embedded maps

enum class EmbeddedKind {
  Symmetric,            ///< (x, x, x, x)
  PseudoPair,           ///< (x, y, y, x), x != y
  PeriodicCycleSeed,    ///< (x, y, x, y), x != y
  ArtificialCycleSeed,  ///< anything else
};

constexpr std::string_view to_string(EmbeddedKind k) noexcept {
  switch (k) {
    case EmbeddedKind::Symmetric: return "Symmetric";
    case EmbeddedKind::PseudoPair: return "PseudoPair";
    case EmbeddedKind::PeriodicCycleSeed: return "PeriodicCycleSeed";
    case EmbeddedKind::ArtificialCycleSeed: return "ArtificialCycleSeed";
  }
  return "Unknown";
}

struct EmbeddedFixedPoint {
  QuadPoint point;
  EmbeddedKind kind;
};

inline EmbeddedFixedPoint classify_embedded(const QuadPoint& q, double tol = 1e-8) noexcept {
  auto eq = [tol](double s, double t) { return std::abs(s - t) <= tol; };
  EmbeddedKind kind = EmbeddedKind::ArtificialCycleSeed;
  if (eq(q.x, q.y) && eq(q.x, q.u) && eq(q.x, q.v)) {
    kind = EmbeddedKind::Symmetric;
  } else if (eq(q.u, q.y) && eq(q.v, q.x)) {
    kind = EmbeddedKind::PseudoPair;
  } else if (eq(q.u, q.x) && eq(q.v, q.y)) {
    kind = EmbeddedKind::PeriodicCycleSeed;
  }
  return {q, kind};
}

enum class G10Class {
  CommonEquilibrium,        ///< (x, x, x, x): fixed point of every F_j
  OneDimensionalTwoCycle,   ///< (x, x, u, u): 2-cycle of t -> F_j(t, t)
  PseudoCommonFixedPoints,  ///< (x, y, y, x)
  TrueTwoCycle,             ///< (x, y, x, y): a 2-cycle of [F_0, F_1]
  ArtificialCycles,         ///< (x, y, u, v) otherwise
};

constexpr std::string_view to_string(G10Class c) noexcept {
  switch (c) {
    case G10Class::CommonEquilibrium: return "CommonEquilibrium";
    case G10Class::OneDimensionalTwoCycle: return "OneDimensionalTwoCycle";
    case G10Class::PseudoCommonFixedPoints: return "PseudoCommonFixedPoints";
    case G10Class::TrueTwoCycle: return "TrueTwoCycle";
    case G10Class::ArtificialCycles: return "ArtificialCycles";
  }
  return "Unknown";
}

/// Taxonomy of a fixed point xi of G10 = G1 o G0. The fixed-point residual
/// is checked relative to max(1, |xi|).
template <PlanarMap F0, PlanarMap F1>
G10Class classify_G10_fixed_point(const QuadPoint& xi, const F0& f0, const F1& f1, double tol = 1e-8) {
  const auto g10 = compose(build_G(f1), build_G(f0));
  const double residual = sup_distance(g10(xi), xi);
  if (!(residual <= tol * std::max(1.0, sup_norm(xi)))) {
    throw Error(ErrorCode::NotAFixedPoint, "G1(G0(xi)) differs from xi by " + std::to_string(residual));
  }
  auto eq = [tol](double s, double t) { return std::abs(s - t) <= tol * std::max(1.0, std::abs(s)); };
  if (eq(xi.x, xi.y)) {
    if (eq(xi.u, xi.x) && eq(xi.v, xi.x)) return G10Class::CommonEquilibrium;
    if (eq(xi.u, xi.v)) return G10Class::OneDimensionalTwoCycle;
    return G10Class::ArtificialCycles;
  }
  if (eq(xi.u, xi.y) && eq(xi.v, xi.x)) return G10Class::PseudoCommonFixedPoints;
  if (eq(xi.u, xi.x) && eq(xi.v, xi.y)) return G10Class::TrueTwoCycle;
  return G10Class::ArtificialCycles;
}

}  // namespace ricker
