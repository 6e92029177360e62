#pragma once

// Delayed Ricker model with (periodic) stocking:
//
//   y_{n+1} = y_n * exp(r - y_{n-1}) + h_{n mod p}
//
// The planar state is X_n = (y_n, y_{n-1}).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ricker/error.hpp"

namespace ricker {

struct PlanarPoint {
  double x{};
  double y{};

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

/// A point of V^4, read as the pair (X, U) = ((x, y), (u, v)).
struct QuadPoint {
  double x{};
  double y{};
  double u{};
  double v{};

  friend bool operator==(const QuadPoint&, const QuadPoint&) = default;
};

inline double sup_distance(const PlanarPoint& p, const PlanarPoint& q) noexcept {
  return std::max(std::abs(p.x - q.x), std::abs(p.y - q.y));
}

inline double sup_distance(const QuadPoint& p, const QuadPoint& q) noexcept {
  return std::max({std::abs(p.x - q.x), std::abs(p.y - q.y), std::abs(p.u - q.u),
                   std::abs(p.v - q.v)});
}

inline double sup_norm(const QuadPoint& p) noexcept {
  return std::max({std::abs(p.x), std::abs(p.y), std::abs(p.u), std::abs(p.v)});
}

/// f(t) = exp(r - t). Throws OutOfRange when the result is not representable.
inline double density(double t, double r) {
  if (!std::isfinite(t) || !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidArgument, "density: non-finite argument");
  }
  const double value = std::exp(r - t);
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::OutOfRange, "density: exp(r - t) overflows for t = " + std::to_string(t));
  }
  return value;
}

/// F_j(x, y) = x f(y) + h_j. Unchecked; used as the planar map in the
/// embedding machinery and in hot loops.
struct RickerMap {
  double r{};
  double h{};

  double operator()(double x, double y) const noexcept { return x * std::exp(r - y) + h; }
};

/// Growth rate r and a stocking schedule normalized to its minimal period.
class ModelParams {
 public:
  ModelParams(double r, std::vector<double> stocking) : r_(r), stocking_(std::move(stocking)) {
    if (!std::isfinite(r_) || r_ <= 0.0) {
      throw Error(ErrorCode::InvalidArgument, "growth rate r must be positive and finite");
    }
    if (stocking_.empty()) {
      throw Error(ErrorCode::InvalidArgument, "stocking schedule must not be empty");
    }
    for (double h : stocking_) {
      if (!std::isfinite(h) || h < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "stocking entries must be finite and >= 0");
      }
    }
    normalize_period();
  }

  static ModelParams constant(double r, double h) { return ModelParams(r, {h}); }
  static ModelParams periodic(double r, double h0, double h1) { return ModelParams(r, {h0, h1}); }

  double r() const noexcept { return r_; }
  std::size_t period() const noexcept { return stocking_.size(); }
  std::span<const double> stocking() const noexcept { return stocking_; }
  bool is_constant() const noexcept { return stocking_.size() == 1; }

  double h(std::size_t n) const noexcept { return stocking_[n % stocking_.size()]; }

  /// The constant stocking level; only valid when period() == 1.
  double h() const {
    if (!is_constant()) {
      throw Error(ErrorCode::InvalidArgument, "constant stocking requested for a periodic schedule");
    }
    return stocking_.front();
  }

  double min_stocking() const noexcept { return *std::min_element(stocking_.begin(), stocking_.end()); }

  RickerMap map(std::size_t n) const noexcept { return RickerMap{r_, h(n)}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  void normalize_period() {
    const std::size_t n = stocking_.size();
    for (std::size_t d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      bool repeats = true;
      for (std::size_t i = d; i < n && repeats; ++i) repeats = stocking_[i] == stocking_[i % d];
      if (repeats) {
        stocking_.resize(d);
        return;
      }
    }
  }

  double r_;
  std::vector<double> stocking_;
};

namespace detail {
inline void require_nonnegative(double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorCode::InvalidArgument, "state coordinates must be finite and non-negative");
  }
}
}  // namespace detail

/// y_{n+1} = F_n(x, y) = x f(y) + h_{n mod p}.
inline double step(double x, double y, const ModelParams& params, std::size_t n) {
  detail::require_nonnegative(x, y);
  return x * density(y, params.r()) + params.h(n);
}

/// T_n(x, y) = (F_n(x, y), x).
inline PlanarPoint vector_step(const PlanarPoint& state, const ModelParams& params, std::size_t n) {
  return {step(state.x, state.y, params, n), state.x};
}

/// Upper bound for y_{n+2} given the two stocking values used on the way:
/// (e^r + h_n) e^r + h_{n+1}.
inline double two_step_bound(const ModelParams& params, std::size_t n) {
  const double er = std::exp(params.r());
  return (er + params.h(n)) * er + params.h(n + 1);
}

/// Bound valid from the second step on, whatever the phase.
inline double orbit_bound(const ModelParams& params) {
  double bound = 0.0;
  for (std::size_t n = 0; n < params.period(); ++n) bound = std::max(bound, two_step_bound(params, n));
  return bound;
}

}  // namespace ricker
