#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string_view>

namespace ricker {

enum class LocalVerdict { LAS, Unstable, Marginal };

constexpr std::string_view to_string(LocalVerdict v) noexcept {
  switch (v) {
    case LocalVerdict::LAS: return "LAS";
    case LocalVerdict::Unstable: return "Unstable";
    case LocalVerdict::Marginal: return "Marginal";
  }
  return "Unknown";
}

struct Mat2 {
  double a{}, b{};
  double c{}, d{};

  double trace() const noexcept { return a + d; }
  double det() const noexcept { return a * d - b * c; }
};

/// Eigenvalues of a real 2x2 matrix given by trace and determinant.
/// Real pairs are ordered first >= second.
struct EigenPair {
  std::complex<double> first;
  std::complex<double> second;

  bool is_complex() const noexcept { return first.imag() != 0.0; }

  double spectral_radius() const noexcept { return std::max(std::abs(first), std::abs(second)); }

  static EigenPair from_trace_det(double trace, double det) noexcept {
    const double half = 0.5 * trace;
    const double disc = half * half - det;
    if (disc < 0.0) {
      const double im = std::sqrt(-disc);
      return {{half, im}, {half, -im}};
    }
    // Larger-magnitude root first, the other from the product to avoid cancellation.
    const double s = std::sqrt(disc);
    const double big = half >= 0.0 ? half + s : half - s;
    const double small = big != 0.0 ? det / big : 0.0;
    return big >= small ? EigenPair{big, small} : EigenPair{small, big};
  }
};

/// Jury test |Tr| < 1 + Det < 2 with a symmetric band around the boundary
/// reported as Marginal.
inline LocalVerdict jury_verdict(double trace, double det, double band = 1e-10) noexcept {
  const double margin = std::min(1.0 + det - std::abs(trace), 1.0 - det);
  if (margin > band) return LocalVerdict::LAS;
  if (margin < -band) return LocalVerdict::Unstable;
  return LocalVerdict::Marginal;
}

}  // namespace ricker
