#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ricker/embedding.hpp"
#include "ricker/stability.hpp"

namespace ricker {

enum class VerdictTag {
  GloballyStable,
  LocallyStableGlobalOpen,  // LAS, global behaviour only conjectured
  AbsorbingBox,
  Unstable,
  NotApplicable,
};

constexpr std::string_view to_string(VerdictTag t) noexcept {
  switch (t) {
    case VerdictTag::GloballyStable: return "GloballyStable";
    case VerdictTag::LocallyStableGlobalOpen: return "LocallyStableGlobalOpen";
    case VerdictTag::AbsorbingBox: return "AbsorbingBox";
    case VerdictTag::Unstable: return "Unstable";
    case VerdictTag::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

struct Interval {
  double lo{};
  double hi{};

  bool contains(double t, double slack = 0.0) const noexcept { return t >= lo - slack && t <= hi + slack; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ClassificationVerdict {
  VerdictTag tag = VerdictTag::NotApplicable;
  std::optional<LocalVerdict> local;
  std::string provenance;
  std::optional<BoxRegion> witness;    // compatible (a, b) used by the argument
  std::optional<Interval> enclosure;   // absorbing [x*, y*] (constant stocking)
  std::optional<Interval> even_range;  // periodic: even-indexed terms
  std::optional<Interval> odd_range;   // periodic: odd-indexed terms
  std::vector<std::string> notes;
};

}  // namespace ricker
