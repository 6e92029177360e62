#pragma once

// Parameter-plane sweeps and their CSV form.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ricker/constant.hpp"
#include "ricker/error.hpp"
#include "ricker/periodic.hpp"
#include "ricker/verdict.hpp"

namespace ricker {

enum class SweepMode { Constant, Periodic };

struct Range {
  double lo{};
  double hi{};
  std::size_t n = 1;

  /// n evenly spaced values including both ends; n = 1 gives lo.
  double at(std::size_t i) const noexcept {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
};

/// Constant mode: outer = h, inner = r.
/// Periodic mode: outer = h0, inner = h1, growth rate fixed at r.
struct SweepSpec {
  SweepMode mode = SweepMode::Constant;
  Range outer;
  Range inner;
  double r = 1.0;  // periodic mode only
  int scan_resolution = 256;
};

struct SweepCell {
  double h{};   // h, or h0 in periodic mode
  double h1{};  // periodic mode
  double r{};
  VerdictTag verdict = VerdictTag::NotApplicable;
  std::optional<LocalVerdict> local;
  double y_bar{};  // constant mode; z0 in periodic mode
  double z1{};
  double r1{};
  double r2{};
  std::string notes;

  friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

struct SweepResult {
  SweepMode mode = SweepMode::Constant;
  std::vector<SweepCell> cells;  // row-major, outer index slowest
};

inline void validate(const SweepSpec& spec) {
  auto ok = [](const Range& g) {
    return std::isfinite(g.lo) && std::isfinite(g.hi) && g.lo > 0.0 && g.hi >= g.lo && g.n >= 1;
  };
  if (!ok(spec.outer) || !ok(spec.inner)) {
    throw Error(ErrorCode::InvalidArgument, "sweep ranges must be positive with lo <= hi and count >= 1");
  }
  if (spec.mode == SweepMode::Periodic && !(spec.r > 0.0 && std::isfinite(spec.r))) {
    throw Error(ErrorCode::InvalidArgument, "periodic sweep needs r > 0");
  }
}

namespace detail {

inline std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (const auto& n : notes) {
    if (!out.empty()) out += "; ";
    out += n;
  }
  // CSV fields are never quoted
  std::replace(out.begin(), out.end(), ',', ' ');
  std::replace(out.begin(), out.end(), '\n', ' ');
  return out;
}

inline SweepCell constant_cell(double h, double r) {
  SweepCell c;
  c.h = h;
  c.r = r;
  const auto params = ModelParams::constant(r, h);
  const auto th = thresholds(h);
  c.r1 = th.r1;
  c.r2 = th.r2;
  c.y_bar = solve_equilibrium(params).y_bar;
  const auto v = certify_constant(params);
  c.verdict = v.tag;
  c.local = v.local;
  c.notes = join_notes(v.notes);
  return c;
}

inline SweepCell periodic_cell(double h0, double h1, double r, int resolution) {
  SweepCell c;
  c.h = h0;
  c.h1 = h1;
  c.r = r;
  const ModelParams params(r, {h0, h1});
  if (params.is_constant()) {
    const auto v = certify_constant(params);
    c.y_bar = c.z1 = solve_equilibrium(params).y_bar;
    c.verdict = v.tag;
    c.local = v.local;
    c.notes = "h0=h1; constant stocking";
    return c;
  }
  const auto tc = solve_two_cycle(params);
  c.y_bar = tc.z0;
  c.z1 = tc.z1;
  PeriodicCertifyOptions opts;
  opts.scan_resolution = resolution;
  opts.ranges_when_not_applicable = false;
  const auto v = certify_periodic(params, opts);
  c.verdict = v.tag;
  c.local = v.local;
  c.notes = join_notes(v.notes);
  return c;
}

}  // namespace detail

/// Worker count: RICKER_LAB_THREADS if set and positive, else the hardware
/// concurrency.
inline unsigned sweep_threads() {
  if (const char* env = std::getenv("RICKER_LAB_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates every cell; workers fill an indexed buffer so the result is
/// independent of the thread count. Cells whose numerics fail are reported
/// NotApplicable with the error in `notes`.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0) {
  validate(spec);
  if (threads == 0) threads = sweep_threads();
  const std::size_t total = spec.outer.n * spec.inner.n;
  SweepResult result;
  result.mode = spec.mode;
  result.cells.resize(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const double a = spec.outer.at(idx / spec.inner.n);
      const double b = spec.inner.at(idx % spec.inner.n);
      SweepCell& cell = result.cells[idx];
      try {
        cell = spec.mode == SweepMode::Constant ? detail::constant_cell(a, b)
                                                : detail::periodic_cell(a, b, spec.r, spec.scan_resolution);
      } catch (const Error& e) {
        cell = SweepCell{};
        cell.h = a;
        if (spec.mode == SweepMode::Constant) {
          cell.r = b;
        } else {
          cell.h1 = b;
          cell.r = spec.r;
        }
        cell.notes = detail::join_notes({std::string("error ") + e.what()});
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return result;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view kConstantHeader = "h,r,verdict,local,y_bar,r1,r2,notes";
inline constexpr std::string_view kPeriodicHeader = "h0,h1,r,verdict,local,z0,z1,notes";
inline constexpr std::string_view kBoundaryHeader = "h,r1,r2,r_eq_h";

/// 17 significant digits, enough to read back the same double.
inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& res) {
  const bool periodic = res.mode == SweepMode::Periodic;
  os << (periodic ? kPeriodicHeader : kConstantHeader) << '\n';
  for (const auto& c : res.cells) {
    const std::string local = c.local ? std::string(to_string(*c.local)) : std::string();
    if (periodic) {
      os << fmt17(c.h) << ',' << fmt17(c.h1) << ',' << fmt17(c.r) << ',' << to_string(c.verdict) << ',' << local
         << ',' << fmt17(c.y_bar) << ',' << fmt17(c.z1) << ',' << c.notes << '\n';
    } else {
      os << fmt17(c.h) << ',' << fmt17(c.r) << ',' << to_string(c.verdict) << ',' << local << ','
         << fmt17(c.y_bar) << ',' << fmt17(c.r1) << ',' << fmt17(c.r2) << ',' << c.notes << '\n';
    }
  }
}

/// r1(h), r2(h) and the line r = h on the sweep's h values.
inline void write_boundary_csv(std::ostream& os, const Range& h) {
  os << kBoundaryHeader << '\n';
  for (std::size_t i = 0; i < h.n; ++i) {
    const double hv = h.at(i);
    const auto th = thresholds(hv);
    os << fmt17(hv) << ',' << fmt17(th.r1) << ',' << fmt17(th.r2) << ',' << fmt17(hv) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line, std::size_t expected) {
  std::vector<std::string> out;
  std::size_t start = 0;
  // the last field (notes) takes the rest of the line
  while (out.size() + 1 < expected) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) break;
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  out.push_back(line.substr(start));
  if (out.size() != expected) throw Error(ErrorCode::InvalidArgument, "malformed CSV row: " + line);
  return out;
}

inline double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorCode::InvalidArgument, "bad number '" + s + "'");
  return v;
}

inline VerdictTag parse_verdict(const std::string& s) {
  for (auto t : {VerdictTag::GloballyStable, VerdictTag::LocallyStableGlobalOpen, VerdictTag::AbsorbingBox,
                 VerdictTag::Unstable, VerdictTag::NotApplicable}) {
    if (s == to_string(t)) return t;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown verdict '" + s + "'");
}

inline std::optional<LocalVerdict> parse_local(const std::string& s) {
  if (s.empty()) return std::nullopt;
  for (auto t : {LocalVerdict::LAS, LocalVerdict::Unstable, LocalVerdict::Marginal}) {
    if (s == to_string(t)) return t;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown local verdict '" + s + "'");
}

}  // namespace detail

inline SweepResult read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::InvalidArgument, "empty sweep CSV");
  SweepResult res;
  if (line == kPeriodicHeader) {
    res.mode = SweepMode::Periodic;
  } else if (line != kConstantHeader) {
    throw Error(ErrorCode::InvalidArgument, "unknown sweep CSV header");
  }
  while (std::getline(is, line)) {
    const auto f = detail::split_fields(line, 8);
    SweepCell c;
    if (res.mode == SweepMode::Periodic) {
      c.h = detail::parse_double(f[0]);
      c.h1 = detail::parse_double(f[1]);
      c.r = detail::parse_double(f[2]);
      c.verdict = detail::parse_verdict(f[3]);
      c.local = detail::parse_local(f[4]);
      c.y_bar = detail::parse_double(f[5]);
      c.z1 = detail::parse_double(f[6]);
    } else {
      c.h = detail::parse_double(f[0]);
      c.r = detail::parse_double(f[1]);
      c.verdict = detail::parse_verdict(f[2]);
      c.local = detail::parse_local(f[3]);
      c.y_bar = detail::parse_double(f[4]);
      c.r1 = detail::parse_double(f[5]);
      c.r2 = detail::parse_double(f[6]);
    }
    c.notes = f[7];
    res.cells.push_back(std::move(c));
  }
  return res;
}

}  // namespace ricker
