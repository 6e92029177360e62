#pragma once

// ricker_lab command line. Exit codes: 0 ok, 2 usage or validation error,
// 3 numeric failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ricker/constant.hpp"
#include "ricker/json_io.hpp"
#include "ricker/orbit.hpp"
#include "ricker/periodic.hpp"
#include "ricker/sweep.hpp"

namespace ricker::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kNumeric = 3;

/// Reads `key = value` lines ('#' starts a comment). A value may hold
/// several whitespace-separated tokens.
inline std::vector<std::pair<std::string, std::vector<std::string>>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config file " + path);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "config line without '=': " + line);
      }
      continue;
    }
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    std::istringstream val_in(line.substr(eq + 1));
    std::vector<std::string> values;
    for (std::string tok; val_in >> tok;) values.push_back(tok);
    if (key.empty()) throw Error(ErrorCode::InvalidArgument, "config line without key: " + line);
    out.emplace_back(key, values);
  }
  return out;
}

/// Splices `--config FILE` into the argument list. Keys already given on
/// the command line win; the key `command` names the subcommand.
inline std::vector<std::string> apply_config(std::vector<std::string> args) {
  const auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw Error(ErrorCode::InvalidArgument, "--config needs a file");
  const std::string path = *(it + 1);
  args.erase(it, it + 2);
  for (const auto& [key, values] : read_config(path)) {
    if (key == "command") {
      if (values.size() != 1) throw Error(ErrorCode::InvalidArgument, "config 'command' takes one value");
      if (args.empty() || args.front().rfind("--", 0) == 0) args.insert(args.begin(), values.front());
      continue;
    }
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    args.push_back(flag);
    args.insert(args.end(), values.begin(), values.end());
  }
  return args;
}

struct StockingOpts {
  std::optional<double> h, h0, h1;
  double r = 0.0;

  ModelParams params() const {
    if (h && !h0 && !h1) return ModelParams::constant(r, *h);
    if (!h && h0 && h1) return ModelParams(r, {*h0, *h1});
    throw Error(ErrorCode::InvalidArgument, "give either --h or both --h0 and --h1");
  }
};

inline void add_stocking(CLI::App* sub, StockingOpts& s) {
  sub->add_option("--r", s.r, "growth rate r > 0")->required();
  sub->add_option("--h", s.h, "constant stocking h >= 0");
  sub->add_option("--h0", s.h0, "stocking at even steps (h_0)");
  sub->add_option("--h1", s.h1, "stocking at odd steps (h_1)");
}

inline std::string complex_str(const std::complex<double>& z) {
  std::ostringstream os;
  os << std::setprecision(10) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

inline void print_interval(std::ostream& out, const char* label, const Interval& i) {
  out << label << " = [" << fmt17(i.lo) << ", " << fmt17(i.hi) << "]\n";
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  try {
    args = apply_config(std::move(args));
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Delayed Ricker model with stocking: equilibria, 2-cycles, certification, sweeps"};
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  app.require_subcommand(1);
  bool as_json = false;

  StockingOpts st;
  auto* equilibrium = app.add_subcommand("equilibrium", "equilibrium, Jacobian and local verdict (constant h)");
  add_stocking(equilibrium, st);
  equilibrium->add_flag("--json", as_json, "print JSON");

  StockingOpts st2;
  auto* two_cycle = app.add_subcommand("two-cycle", "2-cycle of the 2-periodic model and its Jury verdict");
  add_stocking(two_cycle, st2);
  two_cycle->add_flag("--json", as_json, "print JSON");

  StockingOpts st3;
  int certify_res = 1024;
  auto* certify = app.add_subcommand("certify", "global-stability certification");
  add_stocking(certify, st3);
  certify->add_option("--resolution", certify_res, "artificial-cycle scan resolution (periodic)");
  certify->add_flag("--json", as_json, "print JSON");

  std::string mode = "constant";
  std::vector<double> h_range{0.1, 10.0}, r_range{0.1, 8.0}, h0_range{0.1, 5.0}, h1_range{0.1, 5.0};
  std::size_t nh = 200, nr = 200, nh0 = 50, nh1 = 50;
  double sweep_r = 1.0;
  std::string out_path, boundary_path;
  unsigned threads = 0;
  int sweep_res = 256;
  auto* sweep = app.add_subcommand("sweep", "verdict map over a parameter grid (CSV)");
  sweep->add_option("--mode", mode, "constant | periodic")->check(CLI::IsMember({"constant", "periodic"}));
  sweep->add_option("--h-range", h_range, "h lo hi (constant)")->expected(2);
  sweep->add_option("--r-range", r_range, "r lo hi (constant)")->expected(2);
  sweep->add_option("--nh", nh, "h points (constant)");
  sweep->add_option("--nr", nr, "r points (constant)");
  sweep->add_option("--h0-range", h0_range, "h0 lo hi (periodic)")->expected(2);
  sweep->add_option("--h1-range", h1_range, "h1 lo hi (periodic)")->expected(2);
  sweep->add_option("--nh0", nh0, "h0 points (periodic)");
  sweep->add_option("--nh1", nh1, "h1 points (periodic)");
  sweep->add_option("--r", sweep_r, "growth rate (periodic)");
  sweep->add_option("--resolution", sweep_res, "artificial-cycle scan resolution (periodic)");
  sweep->add_option("--out", out_path, "cell CSV file (default stdout)");
  sweep->add_option("--boundary", boundary_path, "boundary-curve CSV file (constant)");
  sweep->add_option("--threads", threads, "worker threads (default RICKER_LAB_THREADS or all cores)");

  StockingOpts st4;
  double x0 = 1.0, xm1 = 1.0;
  std::size_t n_steps = 1000, transient = 0;
  std::string orbit_out;
  auto* orbit = app.add_subcommand("orbit", "orbit dump: n,x_n,x_{n-1},parity");
  add_stocking(orbit, st4);
  orbit->add_option("--x0", x0, "x_0");
  orbit->add_option("--xm1", xm1, "x_{-1}");
  orbit->add_option("--n", n_steps, "rows to emit");
  orbit->add_option("--transient", transient, "steps dropped before the first row");
  orbit->add_option("--out", orbit_out, "CSV file (default stdout)");

  std::optional<double> ns_h, ns_h0, ns_h1;
  std::vector<double> ns_range{0.1, 3.0};
  int ns_steps = 200;
  auto* scan = app.add_subcommand("scan-ns", "locate a Neimark-Sacker crossing in r");
  scan->add_option("--h", ns_h, "constant stocking");
  scan->add_option("--h0", ns_h0, "even-step stocking");
  scan->add_option("--h1", ns_h1, "odd-step stocking");
  scan->add_option("--r-range", ns_range, "r lo hi")->expected(2);
  scan->add_option("--steps", ns_steps, "coarse samples before bisection");
  scan->add_flag("--json", as_json, "print JSON");

  StockingOpts st5;
  int art_res = 1024;
  auto* artificial = app.add_subcommand("artificial-cycles", "fixed points of G1 o G0 other than the 2-cycle");
  add_stocking(artificial, st5);
  artificial->add_option("--resolution", art_res, "grid scan resolution");
  artificial->add_flag("--json", as_json, "print JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*equilibrium) {
      const auto p = st.params();
      const auto rep = solve_equilibrium(p);
      if (as_json) {
        out << to_json(p, rep).dump(2) << '\n';
      } else {
        out << "y_bar = " << fmt17(rep.y_bar) << "\ntrace = " << fmt17(rep.trace) << "\ndet = " << fmt17(rep.det)
            << "\neigenvalues = " << complex_str(rep.eigenvalues.first) << ", "
            << complex_str(rep.eigenvalues.second) << "\nverdict = " << to_string(rep.local_verdict)
            << "\nresidual = " << fmt17(rep.residual) << '\n';
      }
    } else if (*two_cycle) {
      const auto p = st2.params();
      const auto rep = solve_two_cycle(p);
      const auto clauses = corollary_shortcuts(rep, p);
      if (as_json) {
        auto j = to_json(p, rep);
        j["corollary"] = json::array();
        for (auto c : clauses) j["corollary"].push_back(to_string(c));
        out << j.dump(2) << '\n';
      } else {
        out << "z0 = " << fmt17(rep.z0) << "\nz1 = " << fmt17(rep.z1) << "\ntrace = " << fmt17(rep.trace)
            << "\ndet = " << fmt17(rep.det) << "\neigenvalues = " << complex_str(rep.eigenvalues.first) << ", "
            << complex_str(rep.eigenvalues.second) << "\nverdict = " << to_string(rep.local_verdict) << '\n';
        for (auto c : clauses) out << "shortcut " << to_string(c) << '\n';
      }
    } else if (*certify) {
      const auto p = st3.params();
      PeriodicCertifyOptions opts;
      opts.scan_resolution = certify_res;
      const auto v = p.is_constant() ? certify_constant(p) : certify_periodic(p, opts);
      // intersection points of the two nullcline curves (constant h > 0)
      std::vector<PlanarPoint> pts;
      if (p.is_constant() && p.h() > 0.0) {
        try {
          pts = find_intersections(p);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::CountMismatch) throw;
        }
      }
      if (as_json) {
        auto j = to_json(p, v);
        if (p.is_constant() && p.h() > 0.0) {
          j["intersections"] = json::array();
          for (const auto& q : pts) j["intersections"].push_back({q.x, q.y});
        }
        out << j.dump(2) << '\n';
      } else {
        out << to_string(v.tag) << " (" << v.provenance << ")\n";
        for (const auto& q : pts) out << "intersection (" << fmt17(q.x) << ", " << fmt17(q.y) << ")\n";
        if (v.local) out << "local = " << to_string(*v.local) << '\n';
        if (v.witness) out << "witness (a, b) = (" << fmt17(v.witness->a) << ", " << fmt17(v.witness->b) << ")\n";
        if (v.enclosure) print_interval(out, "box", *v.enclosure);
        if (v.even_range) print_interval(out, "even", *v.even_range);
        if (v.odd_range) print_interval(out, "odd", *v.odd_range);
        for (const auto& n : v.notes) out << "note: " << n << '\n';
      }
    } else if (*sweep) {
      SweepSpec spec;
      if (mode == "constant") {
        spec.mode = SweepMode::Constant;
        spec.outer = {h_range[0], h_range[1], nh};
        spec.inner = {r_range[0], r_range[1], nr};
      } else {
        spec.mode = SweepMode::Periodic;
        spec.outer = {h0_range[0], h0_range[1], nh0};
        spec.inner = {h1_range[0], h1_range[1], nh1};
        spec.r = sweep_r;
        spec.scan_resolution = sweep_res;
      }
      const auto res = run_sweep(spec, threads);
      if (out_path.empty()) {
        write_sweep_csv(out, res);
      } else {
        std::ofstream f(out_path);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + out_path);
        write_sweep_csv(f, res);
      }
      if (!boundary_path.empty() && spec.mode == SweepMode::Constant) {
        std::ofstream f(boundary_path);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + boundary_path);
        write_boundary_csv(f, spec.outer);
      }
    } else if (*orbit) {
      const auto p = st4.params();
      if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "--n must be >= 1");
      const auto xs = simulate(p, x0, xm1, transient + n_steps);
      std::ofstream file;
      if (!orbit_out.empty()) {
        file.open(orbit_out);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + orbit_out);
      }
      std::ostream& os = orbit_out.empty() ? out : file;
      os << "n,x_n,x_nm1,parity\n";
      for (std::size_t k = transient; k < transient + n_steps; ++k) {
        const std::size_t n = k + 1;  // xs[k] = x_{k+1}
        const double prev = k == 0 ? x0 : xs[k - 1];
        os << n << ',' << fmt17(xs[k]) << ',' << fmt17(prev) << ',' << (n % 2 == 0 ? "even" : "odd") << '\n';
      }
    } else if (*scan) {
      ParamsFamily family;
      if (ns_h && !ns_h0 && !ns_h1) {
        const double h = *ns_h;
        family = [h](double r) { return ModelParams::constant(r, h); };
      } else if (!ns_h && ns_h0 && ns_h1) {
        const double h0 = *ns_h0, h1 = *ns_h1;
        family = [h0, h1](double r) { return ModelParams(r, {h0, h1}); };
      } else {
        throw Error(ErrorCode::InvalidArgument, "give either --h or both --h0 and --h1");
      }
      const auto c = neimark_sacker_scan(family, ns_range[0], ns_range[1], ns_steps);
      if (as_json) {
        out << to_json(c).dump(2) << '\n';
      } else {
        out << "crossing r = " << fmt17(c.s) << " in [" << fmt17(c.s_lo) << ", " << fmt17(c.s_hi)
            << "]\nmodulus = " << fmt17(c.modulus) << "\nargument = " << fmt17(c.argument) << '\n';
      }
    } else if (*artificial) {
      const auto p = st5.params();
      const auto set = find_artificial_cycles(p, art_res);
      if (as_json) {
        out << to_json(p, set).dump(2) << '\n';
      } else {
        out << "count = " << set.count() << " (scan " << set.resolution << "^2)\n";
        for (const auto& c : set.cycles) {
          out << to_string(c.kind) << ' ' << fmt17(c.point.x) << ' ' << fmt17(c.point.y) << ' '
              << fmt17(c.point.u) << ' ' << fmt17(c.point.v) << '\n';
        }
        if (set.two_cycle) out << "two-cycle " << fmt17(set.two_cycle->x) << ' ' << fmt17(set.two_cycle->y) << '\n';
      }
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.is_validation_error() ? kUsage : kNumeric;
  }
  return kOk;
}

}  // namespace ricker::cli
