#pragma once

// JSON views of the reports. Needs nlohmann/json on the include path.

#include <string>

#include <json.hpp>

#include "ricker/constant.hpp"
#include "ricker/orbit.hpp"
#include "ricker/periodic.hpp"
#include "ricker/verdict.hpp"

namespace ricker {

using nlohmann::json;

namespace detail {
inline json eig_parts(const EigenPair& e) {
  return {{"eig_re", {e.first.real(), e.second.real()}}, {"eig_im", {e.first.imag(), e.second.imag()}}};
}

inline void put_stocking(json& j, const ModelParams& p) {
  j["r"] = p.r();
  if (p.is_constant()) {
    j["h"] = p.h();
  } else {
    j["h"] = json(std::vector<double>(p.stocking().begin(), p.stocking().end()));
    if (p.period() == 2) {
      j["h0"] = p.h(0);
      j["h1"] = p.h(1);
    }
  }
}
}  // namespace detail

inline json to_json(const ModelParams& p, const EquilibriumReport& e) {
  json j;
  detail::put_stocking(j, p);
  j["y_bar"] = e.y_bar;
  j["trace"] = e.trace;
  j["det"] = e.det;
  j.update(detail::eig_parts(e.eigenvalues));
  j["verdict"] = to_string(e.local_verdict);
  j["residual"] = e.residual;
  return j;
}

inline json to_json(const ModelParams& p, const TwoCycleReport& t) {
  json j;
  detail::put_stocking(j, p);
  j.erase("h");
  j["z0"] = t.z0;
  j["z1"] = t.z1;
  j["trace"] = t.trace;
  j["det"] = t.det;
  j.update(detail::eig_parts(t.eigenvalues));
  j["verdict"] = to_string(t.local_verdict);
  j["residual"] = std::max(std::abs(t.residuals.first), std::abs(t.residuals.second));
  j["method"] = to_string(t.method);
  return j;
}

inline json to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

inline json to_json(const ModelParams& p, const ClassificationVerdict& v) {
  json j;
  detail::put_stocking(j, p);
  if (!p.is_constant()) j.erase("h");
  j["verdict"] = to_string(v.tag);
  j["local"] = v.local ? json(to_string(*v.local)) : json(nullptr);
  j["provenance"] = v.provenance;
  if (v.witness) j["witness"] = {{"a", v.witness->a}, {"b", v.witness->b}};
  if (v.enclosure) j["enclosure"] = to_json(*v.enclosure);
  if (v.even_range) j["even_range"] = to_json(*v.even_range);
  if (v.odd_range) j["odd_range"] = to_json(*v.odd_range);
  j["notes"] = v.notes;
  return j;
}

inline json to_json(const QuadPoint& q) { return {{"x", q.x}, {"y", q.y}, {"u", q.u}, {"v", q.v}}; }

inline json to_json(const ModelParams& p, const ArtificialCycleSet& s) {
  json j;
  detail::put_stocking(j, p);
  j.erase("h");
  j["resolution"] = s.resolution;
  j["count"] = s.count();
  j["cycles"] = json::array();
  for (const auto& c : s.cycles) {
    json e = to_json(c.point);
    e["kind"] = to_string(c.kind);
    j["cycles"].push_back(e);
  }
  j["two_cycle"] = s.two_cycle ? to_json(*s.two_cycle) : json(nullptr);
  return j;
}

inline json to_json(const NSCrossing& c) {
  return {{"s", c.s}, {"s_lo", c.s_lo}, {"s_hi", c.s_hi}, {"modulus", c.modulus}, {"argument", c.argument}};
}

}  // namespace ricker
