#pragma once

// JSON and CSV serialization of library results.
//
// JSON objects keep insertion order and doubles print in shortest
// round-trip form, so dump -> parse -> dump reproduces the same bytes.
// CSV cells carry 17 significant digits.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tait/curves.hpp"
#include "tait/family.hpp"
#include "tait/osculate.hpp"
#include "tait/transforms.hpp"

namespace tait {

using Json = nlohmann::ordered_json;

inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Infinite or NaN values are written as null.
inline Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json to_json(const VertexRecord& v) {
  return Json{{"family", family_name(v.family)}, {"t", v.t}, {"discriminant_kind", discriminant_name(v.discriminant_kind)}};
}

inline Json to_json(const std::vector<VertexRecord>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline Json to_json(const FoliationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(Json{{"t_i", v.t_i}, {"t_j", v.t_j}, {"details", v.details}});
  const auto& p = r.pair_verdicts;
  const auto& o = r.oracle_agreement;
  return Json{
      {"curve_label", r.curve_label},
      {"family", family_name(r.family)},
      {"n_samples", r.n_samples},
      {"vertices", to_json(r.vertices)},
      {"max_null_residual", json_number(r.max_null_residual)},
      {"null_skipped", r.null_skipped},
      {"min_pairwise_interval", json_number(r.min_pairwise_interval)},
      {"pair_verdicts",
       {{"nested", p.nested},
        {"tangent", p.tangent},
        {"intersecting", p.intersecting},
        {"separated", p.separated},
        {"undetermined", p.undetermined}}},
      {"oracle_used", r.oracle_used},
      {"oracle_agreement",
       {{"checked", o.checked},
        {"agree", o.agree},
        {"disagree", o.disagree},
        {"resolved", o.resolved},
        {"resolution_limited", o.resolution_limited}}},
      {"violation_count", r.violation_count},
      {"violations", violations},
      {"result", r.pass ? "PASS" : "FAIL"},
  };
}

inline Json to_json(const DualLawPair& d) { return Json{{"a", d.a}, {"b", d.b}, {"exponent", d.exponent}}; }

inline Json to_json(const FamilyTrace& tr) {
  Json samples = Json::array();
  for (const auto& s : tr.samples)
    samples.push_back(Json{{"t", s.t}, {"params", s.params}, {"tangent", s.tangent}});
  return Json{{"curve_label", tr.curve_label}, {"family", family_name(tr.family)}, {"samples", samples}};
}

inline void write_csv(std::ostream& os, const FamilyTrace& tr) {
  os << "t,p1,p2,p3,dp1,dp2,dp3\n";
  for (const auto& s : tr.samples) {
    os << csv_number(s.t);
    for (double v : s.params) os << ',' << csv_number(v);
    for (double v : s.tangent) os << ',' << csv_number(v);
    os << '\n';
  }
}

inline void write_csv(std::ostream& os, const std::vector<Point2>& from, const std::vector<Point2>& to) {
  os << "x,y,mapped_x,mapped_y\n";
  for (std::size_t i = 0; i < from.size() && i < to.size(); ++i)
    os << csv_number(from[i].x) << ',' << csv_number(from[i].y) << ',' << csv_number(to[i].x) << ','
       << csv_number(to[i].y) << '\n';
}

}  // namespace tait
