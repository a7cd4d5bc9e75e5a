#pragma once

// Osculating elements, the trace Γ they sweep in parameter space, and the
// pairwise nesting verification along an arc.
//
// Each family's parameter formulas are evaluated as Taylor<2> series in t,
// so Γ(t) is the constant coefficient and Γ'(t) the linear one. The tangent
// never comes from differencing neighbouring samples.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "tait/conics.hpp"
#include "tait/curves.hpp"
#include "tait/error.hpp"
#include "tait/family.hpp"
#include "tait/oracle.hpp"
#include "tait/taylor.hpp"

namespace tait {

struct TraceSample {
  double t = 0.0;
  Vec3 params{};
  Vec3 tangent{};  // dΓ/dt
};

namespace detail {

struct ParamSeries {
  Taylor<2> p1, p2, p3;
};

inline ParamSeries circle_params(const ParamCurve& c, double t) {
  const auto e = euclidean_series(c, t);
  const Taylor<2> k = e.kappa;
  if (std::abs(k.value()) < regularity_floor) throw PreconditionError("zero curvature", t);
  const Taylor<2> v = truncate<2>(e.speed);
  const Taylor<2> nx = -truncate<2>(e.yd) / v;
  const Taylor<2> ny = truncate<2>(e.xd) / v;
  const double sign = k.value() > 0 ? 1.0 : -1.0;
  return {truncate<2>(e.gamma.x) + nx / k, truncate<2>(e.gamma.y) + ny / k, sign / k};
}

inline ParamSeries hooke_params(const ParamCurve& c, double t) {
  const auto s = centroaffine_series(c, t);
  if (std::abs(s.p.value()) < regularity_floor) throw PreconditionError("zero centroaffine curvature", t);
  const Taylor<2> x = truncate<2>(s.gamma.x), y = truncate<2>(s.gamma.y);
  const Taylor<2> vx = truncate<2>(s.vx), vy = truncate<2>(s.vy);
  return {s.p * y * y + vy * vy, -(s.p * x * y + vx * vy), s.p * x * x + vx * vx};
}

inline ParamSeries kepler_params(const ParamCurve& c, double t) {
  const auto p = polar_series(c, t);
  const Taylor<2> u = truncate<2>(p.u), u1 = truncate<2>(p.u1);
  const Taylor<2> cc = u + p.u2;
  if (std::abs(cc.value()) < regularity_floor)
    throw PreconditionError("osculating Kepler conic degenerates to a line (c = 0)", t);
  const auto [sn, cs] = sincos(truncate<2>(p.theta));
  // u = c + a cosθ + b sinθ with c < 0 is the second branch of the Kepler
  // hyperbola (a, b, -c), the one that bends away from the focus.
  const double branch = cc.value() > 0 ? 1.0 : -1.0;
  return {(u - cc) * cs - u1 * sn, (u - cc) * sn + u1 * cs, branch * cc};
}

inline ParamSeries vparabola_params(const ParamCurve& c, double t) {
  const auto g = graph_series(c, t);
  const Taylor<2> x = truncate<2>(g.gamma.x), y = truncate<2>(g.gamma.y);
  const Taylor<2> y1 = truncate<2>(g.y1), y2 = g.y2;
  return {0.5 * y2, y1 - x * y2, y - x * y1 + 0.5 * x * x * y2};
}

inline ParamSeries flinear_params(const ParamCurve& c, double t) {
  const auto g = graph_series(c, t);
  const Taylor<2> x = truncate<2>(g.gamma.x), y = truncate<2>(g.gamma.y);
  const Taylor<2> y1 = truncate<2>(g.y1), y2 = g.y2;
  if (!(y1.value() < 0.0)) throw PreconditionError("increasing graph; fractional-linear osculation needs y' < 0", t);
  if (std::abs(y2.value()) < regularity_floor) throw PreconditionError("inflection (y'' = 0)", t);
  const Taylor<2> d = -2.0 * y1 / y2;  // x - a
  const Taylor<2> c2 = -y1 * d * d;
  if (!(c2.value() > 0.0)) throw PreconditionError("fractional-linear osculation needs c^2 > 0", t);
  return {x - d, y - c2 / d, sqrt(c2)};
}

inline ParamSeries param_series(const ParamCurve& c, Family f, double t) {
  switch (f) {
    case Family::circle: return circle_params(c, t);
    case Family::hooke: return hooke_params(c, t);
    case Family::kepler: return kepler_params(c, t);
    case Family::vparabola: return vparabola_params(c, t);
    case Family::flinear: return flinear_params(c, t);
  }
  return {};
}

inline double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace detail

// Γ(t) together with Γ'(t).
inline TraceSample osculating_jet(const ParamCurve& c, Family family, double t) {
  const auto s = detail::param_series(c, family, t);
  return {t, {s.p1[0], s.p2[0], s.p3[0]}, {s.p1[1], s.p2[1], s.p3[1]}};
}

inline ConicElement osculating_element(const ParamCurve& c, Family family, double t) {
  return {family, osculating_jet(c, family, t).params};
}

struct FamilyTrace {
  Family family = Family::circle;
  std::vector<TraceSample> samples;
  std::string curve_label;
};

// n samples over [t0, t1]; closed curves are sampled periodically so the
// last sample does not duplicate the first.
inline FamilyTrace family_trace(const ParamCurve& c, Family family, int n) {
  if (n < 2) throw Error("a trace needs at least 2 samples");
  const bool periodic = is_closed(c);
  const double step = (c.t1 - c.t0) / (periodic ? n : n - 1);
  FamilyTrace tr{family, {}, c.label};
  tr.samples.reserve(n);
  for (int i = 0; i < n; ++i) tr.samples.push_back(osculating_jet(c, family, c.t0 + step * i));
  return tr;
}

struct NullResidual {
  double max = 0.0;
  std::size_t skipped = 0;
};

inline constexpr double degenerate_tangent = 1e-12;

inline NullResidual null_residual(const FamilyTrace& tr) {
  if (tr.samples.empty()) throw Error("null residual of an empty trace");
  NullResidual r;
  for (const auto& s : tr.samples) {
    const double n = detail::norm(s.tangent);
    if (n < degenerate_tangent) {
      ++r.skipped;
      continue;
    }
    r.max = std::max(r.max, std::abs(lorentz_form(tr.family, s.tangent)) / (n * n));
  }
  return r;
}

struct EndpointInterval {
  SeparationInterval interval;
  double oriented = 0.0;  // nonnegative is the expected sign
  // Circle family only: length of the (a, b) projection of Γ and |r(t1) - r(t0)|.
  double projection_length = 0.0;
  double radius_change = 0.0;
};

namespace detail {

// Composite Simpson on samples that may be unevenly spaced.
inline double integrate_samples(const std::vector<double>& t, const std::vector<double>& f) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = t[i + 1] - t[i], h1 = t[i + 2] - t[i + 1];
    const double h = h0 + h1;
    total += h / 6.0 *
             ((2.0 - h1 / h0) * f[i] + (h * h / (h0 * h1)) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < n) total += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
  return total;
}

}  // namespace detail

inline EndpointInterval endpoint_interval(const FamilyTrace& tr) {
  if (tr.samples.size() < 2) throw Error("endpoint interval needs at least 2 samples");
  const auto& s = tr.samples;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (detail::norm(s[i].tangent) < degenerate_tangent)
      throw PreconditionError("vertex inside the trace (stationary point of the trace)", s[i].t);
    if (detail::dot(s[i].tangent, s[i + 1].tangent) < 0.0)
      throw PreconditionError("vertex inside the trace (tangent reverses)", 0.5 * (s[i].t + s[i + 1].t));
  }
  EndpointInterval e;
  const ConicElement first{tr.family, s.front().params}, last{tr.family, s.back().params};
  e.interval = {tr.family, lorentz_form(tr.family, difference(first, last))};
  e.oriented = oriented_interval(tr.family, e.interval.value);
  if (tr.family == Family::circle) {
    std::vector<double> ts, speeds;
    for (const auto& x : s) {
      ts.push_back(x.t);
      speeds.push_back(std::hypot(x.tangent[0], x.tangent[1]));
    }
    e.projection_length = detail::integrate_samples(ts, speeds);
    e.radius_change = std::abs(s.back().params[2] - s.front().params[2]);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Pairwise verification

struct PairCounts {
  std::size_t nested = 0;
  std::size_t tangent = 0;
  std::size_t intersecting = 0;
  std::size_t separated = 0;
  std::size_t undetermined = 0;
};

struct OracleAgreement {
  std::size_t checked = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t resolved = 0;            // undetermined verdicts settled by the oracle
  std::size_t resolution_limited = 0;  // disagreements too close to call
};

struct Violation {
  double t_i = 0.0;
  double t_j = 0.0;
  std::string details;
};

struct FoliationReport {
  std::string curve_label;
  Family family = Family::circle;
  std::size_t n_samples = 0;
  std::vector<VertexRecord> vertices;
  double max_null_residual = 0.0;
  std::size_t null_skipped = 0;
  double min_pairwise_interval = 0.0;
  PairCounts pair_verdicts;
  bool oracle_used = false;
  OracleAgreement oracle_agreement;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // first max_listed_violations only
  bool pass = false;

  static constexpr std::size_t max_listed_violations = 100;
};

namespace detail {

inline bool oracle_matches(Relation r, OracleRelation o) {
  switch (r) {
    case Relation::nested: return o == OracleRelation::nested;
    case Relation::tangent: return o == OracleRelation::tangent;
    case Relation::intersecting: return o == OracleRelation::intersecting;
    case Relation::separated: return o == OracleRelation::disjoint_unnested;
    case Relation::undetermined: return true;
  }
  return false;
}

struct PairOutcome {
  std::size_t i = 0, j = 0;
  Relation relation = Relation::undetermined;
  double oriented = 0.0;
  bool oracle_ran = false;
  OracleReport oracle;
};

template <typename F>
void parallel_rows(std::size_t rows, F&& body) {
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1 || rows < 8) {
    for (std::size_t i = 0; i < rows; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < rows; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

inline FoliationReport verify_foliation(const ParamCurve& c, Family family, int n, bool use_oracle) {
  FoliationReport rep;
  rep.curve_label = c.label;
  rep.family = family;
  rep.n_samples = static_cast<std::size_t>(n);
  rep.oracle_used = use_oracle;
  rep.vertices = find_vertices(c, family);

  const FamilyTrace tr = family_trace(c, family, n);
  const NullResidual nr = null_residual(tr);
  rep.max_null_residual = nr.max;
  rep.null_skipped = nr.skipped;

  const std::size_t m = tr.samples.size();
  std::vector<std::vector<detail::PairOutcome>> rows(m);
  detail::parallel_rows(m, [&](std::size_t i) {
    const ConicElement ci{family, tr.samples[i].params};
    for (std::size_t j = i + 1; j < m; ++j) {
      const ConicElement cj{family, tr.samples[j].params};
      detail::PairOutcome o;
      o.i = i;
      o.j = j;
      const SeparationVerdict v = separation_verdict(ci, cj);
      o.relation = v.relation;
      o.oriented = oriented_interval(family, v.interval.value);
      if (use_oracle) {
        o.oracle = nested_oracle_report(ci, cj);
        o.oracle_ran = true;
      }
      rows[i].push_back(o);
    }
  });

  rep.min_pairwise_interval = m > 1 ? INFINITY : 0.0;
  auto violate = [&](const detail::PairOutcome& o, std::string details) {
    ++rep.violation_count;
    if (rep.violations.size() < FoliationReport::max_listed_violations)
      rep.violations.push_back({tr.samples[o.i].t, tr.samples[o.j].t, std::move(details)});
  };
  for (const auto& row : rows) {
    for (const auto& o : row) {
      rep.min_pairwise_interval = std::min(rep.min_pairwise_interval, o.oriented);
      switch (o.relation) {
        case Relation::nested: ++rep.pair_verdicts.nested; break;
        case Relation::tangent: ++rep.pair_verdicts.tangent; break;
        case Relation::intersecting: ++rep.pair_verdicts.intersecting; break;
        case Relation::separated: ++rep.pair_verdicts.separated; break;
        case Relation::undetermined: ++rep.pair_verdicts.undetermined; break;
      }
      const std::string predicate(relation_name(o.relation));
      if (!o.oracle_ran) {
        if (o.relation != Relation::nested) violate(o, "predicate " + predicate);
        continue;
      }
      auto& agreement = rep.oracle_agreement;
      ++agreement.checked;
      const std::string oracle(oracle_relation_name(o.oracle.relation));
      if (o.relation == Relation::undetermined) {
        ++agreement.resolved;
        if (o.oracle.relation != OracleRelation::nested) violate(o, "predicate undetermined, oracle " + oracle);
        continue;
      }
      if (detail::oracle_matches(o.relation, o.oracle.relation)) {
        ++agreement.agree;
        if (o.relation != Relation::nested) violate(o, "predicate " + predicate + ", oracle " + oracle);
      } else if (o.oracle.resolution_limited) {
        ++agreement.resolution_limited;
        if (o.relation != Relation::nested) violate(o, "predicate " + predicate + ", oracle resolution-limited");
      } else {
        ++agreement.disagree;
        violate(o, "predicate " + predicate + ", oracle " + oracle);
      }
    }
  }
  rep.pass = rep.vertices.empty() && rep.violation_count == 0;
  return rep;
}

}  // namespace tait
