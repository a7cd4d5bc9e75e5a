#pragma once

// Geometric ground truth for conic pairs.
//
// Nothing here looks at the Lorentzian intervals. Every decision comes from
// walking the boundary of one conic and evaluating the other conic's side
// function along it: sign changes are crossings, an extremum inside the
// tangency band is a touching point, a strict sign is containment.
//
// Interiors:
//   circle, hooke ellipse   the bounded region
//   hooke hyperbola         the convex side of each branch (Q(x, y) >= 1)
//   kepler                  the origin side along every ray (1/r > c + a cosθ + b sinθ)
//   vparabola               above the graph when a > 0, below when a < 0
//   flinear                 the convex side of each branch ((x-a)(y-b) > c^2)
//
// Circle pairs skip the walk: centre distance against the radii is exact.
//
// Unbounded branches are compactified: the boundary parameter runs over a
// closed interval and the side function is multiplied by a positive weight
// that keeps it finite at the ends. End samples enter crossing decisions but
// never count as touching points (tangency at infinity is not reported).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "tait/conics.hpp"
#include "tait/error.hpp"
#include "tait/family.hpp"

namespace tait {

enum class Side { inside, on, outside };

enum class OracleRelation { nested, tangent, intersecting, disjoint_unnested };

inline constexpr std::string_view oracle_relation_name(OracleRelation r) {
  switch (r) {
    case OracleRelation::nested: return "nested";
    case OracleRelation::tangent: return "tangent";
    case OracleRelation::intersecting: return "intersecting";
    case OracleRelation::disjoint_unnested: return "disjoint_unnested";
  }
  return "?";
}

struct OracleConfig {
  int samples = 720;          // per branch
  double tangency_band = 1e-8;
  double on_band = 1e-10;     // point_side
};

// Signed side value of `pt` relative to `c`: negative inside, positive outside.
inline double side_value(const ConicElement& c, Point2 pt) {
  const auto [p, q, r] = c.params;
  switch (c.family) {
    case Family::circle: return ((pt.x - p) * (pt.x - p) + (pt.y - q) * (pt.y - q) - r * r) / (r * r);
    case Family::hooke: {
      const double form = p * pt.x * pt.x + 2 * q * pt.x * pt.y + r * pt.y * pt.y;
      return hooke_determinant(c) > 0 ? form - 1.0 : 1.0 - form;
    }
    case Family::kepler: {
      const double rho = std::hypot(pt.x, pt.y);
      if (rho == 0.0) throw DomainError("Kepler side test at the origin");
      const double theta = std::atan2(pt.y, pt.x);
      return r + p * std::cos(theta) + q * std::sin(theta) - 1.0 / rho;
    }
    case Family::vparabola: {
      const double v = p * pt.x * pt.x + q * pt.x + r - pt.y;
      return p < 0 ? -v : v;
    }
    case Family::flinear: return r * r - (pt.x - p) * (pt.y - q);
  }
  return 0.0;
}

inline Side point_side(const ConicElement& c, Point2 pt, double band = 1e-10) {
  validate_conic(c);
  double v = side_value(c, pt);
  if (c.family == Family::kepler && std::abs(v) > band) {
    // Second branch of a Kepler hyperbola: 1/r = D(θ) - 2c along the ray,
    // where the side value is exactly 2c.
    const double second = v - 2.0 * c.params[2];
    if (std::abs(second) <= band) v = second;
  }
  if (std::abs(v) <= band) return Side::on;
  return v < 0 ? Side::inside : Side::outside;
}

namespace detail {

// One boundary branch, parameterized over [lo, hi].
struct Branch {
  double lo = 0.0;
  double hi = 0.0;
  bool open = false;  // ends lie at infinity
};

struct BoundaryWalk {
  std::vector<Branch> branches;
  // Boundary point at parameter φ and the positive weight applied to side values there.
  std::function<std::optional<Point2>(double)> point;
  std::function<double(double)> weight;
};

inline BoundaryWalk boundary_walk(const ConicElement& c) {
  using std::numbers::pi;
  const auto [p, q, r] = c.params;
  BoundaryWalk w;
  w.weight = [](double) { return 1.0; };
  switch (c.family) {
    case Family::circle:
      w.branches = {{0.0, 2 * pi, false}};
      w.point = [=](double phi) -> std::optional<Point2> {
        return Point2{p + r * std::cos(phi), q + r * std::sin(phi)};
      };
      break;
    case Family::hooke: {
      auto form = [=](double th) {
        const double cs = std::cos(th), sn = std::sin(th);
        return p * cs * cs + 2 * q * cs * sn + r * sn * sn;
      };
      w.point = [=](double th) -> std::optional<Point2> {
        const double f = form(th);
        if (!(f > 0)) return std::nullopt;
        const double rho = 1.0 / std::sqrt(f);
        return Point2{rho * std::cos(th), rho * std::sin(th)};
      };
      if (hooke_determinant(c) > 0) {
        w.branches = {{0.0, 2 * pi, false}};
      } else {
        const double mean = 0.5 * (p + r);
        const double amp = std::hypot(0.5 * (p - r), q);
        const double axis = 0.5 * std::atan2(q, 0.5 * (p - r));
        const double half = 0.5 * std::acos(std::clamp(-mean / amp, -1.0, 1.0));
        w.branches = {{axis - half, axis + half, true}, {axis - half + pi, axis + half + pi, true}};
        w.weight = [=](double th) { return std::max(form(th), 0.0); };
      }
      break;
    }
    case Family::vparabola:
      w.branches = {{-pi / 2, pi / 2, true}};
      w.point = [=](double phi) -> std::optional<Point2> {
        const double x = std::tan(phi);
        return Point2{x, p * x * x + q * x + r};
      };
      w.weight = [](double phi) { return std::cos(phi) * std::cos(phi); };
      break;
    case Family::flinear:
      w.branches = {{0.0, pi / 2, true}, {-pi / 2, 0.0, true}};
      w.point = [=](double phi) -> std::optional<Point2> {
        const double s = std::tan(phi);
        return Point2{p + r * s, q + r / s};
      };
      w.weight = [](double phi) { return std::abs(std::sin(phi) * std::cos(phi)); };
      break;
    case Family::kepler: break;  // handled in polar form
  }
  return w;
}

// Minimize f over [a, b] by golden-section search.
template <typename F>
double golden_min(F&& f, double a, double b, int iterations = 80) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations && b - a > 1e-14 * (1.0 + std::abs(a)); ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

// What a side function does along one branch.
struct BranchScan {
  double interior_min = INFINITY;
  double interior_max = -INFINITY;
  double end_min = INFINITY;  // open-end samples, only when outside the band
  double end_max = -INFINITY;
};

template <typename F>
BranchScan scan_branch(F&& f, const Branch& b, int n) {
  const double span = b.hi - b.lo;
  const double nudge = b.open ? 1e-9 * span : 0.0;
  std::vector<double> xs(n), vs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = b.lo + span * i / (n - 1);
    if (i == 0) xs[i] += nudge;
    if (i == n - 1) xs[i] -= nudge;
    vs[i] = f(xs[i]);
  }
  BranchScan s;
  const int first = b.open ? 1 : 0;
  const int last = b.open ? n - 2 : n - 1;
  for (int i = first; i <= last; ++i) {
    const int l = std::max(i - 1, 0), r = std::min(i + 1, n - 1);
    if (vs[i] <= vs[l] && vs[i] <= vs[r]) {
      const double m = (l < i && i < r) ? golden_min(f, xs[l], xs[r]) : vs[i];
      s.interior_min = std::min({s.interior_min, m, vs[i]});
    }
    if (vs[i] >= vs[l] && vs[i] >= vs[r]) {
      const double m = (l < i && i < r) ? -golden_min([&](double x) { return -f(x); }, xs[l], xs[r]) : vs[i];
      s.interior_max = std::max({s.interior_max, m, vs[i]});
    }
  }
  if (b.open) {
    for (int i : {0, n - 1}) {
      s.end_min = std::min(s.end_min, vs[i]);
      s.end_max = std::max(s.end_max, vs[i]);
    }
  }
  return s;
}

enum class Contact { inside, outside, touching, crossing, mixed };

struct ContactReport {
  Contact contact = Contact::inside;
  double clearance = INFINITY;  // smallest |extremum| among interior extrema
  bool sign_change = false;
};

// Combine branch scans of one side function.
inline ContactReport classify_scans(const std::vector<BranchScan>& scans, double band) {
  ContactReport rep;
  bool any_touch = false, any_inside = false, any_outside = false;
  for (const BranchScan& s : scans) {
    double lo = s.interior_min, hi = s.interior_max;
    if (std::abs(s.end_min) > band) lo = std::min(lo, s.end_min);
    if (std::abs(s.end_max) > band) hi = std::max(hi, s.end_max);
    if (std::isfinite(s.interior_min)) rep.clearance = std::min(rep.clearance, std::abs(s.interior_min));
    if (std::isfinite(s.interior_max)) rep.clearance = std::min(rep.clearance, std::abs(s.interior_max));
    if (lo < -band && hi > band) {
      rep.contact = Contact::crossing;
      rep.sign_change = true;
      return rep;
    }
    if (hi <= band && s.interior_max >= -band) any_touch = true;
    else if (lo >= -band && s.interior_min <= band) any_touch = true;
    else if (hi < -band) any_inside = true;
    else any_outside = true;
  }
  if (any_touch) rep.contact = Contact::touching;
  else if (any_inside && any_outside) rep.contact = Contact::mixed;
  else rep.contact = any_inside ? Contact::inside : Contact::outside;
  return rep;
}

// Side of `other` along the boundary of `c`.
inline ContactReport walk_side(const ConicElement& c, const ConicElement& other, const OracleConfig& cfg) {
  const BoundaryWalk w = boundary_walk(c);
  std::vector<BranchScan> scans;
  for (const Branch& b : w.branches) {
    auto f = [&](double phi) {
      const auto pt = w.point(phi);
      if (!pt) return 0.0;
      return w.weight(phi) * side_value(other, *pt);
    };
    scans.push_back(scan_branch(f, b, cfg.samples));
  }
  return classify_scans(scans, cfg.tangency_band);
}

// Circle pairs are decided exactly from the centre distance d:
// outer = d - (r1 + r2) > 0 means apart, inner = |r1 - r2| - d > 0 means one
// inside the other. eps only absorbs rounding.
struct CircleGaps {
  double outer = 0.0;
  double inner = 0.0;
  double eps = 0.0;
};

inline CircleGaps circle_gaps(const ConicElement& c1, const ConicElement& c2) {
  const double d = std::hypot(c2.params[0] - c1.params[0], c2.params[1] - c1.params[1]);
  const double r1 = c1.params[2], r2 = c2.params[2];
  return {d - (r1 + r2), std::abs(r1 - r2) - d, 1e-12 * (r1 + r2 + d)};
}

// Kepler pairs in polar form. D(θ) = c + a cosθ + b sinθ is 1/r on the
// upper-nappe branch; where D < 0 the same formula traces the second branch
// through the opposite ray.
inline double kepler_denominator(const ConicElement& c, double th) {
  return c.params[2] + c.params[0] * std::cos(th) + c.params[1] * std::sin(th);
}

// Arc where D > 0, or the full circle.
inline Branch kepler_positive_arc(const ConicElement& c) {
  const double amp = std::hypot(c.params[0], c.params[1]);
  const double centre = std::atan2(c.params[1], c.params[0]);
  if (c.params[2] > amp) return {0.0, 2 * std::numbers::pi, false};
  const double half = std::acos(std::clamp(-c.params[2] / amp, -1.0, 1.0));
  return {centre - half, centre + half, true};
}

struct KeplerContact {
  ContactReport same_sheet;  // D2 - D1 over all rays; sign < 0 means c1 inside c2
  bool cross_sheet = false;  // a branch of one meets the other branch of the other
};

inline KeplerContact kepler_contact(const ConicElement& c1, const ConicElement& c2, const OracleConfig& cfg) {
  KeplerContact k;
  auto diff = [&](double th) { return kepler_denominator(c2, th) - kepler_denominator(c1, th); };
  k.same_sheet = classify_scans({scan_branch(diff, {0.0, 2 * std::numbers::pi, false}, cfg.samples)},
                                cfg.tangency_band);
  // Upper branch of `a` against the second branch of `b`: D_a(θ) = D_b(θ) - 2 c_b.
  auto cross = [&](const ConicElement& a, const ConicElement& b) {
    const Branch arc = kepler_positive_arc(a);
    auto g = [&](double th) { return kepler_denominator(b, th) - 2 * b.params[2] - kepler_denominator(a, th); };
    const ContactReport r = classify_scans({scan_branch(g, arc, cfg.samples)}, cfg.tangency_band);
    return r.contact == Contact::crossing || r.contact == Contact::touching;
  };
  k.cross_sheet = cross(c1, c2) || cross(c2, c1);
  return k;
}

}  // namespace detail

// Boundary points of `boundary` with the side values of `other` there.
struct SideSample {
  ConicElement conic;
  std::vector<Point2> points;
  std::vector<double> side_values;
};

inline SideSample sample_side(const ConicElement& boundary, const ConicElement& other, int n = 720) {
  require_same_family(boundary, other);
  validate_conic(boundary);
  validate_conic(other);
  SideSample s{boundary, {}, {}};
  auto push = [&](Point2 pt) {
    s.points.push_back(pt);
    s.side_values.push_back(side_value(other, pt));
  };
  if (boundary.family == Family::kepler) {
    for (int i = 0; i < n; ++i) {
      const double th = 2 * std::numbers::pi * i / n;
      const double d = detail::kepler_denominator(boundary, th);
      if (d > 0) push({std::cos(th) / d, std::sin(th) / d});
    }
    return s;
  }
  const auto w = detail::boundary_walk(boundary);
  for (const auto& b : w.branches) {
    for (int i = 1; i < n - 1; ++i) {
      if (const auto pt = w.point(b.lo + (b.hi - b.lo) * i / (n - 1))) push(*pt);
    }
  }
  return s;
}

struct IntersectionResult {
  bool found = false;
  bool exact = false;  // false: "no intersection found at resolution"
};

inline IntersectionResult find_intersection(const ConicElement& c1, const ConicElement& c2,
                                            const OracleConfig& cfg = {}) {
  require_same_family(c1, c2);
  validate_conic(c1);
  validate_conic(c2);
  switch (c1.family) {
    case Family::circle: {
      const auto g = detail::circle_gaps(c1, c2);
      return {g.outer <= g.eps && g.inner <= g.eps, true};
    }
    case Family::kepler: {
      const auto k = detail::kepler_contact(c1, c2, cfg);
      const bool hit = k.cross_sheet || k.same_sheet.contact == detail::Contact::crossing ||
                       k.same_sheet.contact == detail::Contact::touching;
      return {hit, true};
    }
    default: {
      const auto a = detail::walk_side(c1, c2, cfg);
      const auto b = detail::walk_side(c2, c1, cfg);
      auto hit = [](const detail::ContactReport& r) {
        return r.contact == detail::Contact::crossing || r.contact == detail::Contact::touching;
      };
      return {hit(a) || hit(b), a.sign_change || b.sign_change};
    }
  }
}

inline bool intersects(const ConicElement& c1, const ConicElement& c2) { return find_intersection(c1, c2).found; }

struct OracleReport {
  OracleRelation relation = OracleRelation::nested;
  bool resolution_limited = false;  // closest approach within 100x the tangency band
  double clearance = INFINITY;
};

inline OracleReport nested_oracle_report(const ConicElement& c1, const ConicElement& c2,
                                         const OracleConfig& cfg = {}) {
  require_same_family(c1, c2);
  validate_conic(c1);
  validate_conic(c2);
  using detail::Contact;
  OracleReport rep;
  const double band = cfg.tangency_band;
  auto finish = [&](OracleRelation r, double clearance) {
    rep.relation = r;
    rep.clearance = clearance;
    rep.resolution_limited = clearance > band && clearance < 100 * band;
    return rep;
  };

  if (c1.family == Family::kepler) {
    const auto k = detail::kepler_contact(c1, c2, cfg);
    const double cl = k.same_sheet.clearance;
    if (k.same_sheet.contact == Contact::crossing) return finish(OracleRelation::intersecting, 0.0);
    if (k.same_sheet.contact == Contact::touching) return finish(OracleRelation::tangent, cl);
    if (k.cross_sheet) return finish(OracleRelation::intersecting, 0.0);
    // Ray ordering is total here, so disjoint Kepler conics are nested.
    return finish(OracleRelation::nested, cl);
  }

  if (c1.family == Family::circle) {
    const auto g = detail::circle_gaps(c1, c2);
    const double scale = c1.params[2] + c2.params[2];
    const double cl = std::min(std::abs(g.outer), std::abs(g.inner)) / scale;
    auto done = [&](OracleRelation r) {
      rep.relation = r;
      rep.clearance = cl;
      rep.resolution_limited = cl * scale > g.eps && cl * scale < 100 * g.eps;
      return rep;
    };
    if (std::abs(g.outer) <= g.eps || std::abs(g.inner) <= g.eps) return done(OracleRelation::tangent);
    if (g.inner > 0) return done(OracleRelation::nested);
    if (g.outer > 0) return done(OracleRelation::disjoint_unnested);
    return done(OracleRelation::intersecting);
  }

  const auto a = detail::walk_side(c1, c2, cfg);
  const auto b = detail::walk_side(c2, c1, cfg);
  const double cl = std::min(a.clearance, b.clearance);
  if (a.contact == Contact::crossing || b.contact == Contact::crossing)
    return finish(OracleRelation::intersecting, 0.0);
  if (a.contact == Contact::touching || b.contact == Contact::touching) return finish(OracleRelation::tangent, cl);
  if (a.contact == Contact::inside || b.contact == Contact::inside) return finish(OracleRelation::nested, cl);
  // Disjoint fractional-linear graphs nest branch by branch.
  if (c1.family == Family::flinear) return finish(OracleRelation::nested, cl);
  return finish(OracleRelation::disjoint_unnested, cl);
}

inline OracleRelation nested_oracle(const ConicElement& c1, const ConicElement& c2) {
  return nested_oracle_report(c1, c2).relation;
}

}  // namespace tait
