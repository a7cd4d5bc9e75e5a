#pragma once

// The five conic families and their Lorentzian parameter spaces.
//
//   family     params (p1, p2, p3)   curve                        interval Q(Δ)
//   circle     (a, b, r)             (x-a)^2 + (y-b)^2 = r^2       -Δa² - Δb² + Δr²
//   hooke      (a, b, c)             a x^2 + 2b xy + c y^2 = 1     Δa Δc - Δb²
//   kepler     (a, b, c)             1/r = c + a cosθ + b sinθ     -Δa² - Δb² + Δc²
//   vparabola  (a, b, c)             y = a x^2 + b x + c           Δb² - 4 Δa Δc
//   flinear    (a, b, c)             (x-a)(y-b) = c^2              Δc² - Δa Δb
//
// For circle, hooke and kepler a positive interval means nested. For
// vparabola a negative interval means disjoint. The flinear interval is
// reported for diagnostics only; its verdict comes from the intersection
// quadratic of the two graphs.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "tait/error.hpp"
#include "tait/family.hpp"

namespace tait {

struct ConicElement {
  Family family = Family::circle;
  Vec3 params{};
};

enum class ConicClass { circle, ellipse, imaginary_ellipse, parabola, hyperbola };

inline constexpr std::string_view conic_class_name(ConicClass c) {
  switch (c) {
    case ConicClass::circle: return "circle";
    case ConicClass::ellipse: return "ellipse";
    case ConicClass::imaginary_ellipse: return "imaginary_ellipse";
    case ConicClass::parabola: return "parabola";
    case ConicClass::hyperbola: return "hyperbola";
  }
  return "?";
}

// Family quadratic form on a parameter difference.
inline double lorentz_form(Family f, const Vec3& d) {
  switch (f) {
    case Family::circle: return -d[0] * d[0] - d[1] * d[1] + d[2] * d[2];
    case Family::hooke: return d[0] * d[2] - d[1] * d[1];
    case Family::kepler: return -d[0] * d[0] - d[1] * d[1] + d[2] * d[2];
    case Family::vparabola: return d[1] * d[1] - 4.0 * d[0] * d[2];
    case Family::flinear: return d[2] * d[2] - d[0] * d[1];
  }
  return 0.0;
}

// Flip so that positive is the nested/disjoint side of the light cone.
inline double oriented_interval(Family f, double q) {
  return (f == Family::vparabola || f == Family::flinear) ? -q : q;
}

inline Vec3 difference(const ConicElement& from, const ConicElement& to) {
  return {to.params[0] - from.params[0], to.params[1] - from.params[1], to.params[2] - from.params[2]};
}

inline double hooke_determinant(const ConicElement& c) {
  return c.params[0] * c.params[2] - c.params[1] * c.params[1];
}

inline ConicClass classify_conic(const ConicElement& c) {
  const auto [p, q, r] = c.params;
  switch (c.family) {
    case Family::circle: return ConicClass::circle;
    case Family::vparabola: return ConicClass::parabola;
    case Family::flinear: return ConicClass::hyperbola;
    case Family::hooke: {
      const double det = hooke_determinant(c);
      if (std::abs(det) <= 1e-14) throw InvalidConic("degenerate Hooke form (ac - b^2 = 0)");
      if (det < 0) return ConicClass::hyperbola;
      return p > 0 ? ConicClass::ellipse : ConicClass::imaginary_ellipse;
    }
    case Family::kepler: {
      if (!(r > 0)) throw InvalidConic("Kepler conic needs c > 0");
      const double s = -p * p - q * q + r * r;
      if (std::abs(s) <= 1e-12 * (p * p + q * q + r * r)) return ConicClass::parabola;
      return s > 0 ? ConicClass::ellipse : ConicClass::hyperbola;
    }
  }
  return ConicClass::circle;
}

// Throws InvalidConic unless `c` is a real, non-degenerate member of its family.
inline void validate_conic(const ConicElement& c) {
  for (double v : c.params)
    if (!std::isfinite(v)) throw InvalidConic("non-finite conic parameter");
  switch (c.family) {
    case Family::circle:
      if (!(c.params[2] > 0)) throw InvalidConic("circle radius must be positive");
      break;
    case Family::hooke:
      if (classify_conic(c) == ConicClass::imaginary_ellipse) throw InvalidConic("Hooke form has no real points");
      break;
    case Family::kepler: classify_conic(c); break;
    case Family::flinear:
      if (!(c.params[2] > 0)) throw InvalidConic("fractional-linear conic needs c > 0");
      break;
    case Family::vparabola: break;
  }
}

// Implicit equation F(x, y) = 0 of the conic. Generic so that it composes
// with Taylor series as well as plain doubles.
template <typename T>
T defining_function(const ConicElement& c, const T& x, const T& y) {
  using std::sqrt;
  const auto [p, q, r] = c.params;
  switch (c.family) {
    case Family::circle: return (x - p) * (x - p) + (y - q) * (y - q) - r * r;
    case Family::hooke: return p * x * x + 2.0 * q * x * y + r * y * y - 1.0;
    case Family::kepler: return p * x + q * y + r * sqrt(x * x + y * y) - 1.0;
    case Family::vparabola: return p * x * x + q * x + r - y;
    case Family::flinear: return (x - p) * (y - q) - r * r;
  }
  return x;
}

struct SeparationInterval {
  Family family = Family::circle;
  double value = 0.0;
};

inline void require_same_family(const ConicElement& a, const ConicElement& b) {
  if (a.family != b.family)
    throw FamilyMismatch("cannot compare " + std::string(family_name(a.family)) + " with " +
                         std::string(family_name(b.family)));
}

inline SeparationInterval separation_interval(const ConicElement& c1, const ConicElement& c2) {
  require_same_family(c1, c2);
  return {c1.family, lorentz_form(c1.family, difference(c1, c2))};
}

enum class Relation { nested, tangent, intersecting, separated, undetermined };

inline constexpr std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::nested: return "nested";
    case Relation::tangent: return "tangent";
    case Relation::intersecting: return "intersecting";
    case Relation::separated: return "separated";
    case Relation::undetermined: return "undetermined";
  }
  return "?";
}

struct SeparationVerdict {
  Relation relation = Relation::undetermined;
  SeparationInterval interval;
  bool oracle_checked = false;
};

inline constexpr double default_tolerance = 1e-9;

namespace detail {

// Disjointness of two decreasing fractional-linear graphs from the quadratic
// b1 + k1/(x-a1) = b2 + k2/(x-a2), cleared of denominators.
inline Relation flinear_relation(const ConicElement& c1, const ConicElement& c2, double tol) {
  const auto [a1, b1, r1] = c1.params;
  const auto [a2, b2, r2] = c2.params;
  const double k1 = r1 * r1, k2 = r2 * r2;
  const double alpha = a1 - a2, beta = b1 - b2;
  const double s = std::max({1.0, std::abs(a1), std::abs(a2), std::abs(b1), std::abs(b2), r1, r2});

  if (std::abs(alpha) <= tol * s) {
    // Shared vertical asymptote: the quadratic factors through x = a.
    if (std::abs(beta) > tol * s) return Relation::intersecting;
    return std::abs(k1 - k2) <= tol * s * s ? Relation::tangent : Relation::nested;
  }
  const double qa = beta;
  const double qb = (k1 - k2) - beta * (a1 + a2);
  const double qc = beta * a1 * a2 - k1 * a2 + k2 * a1;
  if (std::abs(qa) <= tol * s) return std::abs(qb) > tol * s * s ? Relation::intersecting : Relation::nested;
  const double disc = qb * qb - 4.0 * qa * qc;
  const double normalized = disc / (qb * qb + 4.0 * std::abs(qa * qc));
  if (normalized < -tol) return Relation::nested;
  if (normalized <= tol) return Relation::tangent;
  return Relation::intersecting;
}

}  // namespace detail

// Algebraic nesting predicate. `tol` applies to Q(Δ/|Δ|).
inline SeparationVerdict separation_verdict(const ConicElement& c1, const ConicElement& c2,
                                            double tol = default_tolerance) {
  require_same_family(c1, c2);
  validate_conic(c1);
  validate_conic(c2);
  const Family f = c1.family;
  const Vec3 d = difference(c1, c2);
  SeparationVerdict v;
  v.interval = {f, lorentz_form(f, d)};

  const double norm2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
  if (norm2 == 0.0) {
    v.relation = Relation::tangent;  // coincident
    return v;
  }
  const double q = v.interval.value / norm2;

  switch (f) {
    case Family::circle: {
      if (q > tol) {
        v.relation = Relation::nested;
      } else if (q >= -tol) {
        v.relation = Relation::tangent;
      } else {
        const double dist = std::hypot(d[0], d[1]);
        const double sum = c1.params[2] + c2.params[2];
        if (std::abs(dist - sum) <= tol * (dist + sum))
          v.relation = Relation::tangent;
        else
          v.relation = dist > sum ? Relation::separated : Relation::intersecting;
      }
      break;
    }
    case Family::hooke: {
      const ConicClass k1 = classify_conic(c1), k2 = classify_conic(c2);
      if (k1 != k2) {
        v.relation = Relation::undetermined;
      } else if (k1 == ConicClass::ellipse) {
        v.relation = q > tol ? Relation::nested : (q >= -tol ? Relation::tangent : Relation::intersecting);
      } else {
        v.relation = q > tol ? Relation::nested : Relation::undetermined;
      }
      break;
    }
    case Family::kepler:
      v.relation = q > tol ? Relation::nested : (q >= -tol ? Relation::tangent : Relation::intersecting);
      break;
    case Family::vparabola: {
      const bool same_opening = c1.params[0] * c2.params[0] > 0;
      const bool translate = std::abs(d[0]) <= tol * std::sqrt(norm2) && std::abs(d[1]) <= tol * std::sqrt(norm2);
      if (q < -tol || translate)
        v.relation = same_opening ? Relation::nested : Relation::separated;
      else
        v.relation = q <= tol ? Relation::tangent : Relation::intersecting;
      break;
    }
    case Family::flinear: v.relation = detail::flinear_relation(c1, c2, tol); break;
  }
  return v;
}

}  // namespace tait
