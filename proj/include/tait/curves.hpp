#pragma once

// Parametric plane curves and their local invariants.
//
// Every invariant is computed pointwise from truncated Taylor series of the
// coordinate functions in the curve's own parameter t. Arc-length,
// centroaffine and polar normalizations are applied through the chain rule at
// the evaluation point; the curve is never reparameterized globally.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tait/error.hpp"
#include "tait/expr.hpp"
#include "tait/family.hpp"
#include "tait/taylor.hpp"

namespace tait {

// Below this, speeds, brackets and denominators count as zero.
inline constexpr double regularity_floor = 1e-12;

struct ParamCurve {
  Expression x;
  Expression y;
  double t0 = 0.0;
  double t1 = 1.0;
  std::string label;
};

inline ParamCurve make_curve(std::string_view x, std::string_view y, double t0, double t1, std::string label = {}) {
  return ParamCurve{parse_expression(x), parse_expression(y), t0, t1, std::move(label)};
}

inline Point2 point_at(const ParamCurve& c, double t) { return {evaluate(c.x, t), evaluate(c.y, t)}; }

template <int N>
struct CurveSeries {
  Taylor<N> x;
  Taylor<N> y;
};

template <int N>
CurveSeries<N> curve_series(const ParamCurve& c, double t) {
  return {evaluate_series<N>(c.x, t), evaluate_series<N>(c.y, t)};
}

// Closed when the endpoints agree to first order; vertex search then wraps.
inline bool is_closed(const ParamCurve& c) {
  const auto a = curve_series<1>(c, c.t0);
  const auto b = curve_series<1>(c, c.t1);
  const double scale0 = 1.0 + std::hypot(a.x[0], a.y[0]);
  const double scale1 = 1.0 + std::hypot(a.x[1], a.y[1]);
  return std::hypot(a.x[0] - b.x[0], a.y[0] - b.y[0]) <= 1e-9 * scale0 &&
         std::hypot(a.x[1] - b.x[1], a.y[1] - b.y[1]) <= 1e-9 * scale1;
}

// Throws PreconditionError at the first probe where the speed vanishes.
inline void check_regular(const ParamCurve& c, int probes = 64) {
  for (int i = 0; i < probes; ++i) {
    const double t = c.t0 + (c.t1 - c.t0) * i / (probes - 1);
    const auto s = curve_series<1>(c, t);
    if (std::hypot(s.x[1], s.y[1]) < regularity_floor) throw PreconditionError("non-regular point", t);
  }
}

// ---------------------------------------------------------------------------
// Euclidean

struct EuclideanFrame {
  Point2 point;
  Point2 unit_tangent;
  double kappa = 0.0;        // signed curvature
  double kappa_prime = 0.0;  // dκ/ds, s = arc length
};

namespace detail {

struct EuclideanSeries {
  CurveSeries<4> gamma;
  Taylor<3> xd, yd;
  Taylor<3> speed;
  Taylor<2> kappa;  // κ as a function of t
};

inline EuclideanSeries euclidean_series(const ParamCurve& c, double t) {
  EuclideanSeries e;
  e.gamma = curve_series<4>(c, t);
  e.xd = e.gamma.x.differentiate();
  e.yd = e.gamma.y.differentiate();
  const Taylor<3> speed2 = e.xd * e.xd + e.yd * e.yd;
  if (std::sqrt(speed2.value()) < regularity_floor) throw PreconditionError("non-regular point", t);
  e.speed = sqrt(speed2);
  const Taylor<2> s = truncate<2>(e.speed);
  e.kappa = (truncate<2>(e.xd) * e.yd.differentiate() - truncate<2>(e.yd) * e.xd.differentiate()) / (s * s * s);
  return e;
}

}  // namespace detail

inline EuclideanFrame frame_euclidean(const ParamCurve& c, double t) {
  const auto e = detail::euclidean_series(c, t);
  const double v = e.speed.value();
  return EuclideanFrame{{e.gamma.x.value(), e.gamma.y.value()},
                        {e.xd.value() / v, e.yd.value() / v},
                        e.kappa.value(),
                        e.kappa.derivative(1) / v};
}

// ---------------------------------------------------------------------------
// Centroaffine

struct CentroaffineFrame {
  Point2 point;
  double sigma = 0.0;    // [γ, γ_t]
  double p = 0.0;        // centroaffine curvature
  double p_prime = 0.0;  // dp/dτ, dτ = σ dt
};

namespace detail {

struct CentroaffineSeries {
  CurveSeries<4> gamma;
  Taylor<3> sigma;
  Taylor<3> vx, vy;  // γ_τ = γ_t / σ
  Taylor<2> p;       // [γ_τ, γ_ττ] as a function of t
};

inline CentroaffineSeries centroaffine_series(const ParamCurve& c, double t) {
  CentroaffineSeries s;
  s.gamma = curve_series<4>(c, t);
  const Taylor<3> xd = s.gamma.x.differentiate();
  const Taylor<3> yd = s.gamma.y.differentiate();
  s.sigma = truncate<3>(s.gamma.x) * yd - truncate<3>(s.gamma.y) * xd;
  if (std::abs(s.sigma.value()) < regularity_floor) throw PreconditionError("curve is not star-shaped", t);
  s.vx = xd / s.sigma;
  s.vy = yd / s.sigma;
  const Taylor<2> sigma2 = truncate<2>(s.sigma);
  const Taylor<2> ax = s.vx.differentiate() / sigma2;
  const Taylor<2> ay = s.vy.differentiate() / sigma2;
  s.p = truncate<2>(s.vx) * ay - truncate<2>(s.vy) * ax;
  return s;
}

}  // namespace detail

inline CentroaffineFrame frame_centroaffine(const ParamCurve& c, double t) {
  const auto s = detail::centroaffine_series(c, t);
  return CentroaffineFrame{{s.gamma.x.value(), s.gamma.y.value()},
                           s.sigma.value(),
                           s.p.value(),
                           s.p.derivative(1) / s.sigma.value()};
}

// ---------------------------------------------------------------------------
// Polar

struct PolarJet {
  double theta = 0.0;  // polar angle
  double u = 0.0;      // 1 / r
  double u1 = 0.0;     // du/dθ
  double u2 = 0.0;
  double u3 = 0.0;
};

namespace detail {

struct PolarSeries {
  Taylor<4> theta;
  Taylor<4> u;
  Taylor<3> u1;
  Taylor<2> u2;
  Taylor<1> u3;
};

inline PolarSeries polar_series(const ParamCurve& c, double t) {
  const auto g = curve_series<4>(c, t);
  const Taylor<4> rho2 = g.x * g.x + g.y * g.y;
  if (std::sqrt(rho2.value()) < regularity_floor) throw PreconditionError("curve passes through the origin", t);
  const Taylor<3> sigma = truncate<3>(g.x) * g.y.differentiate() - truncate<3>(g.y) * g.x.differentiate();
  if (std::abs(sigma.value()) < regularity_floor) throw PreconditionError("polar angle is stationary", t);
  const Taylor<3> theta_t = sigma / truncate<3>(rho2);

  PolarSeries p;
  p.theta = integrate<4>(theta_t, std::atan2(g.y.value(), g.x.value()));
  p.u = pow(rho2, -0.5);
  p.u1 = p.u.differentiate() / theta_t;
  p.u2 = p.u1.differentiate() / truncate<2>(theta_t);
  p.u3 = p.u2.differentiate() / truncate<1>(theta_t);
  return p;
}

}  // namespace detail

inline PolarJet polar_jet(const ParamCurve& c, double t) {
  const auto p = detail::polar_series(c, t);
  return PolarJet{p.theta.value(), p.u.value(), p.u1.value(), p.u2.value(), p.u3.value()};
}

// Polar jets along a sampled arc with θ unwrapped between neighbours.
inline std::vector<PolarJet> sample_polar(const ParamCurve& c, const std::vector<double>& ts) {
  std::vector<PolarJet> out;
  out.reserve(ts.size());
  for (double t : ts) {
    PolarJet j = polar_jet(c, t);
    if (!out.empty()) {
      const double prev = out.back().theta;
      while (j.theta - prev > std::numbers::pi) j.theta -= 2 * std::numbers::pi;
      while (j.theta - prev < -std::numbers::pi) j.theta += 2 * std::numbers::pi;
    }
    out.push_back(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph derivatives y', y'', y''' with respect to x

namespace detail {

struct GraphSeries {
  CurveSeries<4> gamma;
  Taylor<3> y1;
  Taylor<2> y2;
  Taylor<1> y3;
};

inline GraphSeries graph_series(const ParamCurve& c, double t) {
  GraphSeries g;
  g.gamma = curve_series<4>(c, t);
  const Taylor<3> xd = g.gamma.x.differentiate();
  if (std::abs(xd.value()) < regularity_floor) throw PreconditionError("vertical tangent; curve is not a graph", t);
  g.y1 = g.gamma.y.differentiate() / xd;
  g.y2 = g.y1.differentiate() / truncate<2>(xd);
  g.y3 = g.y2.differentiate() / truncate<1>(xd);
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Vertices

enum class DiscriminantKind { kappa_prime, p_prime, kepler_c_prime, y_triple_prime, schwarzian };

inline constexpr std::string_view discriminant_name(DiscriminantKind k) {
  switch (k) {
    case DiscriminantKind::kappa_prime: return "kappa_prime";
    case DiscriminantKind::p_prime: return "p_prime";
    case DiscriminantKind::kepler_c_prime: return "kepler_c_prime";
    case DiscriminantKind::y_triple_prime: return "y_triple_prime";
    case DiscriminantKind::schwarzian: return "schwarzian";
  }
  return "?";
}

inline constexpr DiscriminantKind discriminant_kind(Family f) {
  switch (f) {
    case Family::circle: return DiscriminantKind::kappa_prime;
    case Family::hooke: return DiscriminantKind::p_prime;
    case Family::kepler: return DiscriminantKind::kepler_c_prime;
    case Family::vparabola: return DiscriminantKind::y_triple_prime;
    case Family::flinear: return DiscriminantKind::schwarzian;
  }
  return DiscriminantKind::kappa_prime;
}

struct VertexRecord {
  Family family = Family::circle;
  double t = 0.0;
  DiscriminantKind discriminant_kind = DiscriminantKind::kappa_prime;
};

// The quantity whose zeros are hyper-osculation points of `family`. Also
// enforces the family's osculation preconditions at t.
inline double vertex_discriminant(const ParamCurve& c, Family family, double t) {
  switch (family) {
    case Family::circle: {
      const auto e = detail::euclidean_series(c, t);
      if (std::abs(e.kappa.value()) < regularity_floor) throw PreconditionError("zero curvature", t);
      return e.kappa.derivative(1) / e.speed.value();
    }
    case Family::hooke: {
      const auto s = detail::centroaffine_series(c, t);
      if (std::abs(s.p.value()) < regularity_floor) throw PreconditionError("zero centroaffine curvature", t);
      return s.p.derivative(1) / s.sigma.value();
    }
    case Family::kepler: {
      const auto p = detail::polar_series(c, t);
      if (std::abs(p.u.value() + p.u2.value()) < regularity_floor)
        throw PreconditionError("osculating Kepler conic degenerates to a line (c = 0)", t);
      return p.u1.value() + p.u3.value();
    }
    case Family::vparabola: {
      return detail::graph_series(c, t).y3.value();
    }
    case Family::flinear: {
      const auto g = detail::graph_series(c, t);
      const double y1 = g.y1.value(), y2 = g.y2.value(), y3 = g.y3.value();
      if (y1 >= 0.0) throw PreconditionError("increasing graph; fractional-linear osculation needs y' < 0", t);
      if (std::abs(y2) < regularity_floor) throw PreconditionError("inflection (y'' = 0)", t);
      const double r = y2 / y1;
      return y3 / y1 - 1.5 * r * r;
    }
  }
  return 0.0;
}

// Sign changes of the family discriminant on an n-point uniform grid, each
// refined by bisection to |Δt| <= 1e-10. Closed curves wrap around.
// Even-multiplicity roots (no sign change) are not reported.
inline std::vector<VertexRecord> find_vertices(const ParamCurve& c, Family family, int n = 2048) {
  if (n < 2) throw Error("find_vertices needs at least 2 samples");
  const bool periodic = is_closed(c);
  const double length = c.t1 - c.t0;
  const double step = periodic ? length / n : length / (n - 1);

  std::vector<double> ts(n), vals(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    ts[i] = c.t0 + step * i;
    vals[i] = vertex_discriminant(c, family, ts[i]);
    scale = std::max(scale, std::abs(vals[i]));
  }
  const double zero_tol = std::max(1e-13, 1e-10 * scale);

  std::vector<int> nonzero;
  for (int i = 0; i < n; ++i)
    if (std::abs(vals[i]) > zero_tol) nonzero.push_back(i);

  std::vector<VertexRecord> out;
  auto refine = [&](double lo, double hi, double flo) {
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      const double fm = vertex_discriminant(c, family, mid);
      if ((fm > 0) == (flo > 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    double t = 0.5 * (lo + hi);
    if (periodic && t >= c.t1) t -= length;
    out.push_back({family, t, discriminant_kind(family)});
  };

  const std::size_t m = nonzero.size();
  const std::size_t pairs = periodic ? m : (m == 0 ? 0 : m - 1);
  for (std::size_t k = 0; k < pairs && m >= 2; ++k) {
    const int i = nonzero[k];
    const int j = nonzero[(k + 1) % m];
    if ((vals[i] > 0) == (vals[j] > 0)) continue;
    const double hi = j > i ? ts[j] : ts[j] + length;
    refine(ts[i], hi, vals[i]);
  }
  std::sort(out.begin(), out.end(), [](const VertexRecord& a, const VertexRecord& b) { return a.t < b.t; });
  return out;
}

}  // namespace tait
