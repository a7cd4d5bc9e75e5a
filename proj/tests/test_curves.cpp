#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "tait/curves.hpp"

using namespace tait;
using std::numbers::pi;

namespace {

// Curvature of the circle through three points.
double circumcurvature(Point2 a, Point2 b, Point2 c) {
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  const double ab = std::hypot(b.x - a.x, b.y - a.y), bc = std::hypot(c.x - b.x, c.y - b.y),
               ca = std::hypot(a.x - c.x, a.y - c.y);
  return 2.0 * cross / (ab * bc * ca);
}

// Circumcurvature at γ(t-ε), γ(t), γ(t+ε), Richardson-extrapolated in ε².
double curvature_oracle(const ParamCurve& c, double t) {
  auto k = [&](double e) { return circumcurvature(point_at(c, t - e), point_at(c, t), point_at(c, t + e)); };
  const double e = 1e-3;
  return (4.0 * k(e / 2) - k(e)) / 3.0;
}

Point2 d1(const ParamCurve& c, double t, double h = 1e-3) {
  auto p = [&](double s) { return point_at(c, s); };
  auto comb = [&](auto f) {
    return (f(p(t - 2 * h)) - 8 * f(p(t - h)) + 8 * f(p(t + h)) - f(p(t + 2 * h))) / (12 * h);
  };
  return {comb([](Point2 q) { return q.x; }), comb([](Point2 q) { return q.y; })};
}

Point2 d2(const ParamCurve& c, double t, double h = 1e-3) {
  auto p = [&](double s) { return point_at(c, s); };
  auto comb = [&](auto f) {
    return (-f(p(t - 2 * h)) + 16 * f(p(t - h)) - 30 * f(p(t)) + 16 * f(p(t + h)) - f(p(t + 2 * h))) / (12 * h * h);
  };
  return {comb([](Point2 q) { return q.x; }), comb([](Point2 q) { return q.y; })};
}

double bracket(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

}  // namespace

TEST(Euclidean, UnitCircle) {
  const auto c = make_curve("cos(t)", "sin(t)", 0, 2 * pi);
  for (double t : {0.0, 1.0, 4.0}) {
    const auto f = frame_euclidean(c, t);
    EXPECT_NEAR(f.kappa, 1.0, 1e-14);
    EXPECT_NEAR(f.kappa_prime, 0.0, 1e-14);
    EXPECT_NEAR(std::hypot(f.unit_tangent.x, f.unit_tangent.y), 1.0, 1e-14);
  }
}

TEST(Euclidean, ParabolaAgainstCircumcircle) {
  const auto c = make_curve("t", "t^2", -2, 2);
  EXPECT_NEAR(frame_euclidean(c, 0.0).kappa, 2.0, 1e-12);
  EXPECT_NEAR(curvature_oracle(c, 0.0), 2.0, 1e-8);
  for (double t : {1.0, -0.7, 1.6}) EXPECT_NEAR(frame_euclidean(c, t).kappa, curvature_oracle(c, t), 1e-8) << t;
}

TEST(Euclidean, KappaPrimeMatchesDifferencedCurvature) {
  const auto c = make_curve("t*cos(t)", "t*sin(t)", 2, 10);
  for (double t : {2.5, 5.0, 8.0}) {
    const double h = 1e-4;
    const double speed = std::hypot(d1(c, t).x, d1(c, t).y);
    const double dk = (frame_euclidean(c, t + h).kappa - frame_euclidean(c, t - h).kappa) / (2 * h) / speed;
    EXPECT_NEAR(frame_euclidean(c, t).kappa_prime, dk, 1e-7);
  }
}

TEST(Euclidean, ParameterizationInvariant) {
  const auto a = make_curve("t", "t^2", -1, 1);
  const auto b = make_curve("2*t", "(2*t)^2", -0.5, 0.5);
  for (double t : {-0.8, 0.1, 0.6}) {
    const auto fa = frame_euclidean(a, t), fb = frame_euclidean(b, t / 2);
    EXPECT_NEAR(fa.kappa, fb.kappa, 1e-10);
    EXPECT_NEAR(fa.kappa_prime, fb.kappa_prime, 1e-10);
  }
}

TEST(Euclidean, NonRegularPointThrows) {
  const auto c = make_curve("t^2", "t^3", -1, 1);
  EXPECT_THROW(frame_euclidean(c, 0.0), PreconditionError);
  EXPECT_THROW(check_regular(make_curve("t^3", "t^3", -1, 1), 65), PreconditionError);
}

TEST(Centroaffine, OriginCircles) {
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    const std::string rs = detail::format_number(r);
    const auto c = make_curve(rs + "*cos(t)", rs + "*sin(t)", 0, 2 * pi);
    const auto f = frame_centroaffine(c, 0.4);
    EXPECT_LE(std::abs(f.p * std::pow(r, 4) - 1.0), 1e-10) << r;
    EXPECT_NEAR(f.p_prime, 0.0, 1e-12);
  }
}

TEST(Centroaffine, OffsetCircleAgainstStencils) {
  const auto c = make_curve("0.5 + cos(t)", "sin(t)", 0, 2 * pi);
  // p = [γ_t, γ_tt] / [γ, γ_t]^3 from finite-difference derivatives.
  for (double t : {0.0, 0.9, 2.0}) {
    const Point2 g = point_at(c, t), g1 = d1(c, t), g2 = d2(c, t);
    const double sigma = bracket(g, g1);
    const double oracle = bracket(g1, g2) / (sigma * sigma * sigma);
    const double p = frame_centroaffine(c, t).p;
    EXPECT_LE(std::abs(p - oracle) / std::abs(oracle), 1e-6) << t;
  }
}

TEST(Centroaffine, UnimodularInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const std::string x = "0.5 + cos(t)", y = "0.3 + 0.8*sin(t)";
  for (int trial = 0; trial < 20; ++trial) {
    double a = u(rng), b = u(rng), cc = u(rng), d = u(rng);
    const double det = a * d - b * cc;
    if (std::abs(det) < 0.2) continue;
    const double s = 1.0 / std::sqrt(std::abs(det));
    a *= s, b *= s, cc *= s, d *= s;
    if (det < 0) std::swap(a, b), std::swap(cc, d);  // keep det = +1
    auto num = [](double v) { return "(" + detail::format_number(v) + ")"; };
    const auto base = make_curve(x, y, 0, 2 * pi);
    const auto mapped = make_curve(num(a) + "*(" + x + ") + " + num(b) + "*(" + y + ")",
                                   num(cc) + "*(" + x + ") + " + num(d) + "*(" + y + ")", 0, 2 * pi);
    for (double t : {0.3, 2.2, 4.0}) EXPECT_NEAR(frame_centroaffine(base, t).p, frame_centroaffine(mapped, t).p, 1e-9);
  }
}

TEST(Centroaffine, NotStarShapedThrows) {
  EXPECT_THROW(frame_centroaffine(make_curve("t", "2*t", -1, 1), 0.5), PreconditionError);
}

TEST(Polar, UnitCircle) {
  const auto j = polar_jet(make_curve("cos(t)", "sin(t)", 0, 2 * pi), 1.0);
  EXPECT_NEAR(j.u, 1.0, 1e-15);
  EXPECT_NEAR(j.u1, 0.0, 1e-14);
  EXPECT_NEAR(j.u2, 0.0, 1e-14);
  EXPECT_NEAR(j.u3, 0.0, 1e-14);
  EXPECT_NEAR(j.theta, 1.0, 1e-15);
}

TEST(Polar, KeplerEllipseAsPolarGraph) {
  const auto c = make_curve("cos(t)/(1 + 0.5*cos(t))", "sin(t)/(1 + 0.5*cos(t))", 0, 2 * pi);
  for (double t : {0.2, 1.3, 2.9, 4.4}) {
    const auto j = polar_jet(c, t);
    EXPECT_NEAR(j.u, 1 + 0.5 * std::cos(t), 1e-14);
    EXPECT_NEAR(j.u2, -0.5 * std::cos(t), 1e-13);
    EXPECT_NEAR(j.u1 + j.u3, 0.0, 1e-13);
  }
}

TEST(Polar, OffsetCircleAgainstStencilsInTheta) {
  const auto c = make_curve("0.5 + cos(t)", "sin(t)", 0, 2 * pi);
  const double t0 = pi / 2;
  const auto j = polar_jet(c, t0);
  // u as a function of θ: solve atan2(y, x) = θ for t by bisection near t0.
  auto u_of_theta = [&](double th) {
    double lo = t0 - 0.5, hi = t0 + 0.5;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const Point2 p = point_at(c, mid);
      (std::atan2(p.y, p.x) < th ? lo : hi) = mid;
    }
    const Point2 p = point_at(c, 0.5 * (lo + hi));
    return 1.0 / std::hypot(p.x, p.y);
  };
  auto first = [&](double h) {
    return (u_of_theta(j.theta - 2 * h) - 8 * u_of_theta(j.theta - h) + 8 * u_of_theta(j.theta + h) -
            u_of_theta(j.theta + 2 * h)) /
           (12 * h);
  };
  auto second = [&](double h) {
    return (-u_of_theta(j.theta - 2 * h) + 16 * u_of_theta(j.theta - h) - 30 * u_of_theta(j.theta) +
            16 * u_of_theta(j.theta + h) - u_of_theta(j.theta + 2 * h)) /
           (12 * h * h);
  };
  auto third = [&](double h) {
    return (-u_of_theta(j.theta - 2 * h) + 2 * u_of_theta(j.theta - h) - 2 * u_of_theta(j.theta + h) +
            u_of_theta(j.theta + 2 * h)) /
           (2 * h * h * h);
  };
  EXPECT_NEAR(j.u, u_of_theta(j.theta), 1e-12);
  EXPECT_NEAR(j.u1, first(1e-3), 1e-6);
  EXPECT_NEAR(j.u2, second(1e-3), 1e-6);
  EXPECT_NEAR(j.u3, (4 * third(0.01) - third(0.02)) / 3, 1e-6);
}

TEST(Polar, RadiusRoundTripAndUnwrapping) {
  const auto c = make_curve("0.5 + cos(t)", "sin(t)", 0, 2 * pi);
  std::vector<double> ts;
  for (int i = 0; i <= 400; ++i) ts.push_back(6 * pi * i / 400);  // three turns
  const auto js = sample_polar(c, ts);
  for (std::size_t i = 0; i < js.size(); ++i) {
    const Point2 p = point_at(c, ts[i]);
    EXPECT_NEAR(1.0 / js[i].u, std::hypot(p.x, p.y), 1e-12);
    if (i) {
      EXPECT_LT(std::abs(js[i].theta - js[i - 1].theta), pi);
    }
  }
  EXPECT_NEAR(js.back().theta - js.front().theta, 6 * pi, 1e-9);
}

TEST(Polar, OriginPassageThrows) {
  EXPECT_THROW(polar_jet(make_curve("t", "t^2 + t", -1, 1), 0.0), PreconditionError);
}

namespace {

// Each vertex sits on a multiple of π/2, and all four multiples occur.
void expect_quarter_turns(const std::vector<VertexRecord>& vs) {
  ASSERT_EQ(vs.size(), 4u);
  std::set<long> seen;
  for (const auto& v : vs) {
    const double q = v.t / (pi / 2);
    EXPECT_NEAR(q, std::round(q), 1e-9);
    seen.insert(((std::lround(q) % 4) + 4) % 4);
  }
  EXPECT_EQ(seen.size(), 4u);
}

}  // namespace

TEST(Vertices, EllipseHasFourCircleVertices) {
  const auto vs = find_vertices(make_curve("2*cos(t)", "sin(t)", 0, 2 * pi), Family::circle);
  expect_quarter_turns(vs);
  for (const auto& v : vs) EXPECT_EQ(v.discriminant_kind, DiscriminantKind::kappa_prime);
}

TEST(Vertices, OffsetCircleHasTwoHookeVertices) {
  const auto vs = find_vertices(make_curve("0.5 + cos(t)", "sin(t)", 0, 2 * pi), Family::hooke);
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0].discriminant_kind, DiscriminantKind::p_prime);
}

TEST(Vertices, CubicHasNoParabolaVertices) {
  EXPECT_TRUE(find_vertices(make_curve("t", "t^3", -1, 1), Family::vparabola).empty());
}

TEST(Vertices, KeplerVerticesOfHookeEllipse) {
  // Symmetry puts them on the axes.
  const auto vs = find_vertices(make_curve("sqrt(2)*cos(t)", "sin(t)", 0, 2 * pi), Family::kepler);
  expect_quarter_turns(vs);
  EXPECT_EQ(vs[0].discriminant_kind, DiscriminantKind::kepler_c_prime);
}

TEST(Vertices, SchwarzianVertexOfAGraph) {
  // y' = -(1 + x^4) has Schwarzian 12x^2(1 - x^4)/(1 + x^4)^2.
  const auto vs = find_vertices(make_curve("t", "-t - t^5/5", 0.2, 2), Family::flinear);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_NEAR(vs[0].t, 1.0, 1e-9);
  EXPECT_EQ(vs[0].discriminant_kind, DiscriminantKind::schwarzian);
}

TEST(Vertices, DiscriminantVanishesAtRefinedRoots) {
  const auto c = make_curve("2*cos(t)", "sin(t)", 0, 2 * pi);
  double scale = 0;
  for (int i = 0; i < 64; ++i) scale = std::max(scale, std::abs(vertex_discriminant(c, Family::circle, 0.1 * i)));
  for (const auto& v : find_vertices(c, Family::circle))
    EXPECT_LE(std::abs(vertex_discriminant(c, Family::circle, v.t)), 1e-8 * scale);
}

TEST(Vertices, FamilyPreconditionsAreReported) {
  try {
    find_vertices(make_curve("t", "t^2", 0.1, 1), Family::flinear);
    FAIL() << "increasing graph accepted";
  } catch (const PreconditionError& e) {
    EXPECT_NEAR(e.t(), 0.1, 1e-12);
  }
  EXPECT_THROW(find_vertices(make_curve("cos(t)", "sin(t)", 0, 3), Family::vparabola), PreconditionError);
  EXPECT_THROW(find_vertices(make_curve("t", "t^3", 0, 1), Family::circle), PreconditionError);  // inflection
  EXPECT_THROW(vertex_discriminant(make_curve("1", "t", -1, 1), Family::kepler, 0.2), PreconditionError);
}
