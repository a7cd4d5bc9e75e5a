#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tait/conics.hpp"
#include "tait/oracle.hpp"

using namespace tait;

namespace {

ConicElement circle(double a, double b, double r) { return {Family::circle, {a, b, r}}; }
ConicElement hooke(double a, double b, double c) { return {Family::hooke, {a, b, c}}; }
ConicElement kepler(double a, double b, double c) { return {Family::kepler, {a, b, c}}; }
ConicElement vparabola(double a, double b, double c) { return {Family::vparabola, {a, b, c}}; }
ConicElement flinear(double a, double b, double c) { return {Family::flinear, {a, b, c}}; }

const ConicElement wide_hyperbola = hooke(1, 0, -1);           // x² - y² = 1
const ConicElement narrow_hyperbola = hooke(1.0 / 9, 0, -0.25);  // (x/3)² - (y/2)² = 1

ConicElement random_of(Family f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sym(-1, 1), pos(0.05, 2);
  for (;;) {
    ConicElement c{f, {sym(rng), sym(rng), pos(rng)}};
    if (f == Family::circle) c.params = {2 * sym(rng), 2 * sym(rng), pos(rng)};
    if (f == Family::hooke) c.params = {2 * sym(rng), 2 * sym(rng), 2 * sym(rng)};
    if (f == Family::vparabola) c.params[2] = sym(rng);
    try {
      validate_conic(c);
      if (f == Family::hooke && std::abs(hooke_determinant(c)) < 1e-3) continue;
      return c;
    } catch (const InvalidConic&) {
    }
  }
}

}  // namespace

TEST(PointSide, Examples) {
  EXPECT_EQ(point_side(circle(0, 0, 1), {0.5, 0}), Side::inside);
  EXPECT_EQ(point_side(circle(0, 0, 1), {1, 0}), Side::on);
  EXPECT_EQ(point_side(circle(0, 0, 1), {1.5, 0}), Side::outside);
  EXPECT_EQ(point_side(wide_hyperbola, {3, 0}), Side::inside);
  EXPECT_EQ(point_side(wide_hyperbola, {0, 3}), Side::outside);
  EXPECT_EQ(point_side(kepler(0, 0, 2), {0.75, 0}), Side::outside);
  EXPECT_EQ(point_side(kepler(0, 0, 2), {0.25, 0}), Side::inside);
  EXPECT_EQ(point_side(hooke(1, 0, 1), {0.5, 0.5}), Side::inside);
  EXPECT_EQ(point_side(vparabola(1, 0, 0), {0, 1}), Side::inside);
  EXPECT_EQ(point_side(vparabola(-1, 0, 0), {0, -1}), Side::inside);
  EXPECT_EQ(point_side(flinear(0, 0, 1), {2, 2}), Side::inside);
  EXPECT_EQ(point_side(flinear(0, 0, 1), {0.5, 0.5}), Side::outside);
}

TEST(PointSide, KeplerSecondBranchIsOnTheConic) {
  // 1/r = 1 + 2cos θ: at θ = π the denominator is -1, putting (1, 0) on the far branch.
  EXPECT_EQ(point_side(kepler(2, 0, 1), {1, 0}), Side::on);
  EXPECT_EQ(point_side(kepler(2, 0, 1), {1.0 / 3, 0}), Side::on);
  EXPECT_THROW(point_side(kepler(0, 0, 1), {0, 0}), DomainError);
}

TEST(PointSide, RejectsInvalidConics) {
  EXPECT_THROW(point_side(hooke(-1, 0, -1), {0, 0}), InvalidConic);
}

TEST(Intersects, Examples) {
  EXPECT_FALSE(intersects(circle(0, 0, 1), circle(3, 0, 1)));
  EXPECT_TRUE(intersects(circle(0, 0, 1), circle(1, 0, 1)));
  EXPECT_TRUE(intersects(circle(0, 0, 1), circle(2, 0, 1)));  // touching counts
  EXPECT_TRUE(intersects(kepler(0, 0, 1), kepler(0.5, 0, 1)));
  EXPECT_FALSE(intersects(kepler(0, 0, 1), kepler(0, 0, 2)));
  EXPECT_FALSE(intersects(wide_hyperbola, narrow_hyperbola));
  EXPECT_TRUE(intersects(hooke(1, 0, 4), hooke(4, 0, 1)));
  EXPECT_TRUE(intersects(vparabola(1, 0, 0), vparabola(2, 0, -1)));
  EXPECT_FALSE(intersects(vparabola(1, 0, 0), vparabola(1, 0, 1)));
  EXPECT_FALSE(intersects(flinear(0, 0, 1), flinear(1, 1, 1)));
  EXPECT_TRUE(intersects(flinear(0, 0, 1), flinear(3, 3, 1)));
  EXPECT_THROW(intersects(circle(0, 0, 1), kepler(0, 0, 1)), FamilyMismatch);
}

TEST(Intersects, HookeSignChangeIsExact) {
  const auto r = find_intersection(hooke(1, 0, 4), hooke(4, 0, 1));
  EXPECT_TRUE(r.found);
  EXPECT_TRUE(r.exact);
  EXPECT_FALSE(find_intersection(wide_hyperbola, narrow_hyperbola).exact);
}

TEST(Intersects, KeplerAgreesWithAmplitudeTest) {
  // Δc + Δa cos θ + Δb sin θ vanishes for some θ iff Δa² + Δb² >= Δc², on the first sheets.
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1), c(0.8, 2);
  for (int i = 0; i < 2000; ++i) {
    // Ellipses only (c > |(a, b)|), so both conics are a single closed sheet.
    const ConicElement a = kepler(0.5 * u(rng), 0.5 * u(rng), c(rng)), b = kepler(0.5 * u(rng), 0.5 * u(rng), c(rng));
    const Vec3 d = difference(a, b);
    const double amp = d[0] * d[0] + d[1] * d[1], c2 = d[2] * d[2];
    if (std::abs(amp - c2) < 1e-6) continue;
    EXPECT_EQ(intersects(a, b), amp > c2) << i;
  }
}

TEST(NestedOracle, Examples) {
  EXPECT_EQ(nested_oracle(circle(0, 0, 1), circle(0, 0, 2)), OracleRelation::nested);
  EXPECT_EQ(nested_oracle(circle(0, 0, 1), circle(1, 0, 2)), OracleRelation::tangent);
  EXPECT_EQ(nested_oracle(circle(0, 0, 1), circle(3, 0, 1)), OracleRelation::disjoint_unnested);
  EXPECT_EQ(nested_oracle(circle(0, 0, 1), circle(1, 0, 1)), OracleRelation::intersecting);
  EXPECT_EQ(nested_oracle(wide_hyperbola, narrow_hyperbola), OracleRelation::nested);
  EXPECT_EQ(nested_oracle(hooke(1, 0, 1), hooke(4, 0, 4)), OracleRelation::nested);
  EXPECT_EQ(nested_oracle(kepler(0, 0, 1), kepler(0.5, 0, 1)), OracleRelation::intersecting);
  EXPECT_EQ(nested_oracle(kepler(0, 0, 1), kepler(1, 0, 2)), OracleRelation::tangent);
  EXPECT_EQ(nested_oracle(vparabola(1, 0, 0), vparabola(1, 0, 1)), OracleRelation::nested);
  EXPECT_EQ(nested_oracle(vparabola(1, 0, 0), vparabola(-1, 0, -1)), OracleRelation::disjoint_unnested);
  EXPECT_EQ(nested_oracle(flinear(0, 0, 1), flinear(2, 2, 1)), OracleRelation::tangent);
  EXPECT_EQ(oracle_relation_name(OracleRelation::disjoint_unnested), "disjoint_unnested");
}

TEST(NestedOracle, CrossedHyperbolaPairDeterminant) {
  EXPECT_NEAR(separation_interval(wide_hyperbola, narrow_hyperbola).value, -2.0 / 3, 1e-12);
  EXPECT_EQ(nested_oracle(narrow_hyperbola, wide_hyperbola), OracleRelation::nested);
}

TEST(NestedOracle, CircleGridAgreesWithVerdict) {
  std::vector<ConicElement> cs;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (double r : {0.5, 1.0, 1.5, 2.0, 3.0}) cs.push_back(circle(-2 + 4.0 * i / 6, -2 + 4.0 * j / 6, r));
  auto expected = [](Relation r) {
    switch (r) {
      case Relation::nested: return OracleRelation::nested;
      case Relation::tangent: return OracleRelation::tangent;
      case Relation::separated: return OracleRelation::disjoint_unnested;
      default: return OracleRelation::intersecting;
    }
  };
  int mismatches = 0;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (nested_oracle(cs[i], cs[j]) != expected(separation_verdict(cs[i], cs[j]).relation)) ++mismatches;
  EXPECT_EQ(mismatches, 0);
}

TEST(NestedOracle, KeplerIffProperty) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1, 1), c(0.0, 2.0);
  int mismatches = 0, checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const ConicElement a = kepler(u(rng), u(rng), 2.0 - c(rng)), b = kepler(u(rng), u(rng), 2.0 - c(rng));
    const double q = separation_interval(a, b).value;
    if (std::abs(q) <= 1e-9) continue;
    ++checked;
    if ((q > 0) != (nested_oracle(a, b) == OracleRelation::nested)) ++mismatches;
  }
  EXPECT_EQ(mismatches, 0);
  EXPECT_GT(checked, 9900);
}

TEST(NestedOracle, HookePositiveDeterminantNeverIntersects) {
  std::mt19937_64 rng(47);
  int found = 0, checked = 0;
  while (checked < 10000) {
    const ConicElement a = random_of(Family::hooke, rng), b = random_of(Family::hooke, rng);
    if (classify_conic(a) != classify_conic(b)) continue;
    if (separation_interval(a, b).value < 1e-9) continue;
    ++checked;
    if (nested_oracle(a, b) == OracleRelation::intersecting) ++found;
  }
  EXPECT_EQ(found, 0);
}

TEST(NestedOracle, NestedImpliesNoIntersection) {
  std::mt19937_64 rng(53);
  for (Family f : all_families) {
    int nested = 0;
    for (int i = 0; i < 400; ++i) {
      const ConicElement a = random_of(f, rng), b = random_of(f, rng);
      if (nested_oracle(a, b) != OracleRelation::nested) continue;
      ++nested;
      EXPECT_FALSE(intersects(a, b)) << family_name(f) << ' ' << i;
    }
    EXPECT_GT(nested, 0) << family_name(f);
  }
}

TEST(NestedOracle, ResolutionLimitedIsFlagged) {
  // Clearance of order 1e-7 lies between the band and 100x the band.
  const auto rep = nested_oracle_report(vparabola(1, 0, 0), vparabola(1, 0, 3e-7));
  EXPECT_EQ(rep.relation, OracleRelation::nested);
  EXPECT_TRUE(rep.resolution_limited);
  EXPECT_FALSE(nested_oracle_report(vparabola(1, 0, 0), vparabola(1, 0, 1)).resolution_limited);
}

TEST(SideSample, BoundaryPointsLieOnTheirConic) {
  std::mt19937_64 rng(59);
  for (Family f : all_families)
    for (int i = 0; i < 20; ++i) {
      const ConicElement a = random_of(f, rng), b = random_of(f, rng);
      const SideSample s = sample_side(a, b);
      ASSERT_FALSE(s.points.empty());
      ASSERT_EQ(s.points.size(), s.side_values.size());
      for (std::size_t k = 0; k < s.points.size(); ++k) {
        const Point2 p = s.points[k];
        const double scale = 1.0 + p.x * p.x + p.y * p.y;
        EXPECT_LE(std::abs(defining_function(a, p.x, p.y)), 1e-10 * scale) << family_name(f);
        EXPECT_EQ(s.side_values[k], side_value(b, p));
      }
    }
}

TEST(SideSample, NestedCircleIsInsideEverywhere) {
  const SideSample s = sample_side(circle(0, 0, 1), circle(0.2, 0, 2));
  for (double v : s.side_values) EXPECT_LT(v, 0.0);
}
