#pragma once

// Power maps z -> z^k of the plane, the force-law duality they realize, and
// least-squares conic fitting for checking where conics land.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "tait/conics.hpp"
#include "tait/curves.hpp"
#include "tait/error.hpp"
#include "tait/expr.hpp"
#include "tait/family.hpp"

namespace tait {

// Force laws r^a and r^b with (a + 3)(b + 3) = 4, exchanged by z -> z^exponent.
struct DualLawPair {
  double a = 1.0;
  double b = -2.0;
  double exponent = 2.0;
};

inline DualLawPair dual_exponent(double a) {
  if (a == -3.0) throw DomainError("force exponent a = -3 has no dual");
  return {a, 4.0 / (a + 3.0) - 3.0, (a + 3.0) / 2.0};
}

// Principal-branch complex power of each point. For non-integer exponents
// the argument is unwrapped along the sequence, so a connected arc crossing
// the negative real axis maps continuously; pass track_branch = false to
// treat the points as unrelated.
inline std::vector<Point2> power_map(const std::vector<Point2>& points, double exponent, bool track_branch = true) {
  using std::numbers::pi;
  const bool integral = std::floor(exponent) == exponent && std::abs(exponent) <= 64.0;
  std::vector<Point2> out;
  out.reserve(points.size());

  if (integral) {
    const long k = static_cast<long>(exponent);
    for (const Point2& p : points) {
      std::complex<double> z(p.x, p.y);
      if (z == 0.0 && k < 0) throw DomainError("power map with negative exponent at the origin");
      if (k < 0) z = 1.0 / z;
      std::complex<double> acc(1.0, 0.0), base = z;
      for (unsigned long e = static_cast<unsigned long>(std::abs(k)); e; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
      }
      out.push_back({acc.real(), acc.imag()});
    }
    return out;
  }

  double prev = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2 p = points[i];
    const double r = std::hypot(p.x, p.y);
    if (r == 0.0) throw DomainError("power map with non-integer exponent at the origin");
    double arg = std::atan2(p.y, p.x);
    if (track_branch && i > 0) {
      double step = std::remainder(arg - prev, 2 * pi);
      if (std::abs(step) > pi * (1.0 - 1e-9))
        throw DomainError("branch cannot be tracked: consecutive points are antipodal about the origin");
      arg = prev + step;
    }
    prev = arg;
    const double rk = std::pow(r, exponent);
    out.push_back({rk * std::cos(exponent * arg), rk * std::sin(exponent * arg)});
  }
  return out;
}

struct ConicFit {
  ConicElement conic;
  double residual = 0.0;   // RMS of the linear model residual
  double condition = 0.0;  // of the column-equilibrated normal matrix
};

inline constexpr double max_fit_condition = 1e10;

// Linear least squares in the family's parameters.
//   hooke:  a x^2 + 2b xy + c y^2 = 1
//   kepler: a x + b y + c |p| = 1
inline ConicFit fit_conic(const std::vector<Point2>& points, Family family) {
  if (family != Family::hooke && family != Family::kepler)
    throw DomainError("conic fitting supports the hooke and kepler families only");
  if (points.size() < 5) throw NumericalError("conic fit needs at least 5 points");

  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [x, y] = points[static_cast<std::size_t>(i)];
    if (family == Family::hooke)
      a.row(i) << x * x, 2 * x * y, y * y;
    else
      a.row(i) << x, y, std::hypot(x, y);
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

  Eigen::Vector3d scale = a.colwise().norm().transpose();
  for (int k = 0; k < 3; ++k) {
    if (scale[k] == 0.0) throw NumericalError("conic fit is rank deficient (empty column)");
    a.col(k) /= scale[k];
  }
  const Eigen::Matrix3d normal = a.transpose() * a;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(normal);
  const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
  const double condition = lo > 0 ? hi / lo : INFINITY;
  if (!(condition <= max_fit_condition)) throw NumericalError("conic fit is rank deficient (ill-conditioned samples)");

  const Eigen::Vector3d z = normal.ldlt().solve(a.transpose() * ones);
  const double rms = std::sqrt((a * z - ones).squaredNorm() / static_cast<double>(n));
  ConicFit fit;
  fit.conic = {family, {z[0] / scale[0], z[1] / scale[1], z[2] / scale[2]}};
  fit.residual = rms;
  fit.condition = condition;
  return fit;
}

// Image of an origin-centred Hooke conic under z -> z^2.
inline ConicElement square_image(const ConicElement& hooke) {
  if (hooke.family != Family::hooke) throw FamilyMismatch("square image expects a hooke conic");
  const auto [a, b, c] = hooke.params;
  return {Family::kepler, {(a - c) / 2, b, (a + c) / 2}};
}

// The curve z(t)^2, built symbolically so its jets stay exact.
inline ParamCurve square_map_curve(const ParamCurve& c) {
  ParamCurve out = c;
  out.x = c.x * c.x - c.y * c.y;
  out.y = Expression::literal(2.0) * c.x * c.y;
  out.label = c.label.empty() ? std::string("z^2 image") : c.label + " (z^2)";
  return out;
}

}  // namespace tait
