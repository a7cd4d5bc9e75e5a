#pragma once

// Truncated Taylor series arithmetic.
//
// A Taylor<N> holds the normalized coefficients c[k] = f^(k)(t0) / k! of a
// function around an expansion point, for k = 0..N. Every operation below is
// exact on the truncated series (up to rounding), so composing them applies
// the Leibniz and chain rules to all orders at once.

#include <array>
#include <cmath>
#include <cstddef>

namespace tait {

template <int N>
class Taylor {
  static_assert(N >= 0, "Taylor order must be non-negative");

 public:
  static constexpr int order = N;

  constexpr Taylor() = default;
  constexpr Taylor(double value) { c_[0] = value; }  // NOLINT: implicit constant

  // Seed for the independent variable: t0 + h.
  static constexpr Taylor variable(double t0) {
    Taylor r(t0);
    if constexpr (N >= 1) r.c_[1] = 1.0;
    return r;
  }

  constexpr double operator[](int k) const { return c_[k]; }
  constexpr double& operator[](int k) { return c_[k]; }

  constexpr double value() const { return c_[0]; }

  // k-th derivative with respect to the expansion variable.
  constexpr double derivative(int k) const { return c_[k] * factorial(k); }

  // Series of the derivative, one order shorter.
  constexpr Taylor<(N > 0 ? N - 1 : 0)> differentiate() const {
    Taylor<(N > 0 ? N - 1 : 0)> r;
    for (int k = 0; k < N; ++k) r[k] = (k + 1) * c_[k + 1];
    return r;
  }

  bool finite() const {
    for (double v : c_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  static constexpr double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  }

  Taylor& operator+=(const Taylor& o) {
    for (int k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (int k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Taylor& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

 private:
  std::array<double, N + 1> c_{};
};

// Drop coefficients above order M.
template <int M, int N>
constexpr Taylor<M> truncate(const Taylor<N>& a) {
  static_assert(M <= N);
  Taylor<M> r;
  for (int k = 0; k <= M; ++k) r[k] = a[k];
  return r;
}

// Integrate a series of order N-1 into one of order N with the given constant.
template <int N>
constexpr Taylor<N> integrate(const Taylor<N - 1>& d, double constant) {
  Taylor<N> r(constant);
  for (int k = 1; k <= N; ++k) r[k] = d[k - 1] / k;
  return r;
}

template <int N>
Taylor<N> operator-(Taylor<N> a) {
  a *= -1.0;
  return a;
}

template <int N>
Taylor<N> operator+(Taylor<N> a, const Taylor<N>& b) {
  return a += b;
}
template <int N>
Taylor<N> operator-(Taylor<N> a, const Taylor<N>& b) {
  return a -= b;
}
template <int N>
Taylor<N> operator+(Taylor<N> a, double s) {
  a[0] += s;
  return a;
}
template <int N>
Taylor<N> operator+(double s, Taylor<N> a) {
  a[0] += s;
  return a;
}
template <int N>
Taylor<N> operator-(Taylor<N> a, double s) {
  a[0] -= s;
  return a;
}
template <int N>
Taylor<N> operator-(double s, const Taylor<N>& a) {
  return -a + s;
}
template <int N>
Taylor<N> operator*(Taylor<N> a, double s) {
  return a *= s;
}
template <int N>
Taylor<N> operator*(double s, Taylor<N> a) {
  return a *= s;
}

template <int N>
Taylor<N> operator*(const Taylor<N>& a, const Taylor<N>& b) {
  Taylor<N> r;
  for (int k = 0; k <= N; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
    r[k] = s;
  }
  return r;
}

// Requires b.value() != 0.
template <int N>
Taylor<N> operator/(const Taylor<N>& a, const Taylor<N>& b) {
  Taylor<N> q;
  const double b0 = b[0];
  for (int k = 0; k <= N; ++k) {
    double s = a[k];
    for (int j = 0; j < k; ++j) s -= q[j] * b[k - j];
    q[k] = s / b0;
  }
  return q;
}
template <int N>
Taylor<N> operator/(Taylor<N> a, double s) {
  return a *= 1.0 / s;
}
template <int N>
Taylor<N> operator/(double s, const Taylor<N>& b) {
  return Taylor<N>(s) / b;
}

template <int N>
Taylor<N> exp(const Taylor<N>& f) {
  Taylor<N> e(std::exp(f[0]));
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * f[j] * e[k - j];
    e[k] = s / k;
  }
  return e;
}

// Requires f.value() > 0.
template <int N>
Taylor<N> log(const Taylor<N>& f) {
  Taylor<N> l(std::log(f[0]));
  for (int k = 1; k <= N; ++k) {
    double s = f[k];
    for (int j = 1; j < k; ++j) s -= (static_cast<double>(j) / k) * l[j] * f[k - j];
    l[k] = s / f[0];
  }
  return l;
}

// Requires f.value() > 0.
template <int N>
Taylor<N> sqrt(const Taylor<N>& f) {
  Taylor<N> r(std::sqrt(f[0]));
  for (int k = 1; k <= N; ++k) {
    double s = f[k];
    for (int j = 1; j < k; ++j) s -= r[j] * r[k - j];
    r[k] = s / (2.0 * r[0]);
  }
  return r;
}

template <int N>
struct SinCos {
  Taylor<N> sin;
  Taylor<N> cos;
};

template <int N>
SinCos<N> sincos(const Taylor<N>& f) {
  SinCos<N> r{Taylor<N>(std::sin(f[0])), Taylor<N>(std::cos(f[0]))};
  for (int k = 1; k <= N; ++k) {
    double s = 0.0, c = 0.0;
    for (int j = 1; j <= k; ++j) {
      s += j * f[j] * r.cos[k - j];
      c -= j * f[j] * r.sin[k - j];
    }
    r.sin[k] = s / k;
    r.cos[k] = c / k;
  }
  return r;
}

template <int N>
Taylor<N> sin(const Taylor<N>& f) {
  return sincos(f).sin;
}

template <int N>
Taylor<N> cos(const Taylor<N>& f) {
  return sincos(f).cos;
}

// Requires cos(f.value()) != 0.
template <int N>
Taylor<N> tan(const Taylor<N>& f) {
  const auto sc = sincos(f);
  return sc.sin / sc.cos;
}

template <int N>
Taylor<N> atan(const Taylor<N>& f) {
  if constexpr (N == 0) {
    return Taylor<0>(std::atan(f[0]));
  } else {
    const Taylor<N - 1> g = truncate<N - 1>(f);
    const Taylor<N - 1> d = f.differentiate() / (1.0 + g * g);
    return integrate<N>(d, std::atan(f[0]));
  }
}

// Real power with f.value() > 0.
template <int N>
Taylor<N> pow(const Taylor<N>& f, double r) {
  Taylor<N> p(std::pow(f[0], r));
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += (r * (k - j) - j) * f[k - j] * p[j];
    p[k] = s / (k * f[0]);
  }
  return p;
}

// Integer power by repeated squaring; negative exponents need f.value() != 0.
template <int N>
Taylor<N> powi(const Taylor<N>& f, long n) {
  if (n < 0) return 1.0 / powi(f, -n);
  Taylor<N> result(1.0);
  Taylor<N> base = f;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace tait
