#pragma once

#include <cmath>
#include <type_traits>

namespace symthermo {

/**
 * Forward-mode dual number: value plus one derivative slot.
 *
 * Nesting gives higher derivatives: Dual<Dual<double>> carries a value,
 * two first derivatives and one mixed second derivative, which is all the
 * Hessian assembly below ever needs. Arithmetic truncates at first order
 * in each epsilon, so results are exact up to round-off (no step-size
 * error as with finite differences).
 */
template <class T>
struct Dual {
  T a{};  ///< value part
  T b{};  ///< derivative part

  constexpr Dual() = default;
  constexpr Dual(T value) : a(value) {}  // NOLINT: implicit by design
  constexpr Dual(T value, T deriv) : a(value), b(deriv) {}
};

using D1 = Dual<double>;
using D2 = Dual<Dual<double>>;

/// Innermost value of a (possibly nested) dual number.
constexpr double scalar_value(double x) { return x; }
template <class T>
constexpr double scalar_value(const Dual<T>& x) {
  return scalar_value(x.a);
}

/// Promote a plain double to scalar type S with zero derivative parts.
template <class S>
constexpr S constant_like(double c) {
  if constexpr (std::is_same_v<S, double>) {
    return c;
  } else {
    return S{constant_like<typename std::remove_cvref_t<decltype(S{}.a)>>(c)};
  }
}

// -- arithmetic ---------------------------------------------------------

template <class T>
constexpr Dual<T> operator-(const Dual<T>& x) {
  return {-x.a, -x.b};
}

template <class T>
constexpr Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
  return {x.a + y.a, x.b + y.b};
}
template <class T>
constexpr Dual<T> operator+(const Dual<T>& x, double c) {
  return {x.a + c, x.b};
}
template <class T>
constexpr Dual<T> operator+(double c, const Dual<T>& x) {
  return {c + x.a, x.b};
}

template <class T>
constexpr Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
  return {x.a - y.a, x.b - y.b};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& x, double c) {
  return {x.a - c, x.b};
}
template <class T>
constexpr Dual<T> operator-(double c, const Dual<T>& x) {
  return {c - x.a, -x.b};
}

template <class T>
constexpr Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
  return {x.a * y.a, x.a * y.b + x.b * y.a};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T>& x, double c) {
  return {x.a * c, x.b * c};
}
template <class T>
constexpr Dual<T> operator*(double c, const Dual<T>& x) {
  return {c * x.a, c * x.b};
}

template <class T>
constexpr Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
  T inv = 1.0 / y.a;
  T q = x.a * inv;
  return {q, (x.b - q * y.b) * inv};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& x, double c) {
  return {x.a / c, x.b / c};
}
template <class T>
constexpr Dual<T> operator/(double c, const Dual<T>& x) {
  T inv = 1.0 / x.a;
  T q = c * inv;
  return {q, -q * inv * x.b};
}

template <class T>
constexpr Dual<T>& operator+=(Dual<T>& x, const Dual<T>& y) {
  x.a += y.a;
  x.b += y.b;
  return x;
}
template <class T>
constexpr Dual<T>& operator-=(Dual<T>& x, const Dual<T>& y) {
  x.a -= y.a;
  x.b -= y.b;
  return x;
}

// -- elementary functions ------------------------------------------------

using std::exp;
using std::log;
using std::pow;
using std::sqrt;

template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.a);
  return {e, e * x.b};
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.a), x.b / x.a};
}

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T r = sqrt(x.a);
  return {r, x.b / (2.0 * r)};
}

/// x^c for constant real exponent; valid wherever the real pow is smooth.
template <class T>
Dual<T> pow(const Dual<T>& x, double c) {
  T v = pow(x.a, c);
  return {v, c * pow(x.a, c - 1.0) * x.b};
}

/// x^y for positive base, via exp(y log x).
template <class T>
Dual<T> pow(const Dual<T>& x, const Dual<T>& y) {
  return exp(y * log(x));
}

}  // namespace symthermo
