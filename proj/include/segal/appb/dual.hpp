#ifndef SEGAL_APPB_DUAL_HPP
#define SEGAL_APPB_DUAL_HPP

// Forward-mode dual numbers v + d eps with eps^2 = 0, nestable:
// Dual<Dual<double>> carries mixed second derivatives, and so on.

#include <array>
#include <cmath>

namespace segal::appb {

template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() = default;
  Dual(double c) : v(c), d(0.0) {}  // NOLINT: constants promote implicitly
  Dual(T value, T deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const T inv = T(1.0) / b.v;
    return {a.v * inv, (a.d - a.v * inv * b.d) * inv};
  }
  friend Dual operator+(double a, const Dual& b) { return Dual(a) + b; }
  friend Dual operator+(const Dual& a, double b) { return a + Dual(b); }
  friend Dual operator-(double a, const Dual& b) { return Dual(a) - b; }
  friend Dual operator-(const Dual& a, double b) { return a - Dual(b); }
  friend Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d}; }
  friend Dual operator*(const Dual& a, double b) { return {a.v * b, a.d * b}; }
  friend Dual operator/(const Dual& a, double b) { return {a.v / b, a.d / b}; }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

  friend Dual sin(const Dual& a) {
    using std::cos, std::sin;
    return {sin(a.v), cos(a.v) * a.d};
  }
  friend Dual cos(const Dual& a) {
    using std::cos, std::sin;
    return {cos(a.v), -sin(a.v) * a.d};
  }
  friend Dual exp(const Dual& a) {
    using std::exp;
    const T e = exp(a.v);
    return {e, e * a.d};
  }
  friend Dual sqrt(const Dual& a) {
    using std::sqrt;
    const T r = sqrt(a.v);
    return {r, a.d / (2.0 * r)};
  }
};

inline double value(double x) { return x; }

template <class T>
double value(const Dual<T>& x) {
  return value(x.v);
}

/// Strips one level: the value part.
template <class T>
T primal(const Dual<T>& x) {
  return x.v;
}

template <class T>
T tangent(const Dual<T>& x) {
  return x.d;
}

template <class T>
using Vec2 = std::array<T, 2>;

}  // namespace segal::appb

#endif  // SEGAL_APPB_DUAL_HPP
