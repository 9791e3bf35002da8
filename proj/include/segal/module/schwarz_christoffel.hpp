#ifndef SEGAL_MODULE_SCHWARZ_CHRISTOFFEL_HPP
#define SEGAL_MODULE_SCHWARZ_CHRISTOFFEL_HPP

// Side lengths of the rectangle image of (-1, 0, 1, x) under
//   w(z) = int_0^z ds / sqrt(s (s^2 - 1)(s - x)),
// and the module M = |w(x) - w(1)| / |w(1) - w(0)|.
//
// Every side integral has inverse square-root singularities at its ends.
// They are removed by substitution before double-exponential quadrature:
//   [-1, 0]  s = -sin^2 t
//   [0, 1]   s = u^2 on [0, 1/2]; s = 1 - eps sinh^2 v on [1/2, 1], eps = x - 1
//   [1, x]   s = 1 + (x - 1) sin^2 t
//   [x, -1]  through infinity, s = x + u^2 and s = -1 - u^2 on [0, inf)
// The sinh substitution keeps the [0, 1] side smooth as x approaches 1.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "segal/error.hpp"
#include "segal/module/quadrilateral.hpp"

namespace segal::module {

inline constexpr double kMinX = 1.0 + 1e-9;
inline constexpr double kQuadratureTol = 1e-10;

struct ScSides {
  double l01 = 0.0;  // [-1, 0]
  double l12 = 0.0;  // [0, 1]
  double l23 = 0.0;  // [1, x]
  double l30 = 0.0;  // [x, inf] + [-inf, -1]
};

namespace detail {

// Tanh-sinh on finite intervals, exp-sinh on [a, inf). Both report the
// difference between the last two refinement levels as the error.
template <class F>
double integrate(F f, double a, double b, const char* what) {
  double err = 0.0, l1 = 0.0, v = 0.0;
  if (std::isinf(b)) {
    thread_local boost::math::quadrature::exp_sinh<double> rule;
    v = rule.integrate(f, a, b, 1e-14, &err, &l1);
  } else {
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    v = rule.integrate(f, a, b, 1e-14, &err, &l1);
  }
  if (!std::isfinite(v) || err > kQuadratureTol * std::max(l1, 1e-300))
    throw Error(ErrorKind::QuadratureFailure,
                std::string(what) + ": error estimate " + std::to_string(err) + " exceeds tolerance");
  return v;
}

}  // namespace detail

inline ScSides sc_sides(double x) {
  if (!(x >= kMinX) || std::isinf(x)) throw Error(ErrorKind::DomainError, "need 1 < x < inf");
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double eps = x - 1.0;
  ScSides s;
  s.l01 = detail::integrate(
      [x](double t) {
        const double q = std::sin(t) * std::sin(t);
        return 2.0 / std::sqrt((1.0 + q) * (x + q));
      },
      0.0, half_pi, "side [-1, 0]");
  s.l12 = detail::integrate([x](double u) { return 2.0 / std::sqrt((1.0 - u * u * u * u) * (x - u * u)); }, 0.0,
                            std::sqrt(0.5), "side [0, 1/2]") +
          detail::integrate(
              [eps](double v) {
                const double sh = std::sinh(v);
                const double q = 1.0 - eps * sh * sh;
                return 2.0 / std::sqrt(q * (1.0 + q));
              },
              0.0, std::asinh(std::sqrt(0.5 / eps)), "side [1/2, 1]");
  s.l23 = detail::integrate(
      [eps](double t) {
        const double sn = std::sin(t);
        const double q = 1.0 + eps * sn * sn;
        return 2.0 / std::sqrt(q * (q + 1.0));
      },
      0.0, half_pi, "side [1, x]");
  s.l30 = detail::integrate(
              [x](double u) {
                const double q = x + u * u;
                return 2.0 / std::sqrt(q * (q * q - 1.0));
              },
              0.0, kInf, "side [x, inf]") +
          detail::integrate(
              [x](double u) {
                const double a = 1.0 + u * u;
                return 2.0 / std::sqrt(a * (a + 1.0) * (x + a));
              },
              0.0, kInf, "side [-inf, -1]");
  return s;
}

/// Module of the half-plane quadrilateral (-1, 0, 1, x); M(inf) = 1.
inline double module_sc(double x) {
  if (std::isinf(x) && x > 0) return 1.0;
  const ScSides s = sc_sides(x);
  return s.l23 / s.l12;
}

/// Module of the rotated quadrilateral (0, 1, x, -1), read off the same
/// rectangle: side [0, 1] over side [1, x].
inline double module_sc_rotated(double x) {
  if (std::isinf(x) && x > 0) return 1.0;
  const ScSides s = sc_sides(x);
  return s.l12 / s.l01;
}

inline double module_of_quad(const Quadrilateral& q) {
  const Normalized n = normalize_quad(q);
  const double m = module_sc(n.x);
  return n.rotated ? 1.0 / m : m;
}

}  // namespace segal::module

#endif  // SEGAL_MODULE_SCHWARZ_CHRISTOFFEL_HPP
