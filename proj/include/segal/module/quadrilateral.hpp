#ifndef SEGAL_MODULE_QUADRILATERAL_HPP
#define SEGAL_MODULE_QUADRILATERAL_HPP

// Half-plane quadrilaterals: the upper half-plane with four marked points on
// the extended real line, taken in increasing cyclic order. Infinity is
// written as +inf (or -inf) and may appear at most once.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "segal/error.hpp"

namespace segal::module {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kCoincidence = 1e-12;

struct Quadrilateral {
  std::array<double, 4> z{};
};

/// The unique x in (1, inf] with the quadrilateral Mobius-equivalent to
/// (-1, 0, 1, x). When the fourth vertex would land in (-inf, -1) the
/// vertices are rotated by one, (z1, z2, z3, z0), and `rotated` is set; the
/// module of the original is then the reciprocal of the module at x.
struct Normalized {
  double x = kInf;
  bool rotated = false;
};

/// Real Mobius map (a z + b) / (c z + d) acting on the extended real line.
struct RealMobius {
  double a = 1, b = 0, c = 0, d = 1;

  double det() const { return a * d - b * c; }

  double operator()(double z) const {
    if (std::isinf(z)) return c == 0.0 ? kInf : a / c;
    const double den = c * z + d;
    if (den == 0.0) return kInf;
    return (a * z + b) / den;
  }
};

namespace detail {

inline bool is_inf(double z) { return std::isinf(z); }

inline bool coincide(double a, double b) {
  if (is_inf(a) || is_inf(b)) return is_inf(a) && is_inf(b);
  return std::abs(a - b) <= kCoincidence * std::max({1.0, std::abs(a), std::abs(b)});
}

// Image of z under the Mobius map sending z0, z1, z2 to -1, 0, 1, via the
// cross ratio lambda = ((z - z0)(z1 - z2)) / ((z - z2)(z1 - z0)). The two
// factors holding an infinite point cancel to 1.
inline double normalized_image(double z0, double z1, double z2, double z) {
  double lambda;
  if (is_inf(z))
    lambda = (z1 - z2) / (z1 - z0);
  else if (is_inf(z0))
    lambda = (z1 - z2) / (z - z2);
  else if (is_inf(z1))
    lambda = (z - z0) / (z - z2);
  else if (is_inf(z2))
    lambda = (z - z0) / (z1 - z0);
  else
    lambda = ((z - z0) * (z1 - z2)) / ((z - z2) * (z1 - z0));
  if (lambda == -1.0) return kInf;
  return (lambda - 1.0) / (lambda + 1.0);
}

// Sign of the cyclic order of three distinct points of the extended line;
// IEEE infinities give the right sign for every difference.
inline double cyclic_sign(double a, double b, double c) {
  auto s = [](double v) { return v > 0 ? 1.0 : -1.0; };
  return s(b - a) * s(c - b) * s(c - a);
}

}  // namespace detail

inline void validate_quad(const Quadrilateral& q) {
  int infinite = 0;
  for (double v : q.z) {
    if (std::isnan(v)) throw Error(ErrorKind::DegenerateQuad, "vertex is NaN");
    if (std::isinf(v)) ++infinite;
  }
  if (infinite > 1) throw Error(ErrorKind::DegenerateQuad, "more than one vertex at infinity");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (detail::coincide(q.z[i], q.z[j]))
        throw Error(ErrorKind::DegenerateQuad,
                    "vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  if (detail::cyclic_sign(q.z[0], q.z[1], q.z[2]) < 0 || detail::cyclic_sign(q.z[1], q.z[2], q.z[3]) < 0 ||
      detail::cyclic_sign(q.z[2], q.z[3], q.z[0]) < 0)
    throw Error(ErrorKind::DegenerateQuad, "vertices are not in increasing cyclic order");
}

inline Normalized normalize_quad(const Quadrilateral& q) {
  validate_quad(q);
  const auto& z = q.z;
  const double x = detail::normalized_image(z[0], z[1], z[2], z[3]);
  if (std::isinf(x) || x > 1.0) return {x, false};
  const double y = detail::normalized_image(z[1], z[2], z[3], z[0]);
  if (!(std::isinf(y) || y > 1.0))
    throw Error(ErrorKind::DegenerateQuad, "cross ratio outside the quadrilateral range");
  return {y, true};
}

inline Quadrilateral apply(const RealMobius& m, const Quadrilateral& q) {
  if (!(m.det() > 0.0)) throw Error(ErrorKind::DomainError, "Mobius map must have positive determinant");
  Quadrilateral out;
  for (int i = 0; i < 4; ++i) out.z[i] = m(q.z[i]);
  return out;
}

/// Module of the rectangle with vertices (0, a, a + ib, ib).
inline double module_rect(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::DomainError, "rectangle sides must be positive");
  return a / b;
}

}  // namespace segal::module

#endif  // SEGAL_MODULE_QUADRILATERAL_HPP
