#ifndef SEGAL_QS_CORNER_HPP
#define SEGAL_QS_CORNER_HPP

// The corner-introducing map sigma(r e^{i theta}) = sqrt(r) e^{i Phi(theta)},
// where Phi is a circle diffeomorphism equal to theta/2 on the upper
// semicircle. On the closed upper half-plane it is the principal square root,
// so that half-plane lands on the closed first quadrant; the branch cut sits
// on the negative imaginary axis (theta in (-pi/2, 3pi/2]).
//
// In polar coordinates sigma stretches radially by 1/2 (relative to r) and
// angularly by Phi'(theta), so its pointwise dilatation is
//   K(theta) = max(2 Phi', 1 / (2 Phi')).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "segal/beltrami/dilatation.hpp"
#include "segal/error.hpp"
#include "segal/qs/circle_diffeo.hpp"

namespace segal::qs {

using cplx = std::complex<double>;

struct CornerResult {
  std::vector<cplx> images;
  double K = 1.0;           // sup of the pointwise dilatation
  double min_slope = 0.0;   // min Phi'
  double max_slope = 0.0;   // max Phi'
  /// max(max Phi' / 2, 2 / min Phi'): an alternative closed form that does
  /// not match the map's dilatation; reported for comparison only.
  double alt_formula_K = 1.0;
};

/// Argument in (-pi/2, 3pi/2].
inline double corner_argument(cplx z) {
  double a = std::arg(z);
  if (a <= -std::numbers::pi / 2.0) a += kTwoPi;
  return a;
}

inline cplx corner_point(const CircleDiffeo& phi, cplx z) {
  if (z == cplx(0.0)) return 0.0;
  return std::polar(std::sqrt(std::abs(z)), phi(corner_argument(z)));
}

/// Checks the semicircle condition and positivity, then maps the points.
/// Slopes are sampled at `samples` cell midpoints around the circle.
inline CornerResult corner_map(const CircleDiffeo& phi, const std::vector<cplx>& points, int samples = 8192) {
  constexpr double pi = std::numbers::pi;
  phi.validate(samples);
  for (int k = 0; k <= 256; ++k) {
    const double theta = pi * k / 256.0;
    if (std::abs(phi(theta) - theta / 2.0) > 1e-9)
      throw Error(ErrorKind::InvalidPhi, "Phi(theta) != theta/2 on the upper semicircle");
  }
  CornerResult r;
  r.min_slope = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double d = phi.derivative((k + 0.5) * kTwoPi / samples);
    r.min_slope = std::min(r.min_slope, d);
    r.max_slope = std::max(r.max_slope, d);
  }
  r.K = std::max(2.0 * r.max_slope, 1.0 / (2.0 * r.min_slope));
  r.alt_formula_K = std::max(0.5 * r.max_slope, 2.0 / r.min_slope);
  r.images.reserve(points.size());
  for (const cplx& z : points) r.images.push_back(corner_point(phi, z));
  return r;
}

/// Geometric dilatation estimate: sup over `points` of (|a|+|b|)/(|a|-|b|)
/// for the Jacobian of `map` obtained by centred differences of step h
/// relative to |z|.
inline double estimate_dilatation_fd(const std::function<cplx(cplx)>& map, const std::vector<cplx>& points,
                                     double h = 1e-6) {
  double K = 1.0;
  const cplx I(0.0, 1.0);
  for (const cplx& z : points) {
    const double step = h * std::max(1.0, std::abs(z));
    const cplx fx = (map(z + step) - map(z - step)) / (2.0 * step);
    const cplx fy = (map(z + I * step) - map(z - I * step)) / (2.0 * step);
    const beltrami::LinearMapZZbar m{(fx - I * fy) / 2.0, (fx + I * fy) / 2.0};
    const double a = std::abs(m.a), b = std::abs(m.b);
    if (!(a > b)) throw Error(ErrorKind::NotOrientationPreserving, "sampled Jacobian not positive");
    K = std::max(K, (a + b) / (a - b));
  }
  return K;
}

/// Polar grid of sample points avoiding the branch cut and the origin.
inline std::vector<cplx> corner_probe_points(int n_radii, int n_angles) {
  std::vector<cplx> pts;
  for (int i = 0; i < n_radii; ++i) {
    const double r = 0.25 + 1.75 * i / std::max(1, n_radii - 1);
    for (int j = 0; j < n_angles; ++j) {
      const double theta = -std::numbers::pi / 2.0 + kTwoPi * (j + 0.5) / n_angles;
      pts.push_back(std::polar(r, theta));
    }
  }
  return pts;
}

}  // namespace segal::qs

#endif  // SEGAL_QS_CORNER_HPP
