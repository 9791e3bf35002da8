#ifndef SEGAL_QS_TWIST_HPP
#define SEGAL_QS_TWIST_HPP

// Smooth twist: an annulus diffeomorphism that is a given circle map on the
// inner circle and the identity on the outer one, built from a path
// Phi_t of circle maps whose t-derivatives all vanish at t = 0 and t = 1:
//   (r, theta) -> (r, Phi_{t(r)}(theta)),   t(r) = (r - r1) / (r2 - r1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "segal/error.hpp"
#include "segal/qs/circle_diffeo.hpp"

namespace segal::qs {

namespace detail {
inline double flat(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
inline double flat_derivative(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }
}  // namespace detail

/// sigma(t) = f(t) / (f(t) + f(1 - t)) with f(t) = exp(-1/t): smooth, flat at
/// both ends, and symmetric, so sigma(1/2) = 1/2.
inline double bump(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::DomainError, "bump argument outside [0, 1]");
  const double a = detail::flat(t), b = detail::flat(1.0 - t);
  return a / (a + b);
}

inline double bump_derivative(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::DomainError, "bump argument outside [0, 1]");
  const double a = detail::flat(t), b = detail::flat(1.0 - t);
  const double s = a + b;
  return (detail::flat_derivative(t) * b + a * detail::flat_derivative(1.0 - t)) / (s * s);
}

struct TwistReport {
  std::size_t nodes = 0;
  double inner_error = 0.0;     // max |Theta(r1, .) - Phi| at the nodes
  double outer_error = 0.0;     // max |Theta(r2, .) - theta| at the nodes
  double min_jacobian = 0.0;    // min dTheta/dtheta, the polar Jacobian
  double max_end_t_derivative = 0.0;  // one-sided differences in t at t = 0, 1
  double max_displacement = 0.0;      // max |Theta - theta| over the annulus
};

class SmoothTwist {
 public:
  SmoothTwist(CircleDiffeo phi, double r1, double r2) : phi_(std::move(phi)), r1_(r1), r2_(r2) {
    if (!(r1 > 0.0 && r2 > r1)) throw Error(ErrorKind::DomainError, "need 0 < r1 < r2");
    delta_ = phi_(0.0);
  }

  double r1() const { return r1_; }
  double r2() const { return r2_; }
  bool fixes_basepoint() const { return delta_ == 0.0; }

  /// Phi_t(theta). Without a fixed basepoint the path first rotates Phi back
  /// by delta = Phi(0) over t in [0, 1/2], then interpolates to the identity.
  double path(double t, double theta) const {
    if (fixes_basepoint()) {
      const double s = bump(t);
      return (1.0 - s) * phi_(theta) + s * theta;
    }
    if (t <= 0.5) return phi_(theta) - delta_ * bump(2.0 * t);
    const double s = bump(2.0 * t - 1.0);
    return (1.0 - s) * (phi_(theta) - delta_) + s * theta;
  }

  /// d Phi_t / d theta.
  double path_dtheta(double t, double theta) const {
    const double d = phi_.derivative(theta);
    if (fixes_basepoint()) {
      const double s = bump(t);
      return (1.0 - s) * d + s;
    }
    if (t <= 0.5) return d;
    const double s = bump(2.0 * t - 1.0);
    return (1.0 - s) * d + s;
  }

  double t_of(double r) const { return (r - r1_) / (r2_ - r1_); }

  /// Angle of the image of (r, theta) on the whole plane: Phi inside the inner
  /// circle, the twist on the annulus, the identity outside.
  double angle(double r, double theta) const {
    if (r <= r1_) return phi_(theta);
    if (r >= r2_) return theta;
    return path(t_of(r), theta);
  }

  std::complex<double> operator()(std::complex<double> z) const {
    const double r = std::abs(z);
    if (r == 0.0) return z;
    return std::polar(r, angle(r, std::arg(z)));
  }

  /// Samples the annulus on an nr x ntheta polar grid (r1 and r2 included)
  /// and checks positivity of the Jacobian at every node.
  TwistReport sample(int nr, int ntheta) const {
    if (nr < 2 || ntheta < 1) throw Error(ErrorKind::DomainError, "need nr >= 2 and ntheta >= 1");
    TwistReport rep;
    rep.min_jacobian = std::numeric_limits<double>::infinity();
    const double h = 1e-3;
    for (int j = 0; j < ntheta; ++j) {
      const double theta = kTwoPi * j / ntheta;
      rep.inner_error = std::max(rep.inner_error, std::abs(path(t_of(r1_), theta) - phi_(theta)));
      rep.outer_error = std::max(rep.outer_error, std::abs(path(t_of(r2_), theta) - theta));
      rep.max_end_t_derivative = std::max({rep.max_end_t_derivative,
                                           std::abs(path(h, theta) - path(0.0, theta)) / h,
                                           std::abs(path(1.0, theta) - path(1.0 - h, theta)) / h});
      for (int i = 0; i < nr; ++i) {
        const double r = i == nr - 1 ? r2_ : r1_ + (r2_ - r1_) * i / (nr - 1);
        const double t = t_of(r);
        const double jac = path_dtheta(t, theta);
        ++rep.nodes;
        if (!(jac > 0.0))
          throw Error(ErrorKind::JacobianDegenerate,
                      "Jacobian " + std::to_string(jac) + " at r=" + std::to_string(r));
        rep.min_jacobian = std::min(rep.min_jacobian, jac);
        rep.max_displacement = std::max(rep.max_displacement, std::abs(path(t, theta) - theta));
      }
    }
    return rep;
  }

 private:
  CircleDiffeo phi_;
  double r1_, r2_;
  double delta_ = 0.0;
};

}  // namespace segal::qs

#endif  // SEGAL_QS_TWIST_HPP
