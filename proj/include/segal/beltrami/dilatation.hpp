#ifndef SEGAL_BELTRAMI_DILATATION_HPP
#define SEGAL_BELTRAMI_DILATATION_HPP

// Pointwise complex-dilatation algebra. A real-linear map of the plane is
// written f(z) = a z + b conj(z); it preserves orientation iff |a| > |b| and
// its dilatation is mu = b / a.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "segal/error.hpp"

namespace segal::beltrami {

using cplx = std::complex<double>;

/// Dilatations this close to the unit circle are rejected.
inline constexpr double kDiscMargin = 1e-9;

inline void require_in_disc(cplx mu, const char* what) {
  if (!(std::abs(mu) < 1.0 - kDiscMargin))
    throw Error(ErrorKind::OutOfDisc, std::string(what) + " has modulus " +
                                          std::to_string(std::abs(mu)) + ", need < 1");
}

struct LinearMapZZbar {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  cplx operator()(cplx z) const { return a * z + b * std::conj(z); }
};

/// The z / conj(z) coefficients of the real matrix [[p, q], [r, s]].
inline LinearMapZZbar linear_from_real(double p, double q, double r, double s) {
  return {cplx(p + s, r - q) / 2.0, cplx(p - s, r + q) / 2.0};
}

/// Real matrix [[p, q], [r, s]] of a z + b conj(z).
inline std::array<double, 4> real_matrix(const LinearMapZZbar& m) {
  return {m.a.real() + m.b.real(), m.b.imag() - m.a.imag(), m.a.imag() + m.b.imag(),
          m.a.real() - m.b.real()};
}

/// outer after inner.
inline LinearMapZZbar compose(const LinearMapZZbar& outer, const LinearMapZZbar& inner) {
  return {outer.a * inner.a + outer.b * std::conj(inner.b),
          outer.a * inner.b + outer.b * std::conj(inner.a)};
}

inline double jacobian(const LinearMapZZbar& m) { return std::norm(m.a) - std::norm(m.b); }

inline cplx mu_of_linear(const LinearMapZZbar& m) {
  if (!(std::abs(m.a) > std::abs(m.b)))
    throw Error(ErrorKind::NotOrientationPreserving, "|a| <= |b|");
  return m.b / m.a;
}

inline double dilatation_K(cplx mu) {
  if (!(std::abs(mu) < 1.0)) throw Error(ErrorKind::OutOfDisc, "|mu| >= 1");
  const double r = std::abs(mu);
  return (1.0 + r) / (1.0 - r);
}

/// |mu| for a map with maximal dilatation K.
inline double mu_modulus_of_K(double K) {
  if (!(K >= 1.0)) throw Error(ErrorKind::DomainError, "K must be >= 1");
  return (K - 1.0) / (K + 1.0);
}

/// Dilatation of g from those of g o f and f, given f's partials at the point.
inline cplx transform_mu(cplx mu_gf, cplx mu_f, cplx fz, cplx fzbar) {
  require_in_disc(mu_gf, "mu_gf");
  require_in_disc(mu_f, "mu_f");
  if (!(std::abs(fz) > std::abs(fzbar)))
    throw Error(ErrorKind::OutOfDisc, "f must satisfy |f_z| > |f_zbar|");
  return fz / std::conj(fz) * (mu_gf - mu_f) / (1.0 - std::conj(mu_f) * mu_gf);
}

/// Inverse of transform_mu: recovers the dilatation on the source from the
/// one on the target, with u = g_z / conj(g_z) of unit modulus.
inline cplx pullback_mu(cplx nu_Y, cplx mu_g, cplx u) {
  require_in_disc(nu_Y, "nu_Y");
  require_in_disc(mu_g, "mu_g");
  if (std::abs(std::abs(u) - 1.0) > 1e-12)
    throw Error(ErrorKind::OutOfDisc, "u must have unit modulus");
  return (nu_Y + u * mu_g) / (u + std::conj(mu_g) * nu_Y);
}

/// Pseudo-hyperbolic distance |(m1 - m2) / (1 - m1 conj(m2))|.
inline double pseudo_hyperbolic(cplx mu1, cplx mu2) {
  return std::abs(mu1 - mu2) / std::abs(1.0 - mu1 * std::conj(mu2));
}

/// log((1 + delta) / (1 - delta)), the hyperbolic distance in the unit disc.
inline double teichmuller_distance(cplx mu1, cplx mu2) {
  require_in_disc(mu1, "mu1");
  require_in_disc(mu2, "mu2");
  const double delta = pseudo_hyperbolic(mu1, mu2);
  return 2.0 * std::atanh(std::min(delta, 1.0));
}

// ---------------------------------------------------------------------------
// Almost complex structures on R^2 as real 2x2 matrices J with J^2 = -I.

struct ACSMatrix {
  double j11 = 0.0, j12 = -1.0, j21 = 1.0, j22 = 0.0;

  std::array<double, 2> apply(double x, double y) const {
    return {j11 * x + j12 * y, j21 * x + j22 * y};
  }
};

/// Largest entry of J^2 + I.
inline double acs_defect(const ACSMatrix& J) {
  const double s11 = J.j11 * J.j11 + J.j12 * J.j21 + 1.0;
  const double s12 = J.j11 * J.j12 + J.j12 * J.j22;
  const double s21 = J.j21 * J.j11 + J.j22 * J.j21;
  const double s22 = J.j21 * J.j12 + J.j22 * J.j22 + 1.0;
  return std::max({std::abs(s11), std::abs(s12), std::abs(s21), std::abs(s22)});
}

/// The complex structure sending (A, B) to (0, 1). It is positively oriented
/// (v, Jv a positive basis) exactly when A > 0.
inline ACSMatrix acs_from_frame(double A, double B) {
  if (!(A > 0.0))
    throw Error(ErrorKind::DegenerateFrame,
                A == 0.0 ? "A = 0" : "A < 0 admits no positively oriented structure");
  return {B, -A, (1.0 + B * B) / A, -B};
}

/// Dilatation of any linear f with J = f^-1 i f, i.e. the structure J is the
/// pullback of the standard one.
inline cplx mu_from_acs(const ACSMatrix& J) {
  const double scale = 1.0 + std::abs(J.j11) + std::abs(J.j12) + std::abs(J.j21) + std::abs(J.j22);
  if (!(acs_defect(J) <= 1e-12 * scale * scale))
    throw Error(ErrorKind::InvalidACS, "J^2 != -I");
  if (!(J.j21 > 0.0)) throw Error(ErrorKind::InvalidACS, "J is not positively oriented");
  const cplx p(J.j11, J.j21);  // image of the first basis vector, as a complex number
  const cplx i(0.0, 1.0);
  return (i - p) / (std::conj(p) - i);
}

/// Pullback of the standard structure by z + mu conj(z).
inline ACSMatrix acs_from_mu(cplx mu) {
  require_in_disc(mu, "mu");
  const auto f = real_matrix({1.0, mu});
  const double det = f[0] * f[3] - f[1] * f[2];
  // J = f^-1 [[0,-1],[1,0]] f
  const double p = f[0], q = f[1], r = f[2], s = f[3];
  return {-(r * s + p * q) / det, -(s * s + q * q) / det, (r * r + p * p) / det,
          (r * s + p * q) / det};
}

}  // namespace segal::beltrami

#endif  // SEGAL_BELTRAMI_DILATATION_HPP
