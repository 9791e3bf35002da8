#ifndef SEGAL_ORACLE_AGM_HPP
#define SEGAL_ORACLE_AGM_HPP

// Closed-form module of the half-plane quadrilateral (-1, 0, 1, x) through
// complete elliptic integrals, K(k) = pi / (2 AGM(1, k')):
//   M(x) = K(k) / K(k') = AGM(1, k) / AGM(1, k'),
//   k = sqrt((x - 1) / (2x)),  k' = sqrt((x + 1) / (2x)).
// Shares no code with the quadrature path.

#include <cmath>

namespace segal::oracle {

inline long double agm(long double a, long double b) {
  for (int i = 0; i < 64 && std::fabs(a - b) > 1e-19L * a; ++i) {
    const long double m = (a + b) / 2;
    b = std::sqrt(a * b);
    a = m;
  }
  return (a + b) / 2;
}

inline double module_agm(double x) {
  const long double X = x;
  const long double k = std::sqrt((X - 1) / (2 * X));
  const long double kp = std::sqrt((X + 1) / (2 * X));
  return static_cast<double>(agm(1.0L, k) / agm(1.0L, kp));
}

}  // namespace segal::oracle

#endif  // SEGAL_ORACLE_AGM_HPP
