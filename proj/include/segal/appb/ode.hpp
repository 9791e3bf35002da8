#ifndef SEGAL_APPB_ODE_HPP
#define SEGAL_APPB_ODE_HPP

// Dormand-Prince 5(4) for autonomous planar fields z' = F(z), generic in the
// scalar type. Step control reads only the double value parts, so dual
// components ride along the same step sequence and come out as exact
// derivatives of the discrete flow.
//
// The time span may itself be a dual number: the integration runs over
// s in [0, 1] for z' = T F(z).

#include <algorithm>
#include <cmath>

#include "segal/appb/dual.hpp"
#include "segal/error.hpp"

namespace segal::appb {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.25;
  int max_steps = 100000;
};

struct OdeStats {
  int accepted = 0;
  int rejected = 0;
};

template <class T, class F>
Vec2<T> flow_dp5(const F& field, Vec2<T> z, const T& duration, const OdeOptions& opt = {}, OdeStats* stats = nullptr) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2, (void)c3, (void)c4, (void)c5;

  auto rhs = [&](const Vec2<T>& w) {
    Vec2<T> f = field(w);
    return Vec2<T>{duration * f[0], duration * f[1]};
  };
  auto comb = [](const Vec2<T>& base, double h, std::initializer_list<std::pair<double, const Vec2<T>*>> terms) {
    Vec2<T> out = base;
    for (int i = 0; i < 2; ++i) {
      T acc(0.0);
      for (const auto& [c, k] : terms) acc = acc + c * (*k)[i];
      out[i] = out[i] + h * acc;
    }
    return out;
  };

  double s = 0.0;
  double h = std::min(1.0, opt.initial_step);
  Vec2<T> k1 = rhs(z);
  for (int step = 0; s < 1.0; ++step) {
    if (step >= opt.max_steps) throw Error(ErrorKind::DomainError, "ODE step limit reached");
    if (s + h > 1.0) h = 1.0 - s;
    const Vec2<T> k2 = rhs(comb(z, h, {{a21, &k1}}));
    const Vec2<T> k3 = rhs(comb(z, h, {{a31, &k1}, {a32, &k2}}));
    const Vec2<T> k4 = rhs(comb(z, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec2<T> k5 = rhs(comb(z, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec2<T> k6 = rhs(comb(z, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec2<T> z5 = comb(z, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec2<T> k7 = rhs(z5);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * value(e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(value(z[i])), std::abs(value(z5[i])));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) throw Error(ErrorKind::DomainError, "non-finite ODE error estimate");
    if (err <= 1.0) {
      s = (s + h >= 1.0 || 1.0 - (s + h) < 1e-15) ? 1.0 : s + h;
      z = z5;
      k1 = k7;
      if (stats) ++stats->accepted;
    } else if (stats) {
      ++stats->rejected;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < 1e-14 && s < 1.0) throw Error(ErrorKind::DomainError, "ODE step size underflow");
  }
  return z;
}

}  // namespace segal::appb

#endif  // SEGAL_APPB_ODE_HPP
