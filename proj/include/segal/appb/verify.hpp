#ifndef SEGAL_APPB_VERIFY_HPP
#define SEGAL_APPB_VERIFY_HPP

// Numeric vanishing orders of J_k x-hat - y-hat along y -> 0. Each component
// is sampled on the dyadic ladder y = 2^-j and its log-log slope fitted by
// least squares. The flow derivatives come from nested dual numbers, so the
// only discretisation error is the adaptive ODE tolerance.

#include <cmath>
#include <string>
#include <vector>

#include "segal/appb/flatten.hpp"
#include "segal/appb/order.hpp"

namespace segal::appb {

inline constexpr int kMaxVerifyLevel = 2;

struct VerifyOptions {
  int j_min = 4;
  int j_max = 12;
  std::vector<double> xs{-0.7, 0.4, 1.3};
  OdeOptions ode{1e-13, 1e-15, 0.25, 100000};
  double slack = 0.25;
  double noise_floor = 1e-13;
};

struct OrderFitRow {
  int k = 0;
  int component = 0;  // 0: A, 1: B - 1
  double x = 0.0;
  long predicted = 0;
  bool exact = false;  // every sample below the noise floor
  double slope = 0.0;
  int points = 0;
  bool meets = false;    // slope >= predicted - slack
  bool matches = false;  // |slope - predicted| <= slack
};

struct OrderReport {
  std::string rho;
  int k_max = 0;
  double slack = 0.25;
  std::vector<OrderFitRow> rows;
  bool ok = false;       // every row meets its prediction
  bool matched = false;  // every non-exact row matches its prediction
};

/// J_k x-hat at p, for -1 <= k <= 2.
template <class T>
Vec2<T> level_field(const BoundaryGlueMap& rho, int k, const Vec2<T>& p, const OdeOptions& ode) {
  switch (k) {
    case -1: return LevelField<-1>{&rho, ode}(p);
    case 0: return LevelField<0>{&rho, ode}(p);
    case 1: return LevelField<1>{&rho, ode}(p);
    case 2: return LevelField<2>{&rho, ode}(p);
    default: throw Error(ErrorKind::DomainError, "level must lie in [-1, " + std::to_string(kMaxVerifyLevel) + "]");
  }
}

/// Least-squares slope of log|v| against log y over samples above the floor.
inline std::pair<double, int> fit_slope(const std::vector<double>& ys, const std::vector<double>& vs, double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(std::abs(vs[i]) > floor)) continue;
    const double lx = std::log(ys[i]), ly = std::log(std::abs(vs[i]));
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++n;
  }
  if (n < 3) return {0.0, n};
  return {(n * sxy - sx * sy) / (n * sxx - sx * sx), n};
}

inline OrderReport verify_orders(const BoundaryGlueMap& rho, int k_max, const VerifyOptions& opt = {}) {
  validate(rho);
  if (k_max < 0 || k_max > kMaxVerifyLevel)
    throw Error(ErrorKind::DomainError, "k_max must lie in [0, " + std::to_string(kMaxVerifyLevel) + "]");
  if (opt.j_min < 1 || opt.j_max < opt.j_min + 2) throw Error(ErrorKind::DomainError, "ladder needs at least 3 rungs");
  OrderReport rep;
  rep.rho = rho.spec();
  rep.k_max = k_max;
  rep.slack = opt.slack;
  rep.ok = rep.matched = true;
  std::vector<double> ys;
  for (int j = opt.j_min; j <= opt.j_max; ++j) ys.push_back(std::ldexp(1.0, -j));
  for (int k = 0; k <= k_max; ++k) {
    const OrderPair predicted = predicted_orders(k);
    for (double x : opt.xs) {
      std::vector<double> a, b;
      for (double y : ys) {
        const Vec2<double> f = level_field(rho, k, Vec2<double>{x, y}, opt.ode);
        a.push_back(f[0]);
        b.push_back(f[1] - 1.0);
      }
      for (int c = 0; c < 2; ++c) {
        OrderFitRow row;
        row.k = k;
        row.component = c;
        row.x = x;
        row.predicted = c == 0 ? predicted.m : predicted.n;
        const auto [slope, points] = fit_slope(ys, c == 0 ? a : b, opt.noise_floor);
        row.points = points;
        row.exact = points < 3;
        row.slope = row.exact ? 0.0 : slope;
        const double pred = static_cast<double>(row.predicted);
        row.meets = row.exact || row.slope >= pred - opt.slack;
        row.matches = row.exact || std::abs(row.slope - pred) <= opt.slack;
        rep.ok = rep.ok && row.meets;
        rep.matched = rep.matched && row.matches;
        rep.rows.push_back(row);
      }
    }
  }
  return rep;
}

}  // namespace segal::appb

#endif  // SEGAL_APPB_VERIFY_HPP
