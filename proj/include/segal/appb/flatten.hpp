#ifndef SEGAL_APPB_FLATTEN_HPP
#define SEGAL_APPB_FLATTEN_HPP

// One flattening step. Given the field F = J x-hat on a boundary strip, the
// flow map Gamma(x, y) = gamma_x(y) runs the integral curve of F from (x, 0)
// for time y, and delta = Gamma^{-1} straightens those curves to verticals.
//
// An almost complex structure on the plane is fixed by J x-hat alone: with
// J x-hat = (A, B), J^2 = -I forces J = [[A, -(1 + A^2)/B], [B, -A]]. So the
// pushed-forward field delta_* J x-hat at p is DGamma(p)^{-1} J(Gamma(p))
// d_x Gamma(p), and d_y Gamma = F(Gamma) needs no differentiation.

#include <algorithm>
#include <cmath>
#include <vector>

#include "segal/appb/dual.hpp"
#include "segal/appb/glue_map.hpp"
#include "segal/appb/ode.hpp"
#include "segal/beltrami/dilatation.hpp"
#include "segal/error.hpp"
#include "segal/tolerance.hpp"

namespace segal::appb {

/// J w for the structure with J x-hat = jx.
template <class T>
Vec2<T> apply_acs(const Vec2<T>& jx, const Vec2<T>& w) {
  const T& A = jx[0];
  const T& B = jx[1];
  return {A * w[0] - (1.0 + A * A) / B * w[1], B * w[0] - A * w[1]};
}

template <class T>
struct FlowJet {
  Vec2<T> point;  // Gamma(x, y)
  Vec2<T> dx;     // d_x Gamma(x, y)
};

template <class T, class F>
FlowJet<T> flow_jet(const F& field, const T& x, const T& y, const OdeOptions& opt) {
  using D = Dual<T>;
  const Vec2<D> start{D(x, T(1.0)), D(T(0.0), T(0.0))};
  const Vec2<D> end = flow_dp5<D>(field, start, D(y, T(0.0)), opt);
  return {{primal(end[0]), primal(end[1])}, {tangent(end[0]), tangent(end[1])}};
}

/// delta_* (field) at p.
template <class T, class F>
Vec2<T> pushforward_field(const F& field, const Vec2<T>& p, const OdeOptions& opt) {
  const FlowJet<T> jet = flow_jet(field, p[0], p[1], opt);
  const Vec2<T> a = jet.dx;
  const Vec2<T> b = field(jet.point);
  const Vec2<T> w = apply_acs(b, a);
  const T det = a[0] * b[1] - a[1] * b[0];
  if (!(value(det) > 0.0)) throw Error(ErrorKind::InversionFailure, "flow map Jacobian is not positive");
  return {(w[0] * b[1] - w[1] * b[0]) / det, (a[0] * w[1] - a[1] * w[0]) / det};
}

/// J_K x-hat for the recursion started from tau_{-1}(x, y) = (rho(x), y).
/// J_{-1} x-hat is the tau_{-1} pushforward of the standard structure,
/// (0, 1/rho'(rho^{-1}(X))). Each level nests one more dual layer.
template <int K>
struct LevelField {
  static_assert(K >= -1);
  const BoundaryGlueMap* rho;
  OdeOptions ode;

  template <class T>
  Vec2<T> operator()(const Vec2<T>& p) const {
    if constexpr (K == -1) {
      const T x = rho->inverse(p[0]);
      return {T(0.0), 1.0 / rho->derivative(x)};
    } else {
      return pushforward_field(LevelField<K - 1>{rho, ode}, p, ode);
    }
  }
};

struct StripGrid {
  double x0 = -1.0;
  double x1 = 1.0;
  int nx = 16;
  double y_max = 0.5;
  int ny = 8;

  double hx() const { return (x1 - x0) / nx; }
  double hy() const { return y_max / ny; }
  double x(int i) const { return x0 + i * hx(); }
  double y(int j) const { return j * hy(); }
};

struct FlattenOptions {
  OdeOptions ode{};
  double newton_tol = 1e-9;
  int newton_max = 50;
  double fd_constant = 10.0;  // grid tolerance is 1e-6 + fd_constant h^2
};

struct FlattenReport {
  StripGrid grid;
  std::vector<Vec2<double>> delta;  // delta at node (i, j), row-major in j
  std::vector<Vec2<double>> curve;  // Gamma at node (i, j)
  double boundary_error = 0.0;
  double pushforward_error = 0.0;
  double grid_tolerance = 0.0;
  double max_dilatation = 1.0;
  int interior_nodes = 0;
  bool ok = false;

  const Vec2<double>& delta_at(int i, int j) const { return delta[static_cast<std::size_t>(j * (grid.nx + 1) + i)]; }
};

namespace detail {

inline void validate_grid(const StripGrid& g) {
  if (!(g.x0 < g.x1) || !(g.y_max > 0.0) || g.nx < 2 || g.ny < 2 || !std::isfinite(g.x1) || !std::isfinite(g.y_max))
    throw Error(ErrorKind::DomainError, "strip grid needs x0 < x1, y_max > 0 and at least 2 cells each way");
}

template <class F>
FlowJet<double> guarded_jet(const F& field, double x, double y, const OdeOptions& opt) {
  try {
    return flow_jet(field, x, y, opt);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OutOfWindow) throw Error(ErrorKind::CurveEscape, std::string("integral curve left the strip: ") + e.what());
    throw;
  }
}

}  // namespace detail

/// Solves Gamma(u, v) = (X, Y) by Newton; returns delta(X, Y) = (u, v) and
/// the Jacobian of Gamma there, columns d_x Gamma and F(Gamma).
template <class F>
std::pair<Vec2<double>, std::array<double, 4>> invert_flow(const F& field, double X, double Y,
                                                            const FlattenOptions& opt) {
  const Vec2<double> f0 = field(Vec2<double>{X, 0.0});
  Vec2<double> uv{X, Y / f0[1]};
  for (int it = 0; it < opt.newton_max; ++it) {
    const FlowJet<double> jet = detail::guarded_jet(field, uv[0], uv[1], opt.ode);
    const Vec2<double> b = field(jet.point);
    const double a0 = jet.dx[0], a1 = jet.dx[1];
    const double det = a0 * b[1] - a1 * b[0];
    if (!(det > 0.0)) throw Error(ErrorKind::InversionFailure, "coordinate grid folds (non-positive Jacobian)");
    const double r0 = jet.point[0] - X, r1 = jet.point[1] - Y;
    if (std::hypot(r0, r1) <= opt.newton_tol) return {uv, {a0, b[0], a1, b[1]}};
    uv[0] -= (r0 * b[1] - r1 * b[0]) / det;
    uv[1] -= (a0 * r1 - a1 * r0) / det;
    if (!std::isfinite(uv[0]) || !std::isfinite(uv[1])) break;
  }
  throw Error(ErrorKind::InversionFailure, "Newton inversion of the flow map did not converge");
}

template <class F>
FlattenReport flatten_step(const F& field, const StripGrid& grid, const FlattenOptions& opt = {}) {
  detail::validate_grid(grid);
  FlattenReport rep;
  rep.grid = grid;
  const int nx = grid.nx, ny = grid.ny;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const Vec2<double> f = field(Vec2<double>{grid.x(i), grid.y(j)});
      if (!(f[1] > 0.0)) throw Error(ErrorKind::DomainError, "second component of J x-hat must be positive");
    }

  rep.curve.resize(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  rep.delta.resize(rep.curve.size());
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const auto idx = static_cast<std::size_t>(j * (nx + 1) + i);
      const FlowJet<double> jet = detail::guarded_jet(field, grid.x(i), grid.y(j), opt.ode);
      if (jet.point[1] < 0.0) throw Error(ErrorKind::CurveEscape, "integral curve left the strip");
      rep.curve[idx] = jet.point;
      const auto [uv, jac] = invert_flow(field, grid.x(i), grid.y(j), opt);
      rep.delta[idx] = uv;
      // Dilatation of delta equals that of its inverse Gamma.
      rep.max_dilatation = std::max(
          rep.max_dilatation, beltrami::dilatation_K(beltrami::mu_of_linear(beltrami::linear_from_real(jac[0], jac[1], jac[2], jac[3]))));
    }

  for (int i = 0; i <= nx; ++i) {
    const Vec2<double>& d = rep.delta_at(i, 0);
    rep.boundary_error = std::max(rep.boundary_error, std::hypot(d[0] - grid.x(i), d[1]));
  }
  const double hx = grid.hx(), hy = grid.hy();
  for (int j = 1; j < ny; ++j)
    for (int i = 1; i < nx; ++i) {
      const Vec2<double> f = field(Vec2<double>{grid.x(i), grid.y(j)});
      const Vec2<double>&e = rep.delta_at(i + 1, j), &w = rep.delta_at(i - 1, j);
      const Vec2<double>&n = rep.delta_at(i, j + 1), &s = rep.delta_at(i, j - 1);
      const double r0 = (e[0] - w[0]) / (2 * hx) * f[0] + (n[0] - s[0]) / (2 * hy) * f[1];
      const double r1 = (e[1] - w[1]) / (2 * hx) * f[0] + (n[1] - s[1]) / (2 * hy) * f[1] - 1.0;
      rep.pushforward_error = std::max(rep.pushforward_error, std::hypot(r0, r1));
      ++rep.interior_nodes;
    }
  const double h = std::max(hx, hy);
  rep.grid_tolerance = scaled(1e-6 + opt.fd_constant * h * h);
  rep.ok = rep.boundary_error <= scaled(1e-12) && rep.pushforward_error <= rep.grid_tolerance &&
           std::isfinite(rep.max_dilatation);
  return rep;
}

}  // namespace segal::appb

#endif  // SEGAL_APPB_FLATTEN_HPP
