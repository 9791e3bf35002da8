#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles/order_iteration.hpp"
#include "oracles/vertical_flatten.hpp"
#include "segal/appb/flatten.hpp"
#include "segal/appb/glue_map.hpp"
#include "segal/appb/order.hpp"
#include "segal/appb/verify.hpp"

using namespace segal;
using namespace segal::appb;
using Catch::Approx;

namespace {

struct ConstantField {
  double a, b;
  template <class T>
  Vec2<T> operator()(const Vec2<T>&) const {
    return {T(a), T(b)};
  }
};

// (0, rho'(x)) for rho(x) = x + a sin(b x).
struct RhoPrimeField {
  double a, b;
  template <class T>
  Vec2<T> operator()(const Vec2<T>& p) const {
    using std::cos;
    return {T(0.0), 1.0 + a * b * cos(b * p[0])};
  }
};

// Constant field defined only for |x| <= 1.5.
struct BoundedField {
  template <class T>
  Vec2<T> operator()(const Vec2<T>& p) const {
    if (std::abs(value(p[0])) > 1.5) throw Error(ErrorKind::OutOfWindow, "outside field domain");
    return {T(1.0), T(1.0)};
  }
};

struct TiltedField {
  template <class T>
  Vec2<T> operator()(const Vec2<T>& p) const {
    using std::sin;
    return {0.3 * sin(p[1] + p[0]), 1.0 + 0.2 * p[1] * p[1]};
  }
};

}  // namespace

TEST_CASE("order step and sequence") {
  CHECK(order_step(OrderPair{}) == OrderPair{1, 2});
  CHECK(order_step({1, 2}) == OrderPair{3, 2});
  CHECK(order_step({3, 2}) == OrderPair{3, 4});
  const std::vector<OrderPair> expected{{kInfiniteOrder, 0}, {1, 2}, {3, 2}, {3, 4}, {5, 4}, {5, 6}};
  CHECK(order_sequence(5) == expected);
  CHECK(to_string(order_sequence(0)[0]) == "(inf,0)");
  CHECK_THROWS_AS(order_sequence(-1), Error);
  CHECK_THROWS_AS(order_step({0, 1}), Error);
  CHECK_THROWS_AS(order_step({2, -1}), Error);
  CHECK(predicted_orders(-1) == OrderPair{});
  CHECK(predicted_orders(1) == OrderPair{3, 2});
}

TEST_CASE("order sequence agrees with the floating-point iteration") {
  const auto seq = order_sequence(100);
  const auto ref = oracle::iterate_orders(100);
  REQUIRE(seq.size() == ref.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double m = seq[k].m_infinite() ? INFINITY : static_cast<double>(seq[k].m);
    CHECK(m == ref[k].first);
    CHECK(static_cast<double>(seq[k].n) == ref[k].second);
  }
}

TEST_CASE("order sequence properties") {
  const auto seq = order_sequence(100);
  for (std::size_t k = 1; k < seq.size(); ++k) {
    CHECK(seq[k].min() >= seq[k - 1].min());
    CHECK(seq[k].m >= 1);
    if (k >= 2) {
      CHECK(2 * seq[k].min() >= static_cast<long>(k));
      // Past the first step the second branch of the min is the active one.
      CHECK(seq[k].n == seq[k - 1].m + 1);
    }
  }
  int first = -1;
  for (std::size_t k = 0; k < seq.size() && first < 0; ++k)
    if (seq[k].min() > 20) first = static_cast<int>(k);
  CHECK(first >= 0);
  CHECK(first <= 45);
}

TEST_CASE("glue map parsing and inverse") {
  CHECK(parse_glue_map("identity").kind == BoundaryGlueMap::Kind::Identity);
  CHECK(parse_glue_map("id").kind == BoundaryGlueMap::Kind::Identity);
  const auto lin = parse_glue_map("linear:2");
  CHECK(lin(1.5) == 3.0);
  const auto s = parse_glue_map("sine:0.1");
  CHECK(s.b == 1.0);
  const auto s2 = parse_glue_map("sine:0.2,2");
  CHECK(s2(1.0) == Approx(1.0 + 0.2 * std::sin(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(parse_glue_map("sine:2"), Error);
  CHECK_THROWS_AS(parse_glue_map("linear:-1"), Error);
  CHECK_THROWS_AS(parse_glue_map("cubic:1"), Error);
  CHECK_THROWS_AS(parse_glue_map("linear:abc"), Error);
  try {
    parse_glue_map("sine:1.5");
    FAIL("expected NonMonotone");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonMonotone);
  }

  for (double X : {-3.0, -0.5, 0.0, 0.9, 2.7}) {
    const double x = s2.inverse(X);
    CHECK(s2(x) == Approx(X).margin(1e-14));
    // Inverse function theorem through the dual part, twice nested.
    using D2 = Dual<Dual<double>>;
    const D2 Xd(Dual<double>(X, 1.0), Dual<double>(1.0, 0.0));
    const D2 xd = s2.inverse(Xd);
    const double r1 = s2.derivative(x);
    const double r2 = -0.2 * 4.0 * std::sin(2.0 * x);
    CHECK(xd.v.d == Approx(1.0 / r1).epsilon(1e-13));
    CHECK(xd.d.d == Approx(-r2 / (r1 * r1 * r1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(s2.inverse(50.0), Error);
}

TEST_CASE("tau_minus1") {
  const auto id = parse_glue_map("identity");
  const std::vector<Vec2<double>> pts{{-1.0, 0.0}, {0.5, 0.2}, {2.0, 0.4}};
  CHECK(tau_minus1(id, pts, 0.5) == pts);
  const auto s = parse_glue_map("sine:0.1");
  const auto img = tau_minus1(s, pts, 0.5);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(img[i][0] == s(pts[i][0]));
    CHECK(img[i][1] == pts[i][1]);
  }
  // A vertical line stays vertical.
  const auto line = tau_minus1(s, {{0.7, 0.0}, {0.7, 0.1}, {0.7, 0.3}}, 0.5);
  CHECK(line[0][0] == line[1][0]);
  CHECK(line[1][0] == line[2][0]);
  try {
    tau_minus1(s, {{9.0, 0.0}}, 0.5);
    FAIL("expected OutOfWindow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfWindow);
  }
  CHECK_THROWS_AS(tau_minus1(s, {{0.0, 0.6}}, 0.5), Error);
}

TEST_CASE("nested duals and the integrator") {
  using D = Dual<double>;
  using DD = Dual<D>;
  const DD x(D(0.7, 1.0), D(1.0, 0.0));
  const DD f = sin(x) * x;
  CHECK(f.v.v == Approx(std::sin(0.7) * 0.7));
  CHECK(f.v.d == Approx(std::cos(0.7) * 0.7 + std::sin(0.7)));
  CHECK(f.d.d == Approx(-std::sin(0.7) * 0.7 + 2 * std::cos(0.7)));

  // Rotation field: after time t the point (1, 0) sits at (cos t, sin t);
  // the duration's dual part gives the velocity.
  auto rot = [](const auto& z) { return std::array{-z[1], z[0]}; };
  OdeStats stats;
  const Vec2<D> end = flow_dp5<D>(rot, Vec2<D>{D(1.0), D(0.0)}, D(2.0, 1.0), OdeOptions{1e-12, 1e-14}, &stats);
  CHECK(end[0].v == Approx(std::cos(2.0)).margin(1e-10));
  CHECK(end[1].v == Approx(std::sin(2.0)).margin(1e-10));
  CHECK(end[0].d == Approx(-std::sin(2.0)).margin(1e-9));
  CHECK(end[1].d == Approx(std::cos(2.0)).margin(1e-9));
  CHECK(stats.accepted > 0);
  const Vec2<double> zero = flow_dp5<double>(rot, Vec2<double>{1.0, 0.0}, 0.0);
  CHECK(zero == Vec2<double>{1.0, 0.0});
}

TEST_CASE("apply_acs squares to minus one") {
  for (const Vec2<double>& jx : {Vec2<double>{0.0, 1.0}, Vec2<double>{0.3, 0.8}, Vec2<double>{-1.2, 2.0}}) {
    const Vec2<double> w{0.4, -1.1};
    const Vec2<double> jjw = apply_acs(jx, apply_acs(jx, w));
    CHECK(jjw[0] == Approx(-w[0]).margin(1e-14));
    CHECK(jjw[1] == Approx(-w[1]).margin(1e-14));
    const Vec2<double> j1 = apply_acs(jx, Vec2<double>{1.0, 0.0});
    CHECK(j1 == jx);
  }
}

TEST_CASE("flatten the standard structure") {
  const StripGrid grid{-1.0, 1.0, 8, 0.5, 4};
  const auto rep = flatten_step(ConstantField{0.0, 1.0}, grid);
  CHECK(rep.ok);
  CHECK(rep.boundary_error == 0.0);
  for (int j = 0; j <= grid.ny; ++j)
    for (int i = 0; i <= grid.nx; ++i) {
      CHECK(rep.delta_at(i, j)[0] == Approx(grid.x(i)).margin(1e-14));
      CHECK(rep.delta_at(i, j)[1] == Approx(grid.y(j)).margin(1e-14));
    }
  CHECK(rep.pushforward_error < 1e-12);
  CHECK(rep.max_dilatation == Approx(1.0).margin(1e-12));
  CHECK(rep.interior_nodes == 7 * 3);
}

TEST_CASE("flatten a vertical field against the closed form") {
  const double a = 0.1, b = 1.0;
  const StripGrid grid{-2.0, 2.0, 16, 0.5, 8};
  const auto rep = flatten_step(RhoPrimeField{a, b}, grid);
  REQUIRE(rep.ok);
  double worst = 0.0;
  for (int j = 0; j <= grid.ny; ++j)
    for (int i = 0; i <= grid.nx; ++i) {
      const double u = grid.x(i), v = grid.y(j);
      const auto expect = oracle::vertical_delta(u, v, 1.0 + a * b * std::cos(b * u));
      worst = std::max(worst, std::hypot(rep.delta_at(i, j)[0] - expect[0], rep.delta_at(i, j)[1] - expect[1]));
    }
  CHECK(worst < 1e-6);
  CHECK(rep.boundary_error == 0.0);
  CHECK(rep.pushforward_error <= rep.grid_tolerance);
  // Dilatation of (u, v) -> (u, v / rho'(u)) on this strip stays near the
  // vertical stretch range [1/1.1, 1/0.9].
  CHECK(rep.max_dilatation < 1.2);
}

TEST_CASE("flatten a tilted field") {
  const StripGrid grid{-1.0, 1.0, 16, 0.5, 8};
  const auto rep = flatten_step(TiltedField{}, grid);
  CHECK(rep.ok);
  CHECK(rep.boundary_error < 1e-12);
  // The pushforward defect is a second-order finite-difference error:
  // halving h cuts it by about four.
  const auto fine = flatten_step(TiltedField{}, StripGrid{-1.0, 1.0, 32, 0.5, 16});
  CHECK(fine.pushforward_error < rep.pushforward_error / 3.0);
  CHECK(std::isfinite(rep.max_dilatation));
}

TEST_CASE("one flattening step of the pushed structure") {
  const auto rho = parse_glue_map("sine:0.1");
  const OdeOptions ode{1e-13, 1e-15};
  for (double X : {-1.0, 0.3, 1.7})
    for (double y : {0.25, 0.01, 1e-3}) {
      const Vec2<double> f = LevelField<0>{&rho, ode}(Vec2<double>{X, y});
      const auto expect = oracle::sine_level0(0.1, 1.0, X, y);
      CHECK(f[0] == Approx(expect[0]).margin(1e-12));
      CHECK(f[1] == Approx(expect[1]).margin(1e-12));
    }
  // Finite-difference slope of the first component at y = 0 is its order.
  const double X = 0.8, h = 1e-3;
  const double f1 = LevelField<0>{&rho, ode}(Vec2<double>{X, h})[0];
  const double f2 = LevelField<0>{&rho, ode}(Vec2<double>{X, 2 * h})[0];
  CHECK(std::log2(f2 / f1) == Approx(1.0).margin(1e-2));
  CHECK(LevelField<0>{&rho, ode}(Vec2<double>{X, 0.0})[0] == 0.0);
}

TEST_CASE("flatten errors") {
  try {
    flatten_step(BoundedField{}, StripGrid{-1.0, 1.0, 4, 1.0, 4});
    FAIL("expected CurveEscape");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CurveEscape);
  }
  try {
    FlattenOptions opt;
    opt.newton_max = 1;
    flatten_step(TiltedField{}, StripGrid{-1.0, 1.0, 4, 0.5, 4}, opt);
    FAIL("expected InversionFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InversionFailure);
  }
  CHECK_THROWS_AS(flatten_step(ConstantField{0.0, -1.0}, StripGrid{}), Error);
  CHECK_THROWS_AS(flatten_step(ConstantField{0.0, 1.0}, StripGrid{1.0, -1.0, 4, 0.5, 4}), Error);
  CHECK_THROWS_AS(flatten_step(ConstantField{0.0, 1.0}, StripGrid{-1.0, 1.0, 1, 0.5, 4}), Error);
}

TEST_CASE("flatten the recursion levels") {
  const auto rho = parse_glue_map("sine:0.1");
  const StripGrid grid{-1.0, 1.0, 8, 0.25, 4};
  for (int k = 0; k <= 1; ++k) {
    const auto rep = k == 0 ? flatten_step(LevelField<-1>{&rho, {}}, grid) : flatten_step(LevelField<0>{&rho, {}}, grid);
    CHECK(rep.ok);
    CHECK(rep.boundary_error < 1e-12);
    CHECK(rep.max_dilatation < 1.5);
  }
}

TEST_CASE("verify_orders") {
  SECTION("identity is exact at every order") {
    const auto rep = verify_orders(parse_glue_map("identity"), 2);
    CHECK(rep.ok);
    for (const auto& row : rep.rows) CHECK(row.exact);
  }
  SECTION("sine perturbation, k = 0 and 1") {
    const auto rep = verify_orders(parse_glue_map("sine:0.1"), 1);
    CHECK(rep.ok);
    CHECK(rep.matched);
    CHECK(rep.rows.size() == 2 * 2 * 3);
    for (const auto& row : rep.rows) {
      CHECK_FALSE(row.exact);
      CHECK(row.slope == Approx(static_cast<double>(row.predicted)).margin(0.05));
    }
  }
  SECTION("sine perturbation, k = 2 on a shorter ladder") {
    VerifyOptions opt;
    opt.j_max = 8;
    const auto rep = verify_orders(parse_glue_map("sine:0.2,1.5"), 2, opt);
    CHECK(rep.ok);
    CHECK(rep.matched);
  }
  SECTION("linear map flattens in one step") {
    const auto rep = verify_orders(parse_glue_map("linear:2"), 1);
    CHECK(rep.ok);
    for (const auto& row : rep.rows) CHECK(row.exact);
  }
  CHECK_THROWS_AS(verify_orders(parse_glue_map("identity"), 3), Error);
  CHECK_THROWS_AS(level_field(parse_glue_map("identity"), 3, Vec2<double>{0.0, 0.1}, {}), Error);
}

TEST_CASE("fit_slope") {
  std::vector<double> ys, vs;
  for (int j = 4; j <= 12; ++j) {
    ys.push_back(std::ldexp(1.0, -j));
    vs.push_back(3.0 * std::pow(ys.back(), 2.5));
  }
  CHECK(fit_slope(ys, vs, 1e-30).first == Approx(2.5).epsilon(1e-12));
  CHECK(fit_slope(ys, std::vector<double>(ys.size(), 0.0), 1e-13).second == 0);
}
