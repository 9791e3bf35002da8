#include <catch_amalgamated.hpp>

#include <random>

#include "segal/beltrami/dilatation.hpp"
#include "segal/beltrami/field.hpp"
#include "segal/beltrami/json.hpp"

using namespace segal;
using namespace segal::beltrami;
using Catch::Approx;
using Catch::Matchers::WithinAbs;

namespace {

cplx random_in_disc(std::mt19937_64& rng, double rmax = 0.95) {
  std::uniform_real_distribution<double> r(0.0, rmax), t(-M_PI, M_PI);
  return std::polar(r(rng), t(rng));
}

bool kind_is(const Error& e, ErrorKind k) { return e.kind() == k; }

}  // namespace

TEST_CASE("mu of linear maps") {
  CHECK(mu_of_linear({1.0, 0.0}) == cplx(0.0));
  CHECK(std::abs(mu_of_linear({1.5, 0.5}) - 1.0 / 3.0) < 1e-15);
  CHECK_THROWS_AS(mu_of_linear({1.0, 1.0}), Error);

  // Finite-difference partials of (x, y) -> (2x, y) computed here, not by the library.
  auto f = [](cplx z) { return cplx(2.0 * z.real(), z.imag()); };
  const cplx z(0.3, -0.7), I(0, 1);
  const double h = 1e-4;
  const cplx fx = (f(z + h) - f(z - h)) / (2 * h), fy = (f(z + I * h) - f(z - I * h)) / (2 * h);
  const LinearMapZZbar m{(fx - I * fy) / 2.0, (fx + I * fy) / 2.0};
  CHECK(std::abs(mu_of_linear(m) - 1.0 / 3.0) < 1e-10);
  CHECK(std::abs(linear_from_real(2, 0, 0, 1).a - 1.5) < 1e-15);

  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const cplx a = random_in_disc(rng, 3.0) + 3.5;
    CHECK(mu_of_linear({a, 0.0}) == cplx(0.0));
    CHECK(mu_of_linear({a, random_in_disc(rng, 0.9) + 1e-3}) != cplx(0.0));
  }
}

TEST_CASE("dilatation K") {
  CHECK(dilatation_K(0.0) == 1.0);
  CHECK(dilatation_K(1.0 / 3.0) == Approx(2.0).epsilon(1e-15));
  CHECK(dilatation_K(0.9) == Approx(19.0).epsilon(1e-14));
  CHECK_THROWS_AS(dilatation_K(cplx(0.6, 0.8)), Error);
  for (double K : {1.0, 1.5, 2.0, 7.0, 100.0}) CHECK(dilatation_K(mu_modulus_of_K(K)) == Approx(K).epsilon(1e-13));
}

TEST_CASE("transformation rule and its inverse") {
  CHECK(transform_mu(cplx(0.2, 0.1), 0.0, 2.0, 0.0) == cplx(0.2, 0.1));
  CHECK(std::abs(transform_mu(cplx(0.2, 0.1), cplx(0.2, 0.1), cplx(1, 1), 0.1)) < 1e-16);
  CHECK(pullback_mu(0.0, 0.0, 1.0) == cplx(0.0));
  const cplx u = std::polar(1.0, 0.7), nu(0.3, -0.2);
  CHECK(std::abs(pullback_mu(nu, 0.0, u) - std::conj(u) * nu) < 1e-16);

  std::mt19937_64 rng(2);
  for (int k = 0; k < 2000; ++k) {
    const cplx m = random_in_disc(rng), mu_f = random_in_disc(rng);
    const cplx fz = random_in_disc(rng, 2.0) + cplx(2.5, 0.0);
    const cplx fzbar = mu_f * fz;
    const cplx g = transform_mu(m, mu_f, fz, fzbar);
    CHECK(std::abs(g) < 1.0);
    CHECK(std::abs(pullback_mu(g, mu_f, fz / std::conj(fz)) - m) < 1e-12);
  }
  CHECK_THROWS_AS(transform_mu(1.0, 0.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(transform_mu(0.0, 0.0, 1.0, 2.0), Error);
  CHECK_THROWS_AS(pullback_mu(0.0, 0.0, 1.1), Error);
}

TEST_CASE("teichmuller distance") {
  CHECK(teichmuller_distance(cplx(0.3, 0.4), cplx(0.3, 0.4)) == 0.0);
  CHECK(teichmuller_distance(0.0, 1.0 / 3.0) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(teichmuller_distance(0.0, 1.0), Error);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const cplx a = random_in_disc(rng), b = random_in_disc(rng), c = random_in_disc(rng);
    const double dab = teichmuller_distance(a, b);
    CHECK(dab >= 0.0);
    CHECK(dab == teichmuller_distance(b, a));
    CHECK(dab <= teichmuller_distance(a, c) + teichmuller_distance(c, b) + 1e-12);
    // Disc automorphism z -> e^{it} (z - p) / (1 - conj(p) z).
    const cplx p = random_in_disc(rng, 0.8), rot = std::polar(1.0, 0.37 * k);
    auto T = [&](cplx z) { return rot * (z - p) / (1.0 - std::conj(p) * z); };
    CHECK_THAT(teichmuller_distance(T(a), T(b)), WithinAbs(dab, 1e-10));
    // Precomposition by a fixed quasiconformal f is an isometry.
    const cplx mu_f = random_in_disc(rng), fz = std::polar(1.3, 0.11 * k);
    CHECK_THAT(teichmuller_distance(transform_mu(a, mu_f, fz, mu_f * fz), transform_mu(b, mu_f, fz, mu_f * fz)),
               WithinAbs(dab, 1e-10));
  }
}

TEST_CASE("almost complex structures") {
  const ACSMatrix J0 = acs_from_frame(1.0, 0.0);
  CHECK(J0.j11 == 0.0);
  CHECK(J0.j12 == -1.0);
  CHECK(J0.j21 == 1.0);
  CHECK(J0.j22 == 0.0);
  CHECK(mu_from_acs(J0) == cplx(0.0));

  const ACSMatrix J = acs_from_frame(1.0, 1.0);
  const auto img = J.apply(1.0, 1.0);
  CHECK(img[0] == 0.0);
  CHECK(img[1] == 1.0);
  CHECK(acs_defect(J) < 1e-12);

  // (x, y) -> (2x, y) pulls i back to a structure with frame (1/2, 0).
  CHECK(std::abs(mu_from_acs(acs_from_frame(0.5, 0.0)) - 1.0 / 3.0) < 1e-15);

  CHECK_THROWS_MATCHES(acs_from_frame(0.0, 1.0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return kind_is(e, ErrorKind::DegenerateFrame); }));
  CHECK_THROWS_AS(acs_from_frame(-1.0, 1.0), Error);
  CHECK_THROWS_MATCHES(mu_from_acs({1.0, 0.0, 0.0, 1.0}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return kind_is(e, ErrorKind::InvalidACS); }));
  CHECK_THROWS_AS(mu_from_acs({0.0, 1.0, -1.0, 0.0}), Error);  // negatively oriented

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> A(0.05, 5.0), B(-5.0, 5.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = A(rng), b = B(rng);
    const ACSMatrix Jab = acs_from_frame(a, b);
    CHECK(acs_defect(Jab) < 1e-12 * (1.0 + b * b) / a);
    const auto v = Jab.apply(a, b);
    CHECK(std::abs(v[0]) < 1e-12 * (1.0 + std::abs(b)));
    CHECK(std::abs(v[1] - 1.0) < 1e-12 * (1.0 + b * b));
    // The frame matrix [[a, 0], [b, 1]] sends e1, e2 to the frame; its inverse
    // carries J to i, so its dilatation must match.
    const LinearMapZZbar f = linear_from_real(1.0 / a, 0.0, -b / a, 1.0);
    CHECK(std::abs(mu_from_acs(Jab) - mu_of_linear(f)) < 1e-12);

    const cplx mu = random_in_disc(rng);
    CHECK(std::abs(mu_from_acs(acs_from_mu(mu)) - mu) < 1e-12);
  }
}

TEST_CASE("dilatation multiplicativity") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const LinearMapZZbar f{std::polar(1.0, 0.3 * k), random_in_disc(rng, 0.9) * std::polar(1.0, 0.3 * k)};
    const LinearMapZZbar g{std::polar(2.0, -0.1 * k), random_in_disc(rng, 1.8)};
    const double Kf = dilatation_K(mu_of_linear(f)), Kg = dilatation_K(mu_of_linear(g));
    CHECK(dilatation_K(mu_of_linear(compose(g, f))) <= Kf * Kg * (1.0 + 1e-12));
    const cplx z = random_in_disc(rng, 3.0);
    CHECK(std::abs(compose(g, f)(z) - g(f(z))) < 1e-12);
  }
  for (double s : {1.5, 2.0, 3.0})
    for (double t : {1.0, 2.0, 4.0}) {
      const auto stretch_s = linear_from_real(s, 0, 0, 1), stretch_t = linear_from_real(t, 0, 0, 1);
      CHECK(dilatation_K(mu_of_linear(compose(stretch_t, stretch_s))) == Approx(s * t).epsilon(1e-13));
    }
}

TEST_CASE("fields: distance and sewing") {
  const Rect left{0, 1, 0, 1}, right{1, 2, 0, 1}, top{0, 1, 1, 2};
  const auto zero = DilatationField::constant(left, 4, 3, 0.0);
  CHECK(field_distance(zero, zero) == 0.0);
  CHECK(field_distance(zero, DilatationField::constant(left, 4, 3, 1.0 / 3.0)) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_MATCHES(field_distance(zero, DilatationField::constant(left, 3, 3, 0.0)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return kind_is(e, ErrorKind::GridMismatch); }));

  const auto s = sew_sections(zero, DilatationField::constant(right, 4, 3, 0.0), SeamAxis::Vertical);
  CHECK(s.nx() == 8);
  CHECK(s.sup_norm() == 0.0);

  const auto c1 = DilatationField::constant(left, 4, 3, 0.25), c2 = DilatationField::constant(right, 4, 3, cplx(0, 0.5));
  const auto pc = sew_sections(c1, c2, SeamAxis::Vertical);
  CHECK(pc.value_at(0.5, 0.5) == cplx(0.25));
  CHECK(pc.value_at(1.5, 0.5) == cplx(0, 0.5));
  CHECK(pc.value_at(1.0, 0.5) == cplx(0.25));  // seam goes to the first section
  CHECK(sew_sections(c2, c1, SeamAxis::Vertical).value_at(1.0, 0.5) == cplx(0, 0.5));
  CHECK(pc.sup_norm() == 0.5);

  CHECK_THROWS_AS(sew_sections(c1, DilatationField::constant(top, 4, 5, 0.1), SeamAxis::Horizontal), Error);
  CHECK_THROWS_AS(sew_sections(c1, DilatationField::constant(Rect{0, 1, 2, 3}, 4, 3, 0.1), SeamAxis::Horizontal), Error);
  CHECK_THROWS_AS(sew_sections(c1, c2, SeamAxis::Horizontal), Error);
  const auto up = sew_sections(c1, DilatationField::constant(top, 4, 3, 0.1), SeamAxis::Horizontal);
  CHECK(up.ny() == 6);
  CHECK(up.value_at(0.5, 1.0) == cplx(0.25));
  CHECK(up.value_at(0.5, 1.5) == cplx(0.1));
}

TEST_CASE("sewing is an isometry") {
  std::mt19937_64 rng(6);
  auto random_field = [&](Rect d, int nx, int ny) {
    std::vector<cplx> v(static_cast<std::size_t>(nx * ny));
    for (auto& x : v) x = random_in_disc(rng);
    return DilatationField(d, nx, ny, std::move(v));
  };
  for (int k = 0; k < 100; ++k) {
    const bool vertical = k % 2 == 0;
    const Rect r1{0, 1, 0, 1}, r2 = vertical ? Rect{1, 1.5, 0, 1} : Rect{0, 1, 1, 3};
    const int nx2 = vertical ? 3 : 6, ny2 = vertical ? 5 : 10;
    const auto a = random_field(r1, 6, 5), a2 = random_field(r1, 6, 5);
    const auto b = random_field(r2, nx2, ny2), b2 = random_field(r2, nx2, ny2);
    const SeamAxis axis = vertical ? SeamAxis::Vertical : SeamAxis::Horizontal;
    const double sewn = field_distance(sew_sections(a, b, axis), sew_sections(a2, b2, axis));
    CHECK_THAT(sewn, WithinAbs(std::max(field_distance(a, a2), field_distance(b, b2)), 1e-12));
    CHECK(sew_sections(a, b, axis).sup_norm() == std::max(a.sup_norm(), b.sup_norm()));
  }
}

TEST_CASE("field transform and pullback are inverse") {
  const Rect d{-1, 1, -1, 1};
  const auto f = SampledChartMap::from_function(d, 8, 8, [](cplx z) {
    return 2.0 * z + 0.3 * std::conj(z) + 0.1 * z * z;
  });
  const auto mu = DilatationField::sample(d, 8, 8, [](double x, double y) { return cplx(0.3 * x, 0.2 * y * y); });
  const auto g = transform_field(mu, f);
  CHECK(field_distance(pullback_field(g, f), mu) < 1e-12);
  const auto mu_f = f.dilatation();
  CHECK(std::abs(mu_f.value_at(0.0625, 0.0625) - 0.3 / (2.0 + 0.2 * cplx(0.125, 0.125))) < 1e-8);  // cell centre
  CHECK_THROWS_AS(SampledChartMap::from_function(d, 4, 4, [](cplx z) { return std::conj(z); }), Error);
}

TEST_CASE("field json and csv") {
  const auto f = DilatationField::sample({0, 2, -1, 1}, 3, 2, [](double x, double y) { return cplx(0.1 * x, 0.2 * y); });
  const auto back = parse_field(to_json(f).dump());
  CHECK(back.values() == f.values());
  CHECK(back.same_grid(f));
  const std::string csv = to_csv(f);
  CHECK(csv.rfind("i,j,x,y,re,im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK_THROWS_AS(parse_field("{\"x0\": 0}"), Error);
  CHECK_THROWS_AS(parse_field(R"({"x0":0,"x1":1,"y0":0,"y1":1,"nx":1,"ny":1,"values":[[1.0,0.0]]})"), Error);
}
