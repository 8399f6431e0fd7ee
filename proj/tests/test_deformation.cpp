#include "doctest.h"

#include <random>

#include "pathdeform/deformation.hpp"
#include "pathdeform/sampling.hpp"
#include "support/area_oracle.hpp"

using namespace pathdeform;

namespace {

constexpr double k4Pi = 4.0 * kPi;

SpherePoint sp(double x, double y, double z) { return SpherePoint::from({x, y, z}); }
TorusPoint tp(double u, double v) { return TorusPoint::from_lattice(u, v); }

Vec2 rotate(Vec2 v, double t) {
  return {std::cos(t) * v.x - std::sin(t) * v.y, std::sin(t) * v.x + std::cos(t) * v.y};
}

double rel(Weight a, Weight b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("params enforce mode and modulus consistency") {
  const UnitSphere sphere;
  const FlatTorus torus;
  CHECK_THROWS_AS(DeformationParams::continuous(sphere.area_form(), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DeformationParams::quantized(torus.area_form(), 1), std::invalid_argument);
  const auto p = DeformationParams::quantized(sphere.area_form(), 1);
  CHECK(p.is_quantized());
  CHECK_THROWS_AS(exp_weight(p, ModReal{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("omega~ examples") {
  const UnitSphere sphere;
  const auto form = sphere.area_form();
  const SphereClass a{sp(0, 0, 1), sp(1, 0, 0)};
  const SphereClass b{sp(1, 0, 0), sp(0, 1, 0)};
  const auto w = omega_tilde(sphere, form, a, b);
  REQUIRE(is_value(w));
  CHECK(std::get<0>(w).value == doctest::Approx(kPi / 2.0));
  CHECK(std::get<0>(w).modulus == doctest::Approx(k4Pi));

  CHECK(is_zero(omega_tilde(sphere, form, a, SphereClass{sp(0, 1, 0), sp(1, 0, 0)})));
  CHECK(is_undefined(omega_tilde(sphere, form, a, SphereClass{sp(1, 0, 0), sp(0, 0, -1)})));

  const FlatTorus torus;
  const auto tform = torus.area_form();
  SUBCASE("straight continuation is zero") {
    const auto s1 = torus.class_between_lifts({0.1, 0.2}, {0.5, 0.4});
    const auto s2 = torus.class_between_lifts({0.5, 0.4}, {1.7, 1.0});
    const auto v = omega_tilde(torus, tform, s1, s2);
    REQUIRE(is_value(v));
    CHECK(std::abs(std::get<0>(v).value) < 1e-12);
  }
  SUBCASE("mirror across the line of a negates") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const Vec2 p{u(rng), u(rng)}, q{u(rng), u(rng)};
      const Vec2 dir = (1.0 / norm(q - p)) * (q - p);
      const double theta = 3.0 * u(rng);
      const double len = 1.0 + u(rng);
      const auto a2 = torus.class_between_lifts(p, q);
      const auto b2 = torus.class_between_lifts(q, q + len * rotate(dir, theta));
      const auto m2 = torus.class_between_lifts(q, q + len * rotate(dir, -theta));
      const double w1 = std::get<0>(omega_tilde(torus, tform, a2, b2)).value;
      const double w2 = std::get<0>(omega_tilde(torus, tform, a2, m2)).value;
      CHECK(w1 + w2 == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("octant weight against the numerical oracle") {
  const UnitSphere sphere;
  const auto params = DeformationParams::quantized(sphere.area_form(), 1);
  const SphereClass a{sp(0, 0, 1), sp(1, 0, 0)};
  const SphereClass b{sp(1, 0, 0), sp(0, 1, 0)};
  const auto w = weight_of_pair(sphere, params, a, b);
  REQUIRE(is_value(w));
  const double area = oracle::signed_area({0, 0, 1}, {1, 0, 0}, {0, 1, 0});
  CHECK(area == doctest::Approx(kPi / 2.0).epsilon(1e-9));
  const Weight expected = std::polar(1.0, 0.5 * area);
  CHECK(std::abs(std::get<0>(w) - expected) < 1e-9);
  CHECK(std::abs(std::get<0>(w) - std::polar(1.0, kPi / 4.0)) < 1e-12);

  const auto star = star_product(sphere, params, {{a, 1.0}}, {{b, 1.0}});
  REQUIRE(star.defined());
  REQUIRE(star.sum.size() == 1);
  CHECK(std::abs(star.sum.coefficient({sp(0, 0, 1), sp(0, 1, 0)}) - std::polar(1.0, kPi / 4.0)) <
        1e-12);
}

TEST_CASE("identity parameters give the undeformed product") {
  std::mt19937_64 rng(15);
  const FlatTorus torus;
  const auto flat = DeformationParams::continuous(torus.area_form(), 0.0);
  const UnitSphere sphere;
  const auto n0 = DeformationParams::quantized(sphere.area_form(), 0);
  const auto pairs = sample_chains<2>(torus, rng, 200);
  for (const auto& [a, b] : pairs.chains) {
    CHECK(std::get<0>(weight_of_pair(torus, flat, a, b)) == Weight{1.0, 0.0});
  }
  const auto spairs = sample_chains<2>(sphere, rng, 200);
  for (const auto& [a, b] : spairs.chains) {
    CHECK(std::abs(std::get<0>(weight_of_pair(sphere, n0, a, b)) - 1.0) < 1e-15);
    const auto r = star_product(sphere, n0, {{a, 2.0}}, {{b, 3.0}});
    CHECK(std::abs(r.sum.coefficient(std::get<0>(sphere.multiply(a, b))) - 6.0) < 1e-12);
  }
  // Zero pairs contribute nothing.
  const auto r = star_product(sphere, n0, {{spairs.chains[0][1], 1.0}}, {{spairs.chains[0][0], 1.0}});
  CHECK(r.sum.empty());
}

TEST_CASE("quantized weights have unit modulus") {
  std::mt19937_64 rng(16);
  const UnitSphere sphere;
  const auto params = DeformationParams::quantized(sphere.area_form(2.5), -3);
  const auto pairs = sample_chains<2>(sphere, rng, 2000);
  for (const auto& [a, b] : pairs.chains) {
    const auto w = weight_of_pair(sphere, params, a, b);
    if (is_value(w)) CHECK(std::abs(std::abs(std::get<0>(w)) - 1.0) < 1e-12);
  }
}

TEST_CASE("omega~ depends only on classes") {
  const UnitSphere sphere;
  const auto form = sphere.area_form();
  const auto p = sp(0, 0, 1), q = sp(1, 0, 0), r = sp(0, 1, 0);
  const auto mid = sp(1, 0, 1);
  const PiecewisePath<SphereClass> a1(sphere, {{p, mid}, {mid, q}});
  const PiecewisePath<SphereClass> b1(sphere, {{q, r}});
  // A detour through interior junctions off the geodesic.
  const auto off1 = sp(0.3, -0.4, 0.8), off2 = sp(0.9, 0.3, -0.1);
  const PiecewisePath<SphereClass> a2(sphere, {{p, off1}, {off1, off2}, {off2, q}});
  const auto w1 = omega_tilde(sphere, form, a1, b1);
  const auto w2 = omega_tilde(sphere, form, a2, b1);
  const auto w0 = omega_tilde(sphere, form, SphereClass{p, q}, SphereClass{q, r});
  CHECK(std::get<0>(w1).value == std::get<0>(w0).value);
  CHECK(std::get<0>(w2).value == std::get<0>(w0).value);

  const FlatTorus torus;
  const auto tform = torus.area_form(0.7);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    const Vec2 x{u(rng), u(rng)}, y{u(rng), u(rng)}, z{u(rng), u(rng)}, j{u(rng), u(rng)};
    const PiecewisePath<TorusClass> via(torus, {torus.class_between_lifts(x, j),
                                                torus.class_between_lifts(j, y)});
    const PiecewisePath<TorusClass> direct(torus, {torus.class_between_lifts(x, y)});
    const PiecewisePath<TorusClass> second(torus, {torus.class_between_lifts(y, z)});
    const auto a = omega_tilde(torus, tform, via, second);
    const auto b = omega_tilde(torus, tform, direct, second);
    CHECK(std::get<0>(a).value == doctest::Approx(std::get<0>(b).value).epsilon(1e-12));
  }
}

TEST_CASE("global torus trivializer on the universal cover") {
  const FlatTorus torus(Lattice({1.0, 0.0}, {0.3, 1.2}));
  const auto params = DeformationParams::continuous(torus.area_form(1.3), {0.3, 0.1});
  const auto g = global_trivializer_torus(torus, params);
  std::mt19937_64 rng(77);
  const auto pairs = sample_chains<2>(torus, rng, 1000);
  double worst = 0.0;
  for (const auto& [a, b] : pairs.chains) {
    worst = std::max(worst, rel(std::get<0>(g.coboundary(a, b)),
                                std::get<0>(weight_of_pair(torus, params, a, b))));
  }
  CHECK(worst < 1e-9);

  const TorusClass null{tp(0.3, 0.6), tp(0.3, 0.6), {0, 0}};
  CHECK(std::abs(g(null) - 1.0) < 1e-15);
  CHECK(std::abs(g.on_lift({0.4, 0.4}, {0.4, 0.4}) - 1.0) < 1e-15);

  const auto flat = global_trivializer_torus(torus, DeformationParams::continuous(torus.area_form(), 0.0));
  for (const auto& [a, b] : pairs.chains) CHECK(flat(a) == Weight{1.0, 0.0});

  CHECK(is_zero(g.coboundary(pairs.chains[0][1], pairs.chains[0][0])));
}

TEST_CASE("no function of torus classes alone trivializes the weight") {
  // Two loops at one point commute in the class monoid, but the weight sees
  // the order: f(a,b) / f(b,a) = exp(lambda c covol). Any class-level g has
  // dg(a,b) = dg(b,a), so it cannot match.
  const FlatTorus torus;
  const double lambda = 0.3;
  const auto params = DeformationParams::continuous(torus.area_form(), lambda);
  const auto p = tp(0.25, 0.75);
  const TorusClass a{p, p, {1, 0}};
  const TorusClass b{p, p, {0, 1}};
  REQUIRE(std::get<0>(torus.multiply(a, b)) == std::get<0>(torus.multiply(b, a)));
  const Weight fab = std::get<0>(weight_of_pair(torus, params, a, b));
  const Weight fba = std::get<0>(weight_of_pair(torus, params, b, a));
  CHECK(std::abs(fab / fba - std::exp(lambda)) < 1e-12);

  const auto g = global_trivializer_torus(torus, params);
  const auto dg_classes = coboundary_multiplicative(g.as_cochain(), torus);
  CHECK(std::abs(*dg_classes({a, b}) - *dg_classes({b, a})) < 1e-12);
  CHECK(rel(*dg_classes({a, b}), fab) > 1e-3);
  // Along consistent lifts it matches.
  CHECK(rel(std::get<0>(g.coboundary(a, b)), fab) < 1e-12);
  CHECK(rel(std::get<0>(g.coboundary(b, a)), fba) < 1e-12);
}

TEST_CASE("quantized families have no global torus trivializer") {
  const FlatTorus torus;
  DeformationParams bogus{Quantized{1}, TwoForm{1.0, 1.0}};
  CHECK_THROWS_AS(global_trivializer_torus(torus, bogus), std::invalid_argument);
}

TEST_CASE("local trivializer on the sphere") {
  const UnitSphere sphere;
  const auto params = DeformationParams::quantized(sphere.area_form(), 1);
  const auto base = sp(0, 0, 1);
  CHECK_THROWS_AS(local_trivializer(sphere, params, base, kPi / 2.0), std::invalid_argument);
  CHECK_THROWS_AS(local_trivializer(sphere, params, base, 0.0), std::invalid_argument);

  const auto tr = local_trivializer(sphere, params, base, 1.0);
  const auto dg = coboundary_multiplicative(tr.g, sphere);
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_point_in_ball(sphere, rng, base, 1.0);
    const auto q = random_point_in_ball(sphere, rng, base, 1.0);
    const auto r = random_point_in_ball(sphere, rng, base, 1.0);
    const SphereClass a{p, q}, b{q, r};
    worst = std::max(worst, rel(*dg({a, b}), std::get<0>(weight_of_pair(sphere, params, a, b))));
  }
  CHECK(worst < 1e-8);

  SUBCASE("points on one geodesic through the base") {
    const auto p = SpherePoint::from_colatitude(0.2, 1.0);
    const auto q = SpherePoint::from_colatitude(0.5, 1.0);
    const auto r = SpherePoint::from_colatitude(0.9, 1.0);
    const SphereClass a{p, q}, b{q, r};
    CHECK(std::abs(std::get<0>(weight_of_pair(sphere, params, a, b)) - 1.0) < 1e-12);
    CHECK(std::abs(*dg({a, b}) - 1.0) < 1e-12);
  }
  SUBCASE("base at the shared endpoint") {
    const auto p = SpherePoint::from_colatitude(0.6, 0.0);
    const auto r = SpherePoint::from_colatitude(0.7, 2.0);
    const SphereClass a{p, base}, b{base, r};
    CHECK(std::abs(*tr.g({a}) - 1.0) < 1e-12);
    CHECK(std::abs(*tr.g({b}) - 1.0) < 1e-12);
    CHECK(rel(*dg({a, b}), std::get<0>(weight_of_pair(sphere, params, a, b))) < 1e-12);
  }
  SUBCASE("outside the ball g is undefined") {
    const SphereClass far{sp(1, 0, 0), sp(0, 1, 0)};
    CHECK_FALSE(tr.g({far}).has_value());
  }
}

TEST_CASE("local trivializer on the torus") {
  const FlatTorus torus;
  const auto params = DeformationParams::continuous(torus.area_form(2.0), 0.8);
  const auto base = tp(0.5, 0.5);
  CHECK_THROWS_AS(local_trivializer(torus, params, base, 0.5), std::invalid_argument);
  const auto tr = local_trivializer(torus, params, base, 0.4);
  const auto dg = coboundary_multiplicative(tr.g, torus);
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p = random_lift_in_ball(torus, rng, base, 0.4);
    const Vec2 q = random_lift_in_ball(torus, rng, base, 0.4);
    const Vec2 r = random_lift_in_ball(torus, rng, base, 0.4);
    const auto a = torus.class_between_lifts(p, q), b = torus.class_between_lifts(q, r);
    worst = std::max(worst, rel(*dg({a, b}), std::get<0>(weight_of_pair(torus, params, a, b))));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("memory function") {
  SUBCASE("x = 0 gives 1") {
    const UnitSphere sphere;
    const auto params = DeformationParams::quantized(sphere.area_form(), 3);
    const SphereClass gamma{SpherePoint::from_colatitude(0.7, 0.0), sp(1, 0, 0)};
    const SphereGeodesic gp{sp(1, 0, 0), {0, 1, 0}, 2 * kPi};
    CHECK(std::abs(std::get<0>(memory_function(sphere, params, gamma, gp, 0.0)) - 1.0) < 1e-12);
    CHECK_THROWS_AS(memory_function(sphere, params, gamma, gp, 7.0), std::invalid_argument);

    const FlatTorus torus;
    const auto tparams = DeformationParams::continuous(torus.area_form(), 1.0);
    const auto tg = torus.class_between_lifts({0.1, 0.1}, {0.4, 0.3});
    const TorusGeodesic tgp{{0.4, 0.3}, {0.0, 1.0}, 2.0};
    CHECK(std::abs(std::get<0>(memory_function(torus, tparams, tg, tgp, 0.0)) - 1.0) < 1e-15);
  }
  SUBCASE("straight continuation on the torus") {
    const FlatTorus torus(Lattice({1.0, 0.0}, {0.5, 0.8}));
    const auto params = DeformationParams::continuous(torus.area_form(), 1.5);
    const Vec2 p{0.1, 0.2}, q{0.7, 0.5};
    const auto gamma = torus.class_between_lifts(p, q);
    const Vec2 dir = (1.0 / norm(q - p)) * (q - p);
    const TorusGeodesic gp{q, dir, 5.0};
    for (int k = 0; k <= 50; ++k) {
      const auto w = memory_function(torus, params, gamma, gp, 0.1 * k);
      CHECK(std::abs(std::get<0>(w) - 1.0) < 1e-12);
    }
    const TorusGeodesic bent{q, rotate(dir, 0.5), 5.0};
    CHECK(std::abs(std::get<0>(memory_function(torus, params, gamma, bent, 2.0)) - 1.0) > 1e-3);
  }
  SUBCASE("pole to equator sweeps the lune") {
    const UnitSphere sphere;
    const auto params = DeformationParams::quantized(sphere.area_form(), 1);
    const SphereClass gamma{sp(0, 0, 1), sp(1, 0, 0)};
    const SphereGeodesic gp{sp(1, 0, 0), {0, 1, 0}, 2 * kPi};
    for (double x : {0.3, 1.0, 2.5, 3.5, 5.0, 6.2}) {
      const auto s = swept_integral(sphere, params.form, gamma, gp, x);
      CHECK(mod_eq(std::get<0>(s), canonicalize(x, k4Pi), 1e-12));
    }
  }
  SUBCASE("agrees with the pair weight before the cut point") {
    const UnitSphere sphere;
    const auto params = DeformationParams::quantized(sphere.area_form(), 1);
    const SphereClass gamma{SpherePoint::from_colatitude(0.6, 0.0), sp(1, 0, 0)};
    const SphereGeodesic gp{sp(1, 0, 0), {0, 1, 0}, 2 * kPi};
    for (double x : {0.2, 1.0, 2.0, 2.8}) {
      const auto end = gp.point_at(x);
      const auto m = memory_function(sphere, params, gamma, gp, x);
      const auto w = weight_of_pair(sphere, params, gamma, SphereClass{sp(1, 0, 0), end});
      CHECK(std::abs(std::get<0>(m) - std::get<0>(w)) < 1e-12);
    }
  }
  SUBCASE("mismatched start is Zero") {
    const UnitSphere sphere;
    const auto params = DeformationParams::quantized(sphere.area_form(), 1);
    const SphereGeodesic gp{sp(0, 1, 0), {1, 0, 0}, kPi};
    CHECK(is_zero(memory_function(sphere, params, {sp(0, 0, 1), sp(1, 0, 0)}, gp, 1.0)));
  }
}

TEST_CASE("weights are multiplicative cocycles on both backends") {
  std::mt19937_64 rng(123);
  const UnitSphere sphere;
  const auto sparams = DeformationParams::quantized(sphere.area_form(), 2);
  const auto st = sample_chains<3>(sphere, rng, 500);
  CHECK(is_cocycle_multiplicative(weight_cochain(sphere, sparams), sphere, st.chains).holds);

  const FlatTorus torus(Lattice({1.0, 0.0}, {0.2, 1.1}));
  const auto tparams = DeformationParams::continuous(torus.area_form(), {0.2, 0.5});
  const auto tt = sample_chains<3>(torus, rng, 500);
  CHECK(is_cocycle_multiplicative(weight_cochain(torus, tparams), torus, tt.chains).holds);
}
