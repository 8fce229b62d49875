#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kiss3/certificate.hpp"
#include "kiss3/energy.hpp"
#include "kiss3/errors.hpp"
#include "kiss3/legendre.hpp"
#include "kiss3/sphere.hpp"

using namespace kiss3;

namespace {

const Certificate& cert() {
  static const Certificate c = build_certificate();
  return c;
}

PointSet points(std::initializer_list<std::pair<double, double>> deg) {
  PointSet ps;
  for (const auto& [t, p] : deg) ps.add(SphericalPoint::make(deg2rad(t), deg2rad(p)));
  return ps;
}

// Energy of the icosahedron in exact arithmetic. Ordered pairs: 12 at cos 1,
// 12 at cos -1 and 60 each at cos +-1/sqrt 5. f(x) + f(-x) only sees the even
// part of f, a polynomial in x^2 = 1/5.
Rational icosahedron_energy_exact(const RationalPoly& f) {
  Rational even_at = 0;
  Rational x2k = 1;
  for (int k = 0; k <= f.degree(); k += 2) {
    even_at += f.coeff(k) * x2k;
    x2k *= make_rational(1, 5);
  }
  return 12 * (eval(f, Rational(1)) + eval(f, Rational(-1))) + 120 * even_at;
}

}  // namespace

TEST_CASE("energy examples") {
  const auto one = energy(points({{10, 20}}), cert());
  CHECK(one.S == doctest::Approx(10.11).epsilon(1e-14));
  CHECK(one.min_sep == kPi);

  const auto anti = energy(points({{0, 0}, {180, 0}}), cert());
  CHECK(anti.S == doctest::Approx(25.76).epsilon(1e-14));
  CHECK(anti.S == doctest::Approx(2 * Rational(eval(cert().f, Rational(1)) + eval(cert().f, Rational(-1))).get_d()));

  const auto ico = energy(icosahedron(), cert());
  CHECK(ico.n == 12);
  CHECK(ico.S < 156.0);
  CHECK(ico.S >= 144.0 * (1 - 1e-9));
}

TEST_CASE("icosahedron energy is exactly 144") {
  CHECK(icosahedron_energy_exact(cert().f) == 144);
  CHECK(std::abs(energy(icosahedron(), cert()).S - 144.0) < 1e-11);
}

TEST_CASE("per-point decomposition") {
  Rng rng(5, 0);
  const double cap = -cert().t0.lo;
  for (int i = 0; i < 100; ++i) {
    const PointSet ps = random_point_set(static_cast<std::size_t>(rng.uniform_int(1, 10)), rng);
    const auto e = energy(ps, cert());
    double total = 0.0;
    for (std::size_t a = 0; a < ps.size(); ++a) {
      const auto& pe = e.per_point[a];
      total += pe.S;
      std::vector<int> expect;
      for (std::size_t b = 0; b < ps.size(); ++b)
        if (a != b && cos_law(ps.points()[a].theta, ps.points()[b].theta, ps.points()[a].phi - ps.points()[b].phi) < cap)
          expect.push_back(static_cast<int>(b));
      CHECK(pe.J == expect);
    }
    CHECK(total == doctest::Approx(e.S).epsilon(1e-14));
  }
}

TEST_CASE("energy is at least n^2") {
  CHECK(energy(points({{30, 40}, {30, 40}}), cert()).S == doctest::Approx(40.44));
  CHECK(check_lemma2(points({{30, 40}, {30, 40}}), cert()));
  CHECK(check_lemma2(icosahedron(), cert()));
  Rng rng(42, 1);
  for (int i = 0; i < 1000; ++i) {
    const PointSet ps = random_point_set(static_cast<std::size_t>(rng.uniform_int(1, 16)), rng);
    CHECK(check_lemma2(ps, cert()));
  }
}

TEST_CASE("separated sets stay below 13 n") {
  CHECK(check_lemma3(icosahedron(), cert()));
  CHECK_THROWS_AS(check_lemma3(points({{0, 0}, {50, 0}}), cert()), SeparationViolation);

  Rng rng(42, 2);
  const double jitter = deg2rad(1.5);
  for (int i = 0; i < 500; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 12));
    PointSet ps;
    try {
      ps = random_separated_set(n, kPi / 3, 1000 + static_cast<std::uint64_t>(i), 2000);
    } catch (const SaturationError&) {
      ps = jittered_icosahedron_subset(n, jitter, rng);
    }
    CHECK(check_lemma3(ps, cert()));
    const auto e = energy(ps, cert());
    for (const auto& pe : e.per_point) {
      CHECK(pe.S <= pe.T + 1e-12);
      CHECK(pe.J.size() <= 4);
    }
  }
}

TEST_CASE("Gegenbauer sums are nonnegative") {
  const auto one = check_lemma1(points({{10, 10}}), 9);
  REQUIRE(one.size() == 10);
  for (double s : one) CHECK(s == doctest::Approx(1.0));
  CHECK(std::abs(check_lemma1(points({{0, 0}, {180, 0}}), 1)[1]) < 1e-12);
  for (double s : check_lemma1(icosahedron(), 9)) CHECK(s >= -1e-9 * 144);
  CHECK_THROWS_AS(check_lemma1(icosahedron(), 13), DomainError);
}

TEST_CASE("linearity bridge and rotation invariance") {
  Rng rng(9, 0);
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 16));
    const PointSet ps = random_point_set(n, rng);
    const double n2 = static_cast<double>(n * n);
    CHECK(linearity_bridge_residual(ps, cert()) <= 1e-8 * n2);
    const double s = energy(ps, cert()).S;
    const double rotated = energy(rotate(ps, random_rotation(rng)), cert()).S;
    CHECK(std::abs(rotated - s) <= 1e-9 * std::abs(s));
  }
}

TEST_CASE("exact spot check") {
  Rng rng(2, 0);
  const PointSet ps = random_point_set(10, rng);
  CHECK(exact_spot_check(ps, cert(), 1, 8) < 1e-12);
  CHECK(exact_spot_check(points({{1, 1}}), cert(), 1, 8) == 0.0);
}

TEST_CASE("energy JSON") {
  const auto j = to_json(energy(icosahedron(), cert()));
  CHECK(j["n"] == 12);
  CHECK(j["unit"] == "deg");
  CHECK(j["per_point"].size() == 12);
  CHECK(j["min_sep_deg"].get<double>() == doctest::Approx(63.4349488));
}
