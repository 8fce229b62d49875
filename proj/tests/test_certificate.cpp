#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kiss3/certificate.hpp"
#include "kiss3/errors.hpp"
#include "kiss3/sphere.hpp"

using namespace kiss3;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

RationalPoly perturbed(int power, const Rational& delta) {
  return certificate_polynomial() + RationalPoly::monomial(delta, power);
}

}  // namespace

TEST_CASE("certificate coefficients") {
  const RationalPoly f = certificate_polynomial();
  CHECK(f.degree() == 9);
  CHECK(f.coeff(9) == q(2431, 80));
  CHECK(f.coeff(8) == 0);
  CHECK(f.coeff(7) == q(-1287, 20));
  CHECK(f.coeff(6) == 0);
  CHECK(f.coeff(5) == q(18333, 400));
  CHECK(f.coeff(4) == q(343, 40));
  CHECK(f.coeff(3) == q(-83, 10));
  CHECK(f.coeff(2) == q(-213, 100));
  CHECK(f.coeff(1) == q(1, 10));
  CHECK(f.coeff(0) == q(-1, 200));
}

TEST_CASE("build_certificate") {
  const Certificate c = build_certificate();
  CHECK(c.f.degree() == 9);
  CHECK(std::abs(c.t0.mid() - 0.5907) < 5e-5);
  CHECK(std::abs(rad2deg(c.theta0.mid()) - 53.794) < 1e-3);
  CHECK(c.t0.width() < 1e-11);
  CHECK(c.t0.lo > 0.59);
  CHECK(c.t0.hi < 0.591);
  // acos is decreasing, so the angle enclosure must cover acos of both ends.
  CHECK(c.theta0.lo <= std::acos(c.t0.hi));
  CHECK(c.theta0.hi >= std::acos(c.t0.lo));
  CHECK(c.theta0.width() < 1e-10);
  CHECK(certificate_violations(c).empty());
}

TEST_CASE("verify_expansion") {
  CHECK(verify_expansion(build_certificate()));
  CHECK_FALSE(verify_expansion(make_certificate(perturbed(9, q(1, 1000)))));
  CHECK(expansion_admissible(to_legendre_basis(RationalPoly::constant(1))));
  CHECK_FALSE(expansion_admissible(to_legendre_basis(RationalPoly({q(1), q(-1)}))));
  CHECK_FALSE(expansion_admissible(to_legendre_basis(RationalPoly::constant(2))));
}

TEST_CASE("monotone decrease test") {
  const Rational a = q(-1), b = q(-59, 100);
  CHECK(verify_property_i(build_certificate()));
  CHECK(is_monotone_decreasing(RationalPoly({q(0), q(0), q(1)}), a, b));  // t^2
  CHECK_FALSE(is_monotone_decreasing(RationalPoly({q(0), q(-1), q(0), q(1)}), a, b));  // t^3 - t rises here
  CHECK(is_monotone_decreasing(RationalPoly({q(0), q(1), q(0), q(-1)}), a, b));
  // Critical point at -4/5 inside the interval.
  CHECK_FALSE(is_monotone_decreasing(RationalPoly({q(0), q(-48, 25), q(0), q(1)}), a, b));
  CHECK_FALSE(is_monotone_decreasing(RationalPoly::constant(3), a, b));
}

TEST_CASE("property ii") {
  const Certificate c = build_certificate();
  CHECK(verify_property_ii(c));
  CHECK(sgn(eval(c.f, q(1, 2))) < 0);
  CHECK_FALSE(verify_property_ii(c.f + RationalPoly::constant(3)));
  CHECK_THROWS_AS(make_certificate(c.f + RationalPoly::constant(3)), CertificateInvalid);
}

TEST_CASE("classic Delsarte gap") {
  const Certificate c = build_certificate();
  CHECK(classic_delsarte_gap(c) == q(277, 100));
  CHECK(classic_delsarte_gap(make_certificate(c.f * Rational(2))) == q(554, 100));
  // -(t + 1/2)^2 is <= 0 on [-1, 1/2].
  const Certificate neg = make_certificate(RationalPoly({q(-1, 4), q(-1), q(-1)}));
  CHECK(classic_delsarte_gap(neg) <= 0);
}

TEST_CASE("certificate invariants") {
  const Certificate c = build_certificate();
  CHECK(from_legendre_basis(c.legendre_coeffs) == c.f);
  CHECK(eval(c.f, Rational(1)) == q(4044, 400));
  Rational sum = 0;
  for (const auto& ck : c.legendre_coeffs.coefficients) sum += ck;
  CHECK(sum == eval(c.f, Rational(1)));
  CHECK(sgn(eval(c.f, -c.t0_exact.lo)) * sgn(eval(c.f, -c.t0_exact.hi)) < 0);
  CHECK(verify_property_i(c));
  CHECK(verify_property_ii(c));
}

TEST_CASE("floating value matches exact evaluation") {
  const Certificate c = build_certificate();
  for (int i = 0; i <= 200; ++i) {
    const double t = -1.0 + 2.0 * i / 200;
    CHECK(std::abs(c.value(t) - eval(c.f, exact(t)).get_d()) < 1e-13);
  }
}

TEST_CASE("invalid certificates are rejected") {
  CHECK_THROWS_AS(make_certificate(RationalPoly::constant(1)), CertificateInvalid);
  CHECK_THROWS_AS(make_certificate(RationalPoly::monomial(1, 13) + RationalPoly::constant(q(-1, 2))),
                  CertificateInvalid);
  // Three roots in (-1, 1/2).
  CHECK_THROWS_AS(make_certificate(RationalPoly({q(0), q(-1, 4), q(0), q(1)})), CertificateInvalid);
}

TEST_CASE("certificate JSON") {
  const auto j = to_json(build_certificate());
  CHECK(j["degree"] == 9);
  CHECK(j["unit"] == "deg");
  CHECK(j["monomial"].size() == 8);
  CHECK(j["monomial"][0]["numerator"] == "-1");
  CHECK(j["monomial"][0]["denominator"] == "200");
  CHECK(j["monomial"][0]["power"] == 0);
  CHECK(j["legendre"].size() == 10);
  CHECK(j["legendre"][9]["numerator"] == "8");
  CHECK(j["legendre"][9]["denominator"] == "25");
  CHECK(j["t0"][0].get<double>() < j["t0"][1].get<double>());
}
