#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "kiss3/certificate.hpp"
#include "kiss3/errors.hpp"
#include "kiss3/sphere.hpp"
#include "support.hpp"

using namespace kiss3;
using testing::Gen;

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Angle between unit vectors via the chord length, independent of cos_law.
double chord_angle(const SphericalPoint& p, const SphericalPoint& q) {
  const Vec3 a = to_cartesian(p), b = to_cartesian(q);
  const double c = std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
  return 2.0 * std::asin(std::min(1.0, 0.5 * c));
}

SphericalPoint random_sp(Gen& g) { return SphericalPoint::make(std::acos(g.real(-1.0, 1.0)), g.real(0.0, 2 * kPi)); }

}  // namespace

TEST_CASE("spherical point validation") {
  CHECK_THROWS_AS(SphericalPoint::make(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(SphericalPoint::make(kPi + 0.1, 0.0), DomainError);
  CHECK_THROWS_AS(SphericalPoint::make(std::nan(""), 0.0), DomainError);
  CHECK(SphericalPoint::make(1.0, -kPi / 2).phi == doctest::Approx(1.5 * kPi));
  CHECK(SphericalPoint::make(1.0, 5 * kPi).phi == doctest::Approx(kPi));
  CHECK(SphericalPoint::make(deg2rad(180.0), 0.0).theta <= kPi);
}

TEST_CASE("cartesian round trip") {
  Gen g(31);
  for (int i = 0; i < 200; ++i) {
    const SphericalPoint p = random_sp(g);
    const Vec3 v = to_cartesian(p);
    CHECK(dot(v, v) == doctest::Approx(1.0));
    CHECK(chord_angle(p, from_cartesian(v)) < 1e-12);
  }
}

TEST_CASE("cos_law examples") {
  Gen g(32);
  for (int i = 0; i < 50; ++i) {
    const double x = g.real(-kPi, kPi);
    const double t1 = g.real(0.0, kPi), t2 = g.real(0.0, kPi);
    CHECK(cos_law(kPi / 2, kPi / 2, x) == doctest::Approx(std::cos(x)));
    CHECK(cos_law(t1, t2, kPi / 2) == doctest::Approx(std::cos(t1) * std::cos(t2)).scale(1.0));
    CHECK(cos_law(t1, t1, 0.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("cos_law clamping is tiny") {
  Gen g(33);
  for (int i = 0; i < 2000; ++i) {
    const double t1 = g.real(0.0, kPi), t2 = g.real(0.0, kPi), dphi = g.real(-kPi, kPi);
    const double raw = std::cos(t1) * std::cos(t2) + std::sin(t1) * std::sin(t2) * std::cos(dphi);
    const double c = cos_law(t1, t2, dphi);
    CHECK(c >= -1.0);
    CHECK(c <= 1.0);
    CHECK(std::abs(c - raw) <= 4 * std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("angular_distance examples") {
  const SphericalPoint p = SphericalPoint::make(0.7, 2.0);
  CHECK(angular_distance(p, p) == 0.0);
  CHECK(angular_distance(SphericalPoint::make(0.0, 0.0), SphericalPoint::make(kPi / 2, 1.0)) ==
        doctest::Approx(kPi / 2));
  const PointSet ico = icosahedron();
  double nearest = 10.0;
  for (std::size_t j = 1; j < ico.size(); ++j) nearest = std::min(nearest, angular_distance(ico.points()[0], ico.points()[j]));
  CHECK(nearest == doctest::Approx(std::acos(1.0 / std::sqrt(5.0))).epsilon(1e-12));
  CHECK(nearest == doctest::Approx(1.10715).epsilon(1e-5));
}

TEST_CASE("angular distance is a metric on sampled triples") {
  Gen g(34);
  for (int i = 0; i < 2000; ++i) {
    const SphericalPoint a = random_sp(g), b = random_sp(g), c = random_sp(g);
    CHECK(angular_distance(a, b) == angular_distance(b, a));
    CHECK(angular_distance(a, c) <= angular_distance(a, b) + angular_distance(b, c) + 1e-12);
    CHECK(angular_distance(a, b) == doctest::Approx(chord_angle(a, b)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("rho") {
  CHECK(rho(kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-14));
  for (int i = 0; i <= 100; ++i) {
    const double s = 1.2 + 0.6 * i / 100.0;
    CHECK(std::abs(rho(rho(s)) - s) < 1e-12);
  }
  CHECK_THROWS_AS(rho(2 * kPi / 3), DomainError);
  CHECK_THROWS_AS(rho(3.0), DomainError);
  CHECK_THROWS_AS(rho(-0.1), DomainError);

  const Certificate c = build_certificate();
  CHECK(rho(2 * c.theta0.hi) < kPi / 2);
  double prev = rho(1.0);
  for (int i = 1; i <= 10000; ++i) {
    const double s = 1.0 + (2 * c.theta0.hi - 1.0) * i / 10000.0;
    const double r = rho(s);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("min_separation") {
  PointSet pair;
  pair.add(SphericalPoint::make(0.0, 0.0));
  pair.add(SphericalPoint::make(kPi, 0.0));
  CHECK(min_separation(pair) == doctest::Approx(kPi));

  CHECK(rad2deg(min_separation(icosahedron())) == doctest::Approx(63.4349).epsilon(1e-6));

  PointSet dup;
  dup.add(SphericalPoint::make(1.0, 1.0));
  dup.add(SphericalPoint::make(2.0, 0.5));
  dup.add(SphericalPoint::make(1.0, 1.0));
  CHECK(min_separation(dup) == 0.0);

  PointSet single;
  single.add(SphericalPoint::make(1.0, 1.0));
  CHECK_THROWS_AS(min_separation(single), TooFewPoints);
  CHECK_THROWS_AS(min_separation(PointSet()), TooFewPoints);
}

TEST_CASE("icosahedron structure") {
  const PointSet ico = icosahedron();
  REQUIRE(ico.size() == 12);
  const double edge = std::acos(1.0 / std::sqrt(5.0));
  CHECK(std::abs(min_separation(ico) - edge) < 1e-12);
  const auto d = ico.distance_matrix();
  for (std::size_t i = 0; i < 12; ++i) {
    int neighbours = 0, antipodes = 0;
    for (std::size_t j = 0; j < 12; ++j) {
      CHECK(d[i][j] == d[j][i]);
      if (i == j) CHECK(d[i][j] == 0.0);
      if (i != j && std::abs(d[i][j] - edge) < 1e-9) ++neighbours;
      if (std::abs(d[i][j] - kPi) < 1e-9) ++antipodes;
    }
    CHECK(neighbours == 5);
    CHECK(antipodes == 1);
  }
}

TEST_CASE("rng is deterministic and in range") {
  Rng a(42, 3), b(42, 3), c(42, 4);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    differs = differs || x != c.uniform();
    const int k = a.uniform_int(-3, 5);
    b.uniform_int(-3, 5);
    CHECK(k >= -3);
    CHECK(k <= 5);
  }
  CHECK(differs);
}

TEST_CASE("random points are area-uniform") {
  Rng rng(1, 0);
  int north = 0;
  const int n = 20000;
  double z_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const SphericalPoint p = random_point(rng);
    z_sum += std::cos(p.theta);
    if (p.theta < kPi / 3) ++north;  // cap area fraction (1 - cos 60)/2 = 1/4
  }
  CHECK(std::abs(z_sum / n) < 0.02);
  CHECK(std::abs(static_cast<double>(north) / n - 0.25) < 0.015);
}

TEST_CASE("random_separated_set") {
  const PointSet one = random_separated_set(1, kPi, 5, 10);
  CHECK(one.size() == 1);

  const PointSet a = random_separated_set(6, kPi / 3, 17, 5000);
  const PointSet b = random_separated_set(6, kPi / 3, 17, 5000);
  REQUIRE(a.size() == 6);
  CHECK(min_separation(a) >= kPi / 3);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.points()[i].theta == b.points()[i].theta);
    CHECK(a.points()[i].phi == b.points()[i].phi);
  }

  for (std::uint64_t seed = 0; seed < 10; ++seed)
    CHECK_THROWS_AS(random_separated_set(13, kPi / 3, seed, 2000), SaturationError);
  CHECK_THROWS_AS(random_separated_set(0, kPi / 3, 1, 10), DomainError);
}

TEST_CASE("rotations preserve separation") {
  Rng rng(77, 0);
  for (int i = 0; i < 200; ++i) {
    const PointSet ps = random_point_set(static_cast<std::size_t>(rng.uniform_int(2, 12)), rng);
    const Rotation r = random_rotation(rng);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(dot(r[static_cast<std::size_t>(a)], r[static_cast<std::size_t>(b)]) ==
              doctest::Approx(a == b ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
    CHECK(std::abs(min_separation(rotate(ps, r)) - min_separation(ps)) < 1e-12);
  }
}

TEST_CASE("jittered icosahedron subsets keep their separation") {
  Rng rng(3, 0);
  const double jitter = deg2rad(1.5);
  const double floor_sep = std::acos(1.0 / std::sqrt(5.0)) - 2 * jitter;
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 12));
    const PointSet ps = jittered_icosahedron_subset(n, jitter, rng);
    CHECK(ps.size() == n);
    CHECK(min_separation(ps) >= floor_sep - 1e-12);
    CHECK(min_separation(ps) > kPi / 3);
  }
  CHECK_THROWS_AS(jittered_icosahedron_subset(13, jitter, rng), DomainError);
}

TEST_CASE("point-set text format") {
  std::istringstream in("# header\n\n10 20\n  90.5   359.25  # trailing\n180 0\n");
  const PointSet ps = read_point_set(in);
  REQUIRE(ps.size() == 3);
  CHECK(rad2deg(ps.points()[0].theta) == doctest::Approx(10.0));
  CHECK(rad2deg(ps.points()[1].phi) == doctest::Approx(359.25));

  std::ostringstream out;
  write_point_set(out, ps);
  std::istringstream back(out.str());
  const PointSet again = read_point_set(back);
  REQUIRE(again.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(again.points()[i].theta == doctest::Approx(ps.points()[i].theta).epsilon(1e-15));
    CHECK(again.points()[i].phi == doctest::Approx(ps.points()[i].phi).epsilon(1e-15));
  }

  std::istringstream bad("10 20\nabc def\n");
  CHECK_THROWS_AS(read_point_set(bad), DomainError);
  std::istringstream out_of_range("200 0\n");
  CHECK_THROWS_AS(read_point_set(out_of_range), DomainError);
}
