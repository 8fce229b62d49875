#include "kiss3/certificate.hpp"

#include <cmath>
#include <limits>

#include "kiss3/errors.hpp"
#include "kiss3/sphere.hpp"

namespace kiss3 {

namespace {

// t0 is isolated far below any tolerance used downstream.
const Rational& root_width() {
  static const Rational w = make_rational(1, 1000000000000L);
  return w;
}

double step_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
  return x;
}

double step_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return x;
}

nlohmann::json rational_json(const Rational& r) {
  return {{"numerator", r.get_num().get_str()}, {"denominator", r.get_den().get_str()}};
}

}  // namespace

double Certificate::value(double t) const {
  double acc = 0.0;
  for (auto it = f_real_.rbegin(); it != f_real_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RationalPoly certificate_polynomial() {
  return RationalPoly({make_rational(-1, 200), make_rational(1, 10), make_rational(-213, 100),
                       make_rational(-83, 10), make_rational(343, 40), make_rational(18333, 400), Rational(0),
                       make_rational(-1287, 20), Rational(0), make_rational(2431, 80)});
}

LegendreExpansion expected_expansion() {
  return {{Rational(1), make_rational(8, 5), make_rational(87, 25), make_rational(33, 20), make_rational(49, 25),
           make_rational(1, 10), Rational(0), Rational(0), Rational(0), make_rational(8, 25)}};
}

Certificate make_certificate(RationalPoly f) {
  Certificate c;
  if (f.degree() < 1) throw CertificateInvalid("certificate polynomial must be nonconstant");
  if (f.degree() > kMaxLegendreDegree) throw CertificateInvalid("certificate degree above the Legendre cap");
  c.legendre_coeffs = to_legendre_basis(f);

  RationalInterval neg_root;
  try {
    neg_root = isolate_root_exact(f, Rational(-1), make_rational(1, 2), root_width());
  } catch (const Error& e) {
    throw CertificateInvalid(std::string("f must have exactly one root in (-1, 1/2): ") + e.what());
  }
  c.t0_exact = {-neg_root.hi, -neg_root.lo};
  c.t0 = c.t0_exact.to_interval();
  if (c.t0.lo <= 0.0 || c.t0.hi >= 1.0) throw CertificateInvalid("root -t0 must lie in (-1, 0)");
  // std::acos is faithful to within an ulp; two ulps outward keeps the enclosure.
  c.theta0 = Interval(step_down(std::acos(c.t0.hi), 2), step_up(std::acos(c.t0.lo), 2));
  c.f_real_ = f.to_doubles();
  c.f = std::move(f);
  return c;
}

bool expansion_admissible(const LegendreExpansion& e) {
  if (e.coefficients.empty() || e.coefficients.front() != 1) return false;
  for (const auto& ck : e.coefficients)
    if (sgn(ck) < 0) return false;
  return true;
}

std::vector<std::string> certificate_violations(const Certificate& c) {
  std::vector<std::string> out;
  if (c.f.degree() != 9) out.push_back("degree is " + std::to_string(c.f.degree()) + ", expected 9");
  if (from_legendre_basis(c.legendre_coeffs) != c.f) out.push_back("Legendre coefficients do not reconstruct f");
  if (!expansion_admissible(c.legendre_coeffs)) out.push_back("expansion needs c_0 = 1 and c_k >= 0");
  if (!(c.t0_exact.lo > make_rational(59, 100) && c.t0_exact.hi < make_rational(591, 1000)))
    out.push_back("t0 enclosure not inside (0.59, 0.591)");
  const int s_lo = sgn(eval(c.f, -c.t0_exact.lo));
  const int s_hi = sgn(eval(c.f, -c.t0_exact.hi));
  if (!(s_lo * s_hi < 0 || c.t0_exact.lo == c.t0_exact.hi))
    out.push_back("f does not change sign across the t0 enclosure");
  return out;
}

Certificate build_certificate() {
  Certificate c = make_certificate(certificate_polynomial());
  const auto bad = certificate_violations(c);
  if (!bad.empty()) throw CertificateInvalid("certificate invariant failed: " + bad.front());
  return c;
}

bool verify_expansion(const Certificate& c) {
  return c.legendre_coeffs == expected_expansion() && from_legendre_basis(c.legendre_coeffs) == c.f;
}

bool is_monotone_decreasing(const RationalPoly& p, const Rational& a, const Rational& b) {
  const RationalPoly dp = derivative(p);
  if (dp.is_zero() || !(a < b)) return false;
  if (sgn(eval(dp, a)) >= 0) return false;
  if (dp.degree() == 0) return true;
  return sturm_count(dp, a, b) == 0;
}

bool verify_property_i(const Certificate& c) {
  return is_monotone_decreasing(c.f, Rational(-1), -c.t0_exact.lo);
}

bool verify_property_ii(const RationalPoly& f) {
  if (f.is_zero()) return false;
  return sturm_count(f, Rational(-1), make_rational(1, 2)) == 1 && sgn(eval(f, make_rational(1, 2))) < 0 &&
         sgn(eval(f, Rational(-1))) > 0;
}

bool verify_property_ii(const Certificate& c) { return verify_property_ii(c.f); }

Rational classic_delsarte_gap(const Certificate& c) { return eval(c.f, Rational(-1)); }

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json mono = nlohmann::json::array();
  for (int k = 0; k <= c.f.degree(); ++k) {
    const Rational ck = c.f.coeff(k);
    if (sgn(ck) == 0) continue;
    auto entry = rational_json(ck);
    entry["power"] = k;
    mono.push_back(entry);
  }
  nlohmann::json leg = nlohmann::json::array();
  for (std::size_t k = 0; k < c.legendre_coeffs.coefficients.size(); ++k) {
    auto entry = rational_json(c.legendre_coeffs.coefficients[k]);
    entry["k"] = k;
    leg.push_back(entry);
  }
  return {{"degree", c.f.degree()},
          {"polynomial", c.f.to_string()},
          {"monomial", mono},
          {"legendre", leg},
          {"t0", {c.t0.lo, c.t0.hi}},
          {"theta0_deg", {rad2deg(c.theta0.lo), rad2deg(c.theta0.hi)}},
          {"unit", "deg"}};
}

}  // namespace kiss3
