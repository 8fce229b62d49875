#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kiss3/legendre.hpp"
#include "kiss3/polynomial.hpp"

namespace kiss3 {

// The degree-9 certificate polynomial f together with its Legendre expansion
// and enclosures of t0 (f(-t0) = 0) and theta0 = acos(t0).
struct Certificate {
  RationalPoly f;
  LegendreExpansion legendre_coeffs;
  RationalInterval t0_exact;  // encloses t0, positive
  Interval t0;
  Interval theta0;  // radians

  // Floating f(t).
  double value(double t) const;

 private:
  friend Certificate make_certificate(RationalPoly f);
  std::vector<double> f_real_;
};

// f(t) = 2431/80 t^9 - 1287/20 t^7 + 18333/400 t^5 + 343/40 t^4
//        - 83/10 t^3 - 213/100 t^2 + t/10 - 1/200
RationalPoly certificate_polynomial();

// Expansion of certificate_polynomial() in P_0..P_9.
LegendreExpansion expected_expansion();

// Computes the expansion and the t0 / theta0 enclosures of an arbitrary f.
// Throws CertificateInvalid if f has no unique root in (-1, 1/2).
Certificate make_certificate(RationalPoly f);

// Invariants that fail for c: degree 9, exact reconstruction, admissible
// expansion, t0 inside (0.59, 0.591), opposite signs at the t0 endpoints.
std::vector<std::string> certificate_violations(const Certificate& c);

// make_certificate(certificate_polynomial()), throwing CertificateInvalid on
// any violated invariant.
Certificate build_certificate();

// Exact match with expected_expansion() and exact reconstruction of f.
bool verify_expansion(const Certificate& c);
// c_0 = 1 and c_k >= 0 for every k.
bool expansion_admissible(const LegendreExpansion& e);

// p' has no root in (a, b) and p'(a) < 0, so p decreases on [a, b].
bool is_monotone_decreasing(const RationalPoly& p, const Rational& a, const Rational& b);
// f decreases on [-1, -t0], checked up to the upper end of the -t0 enclosure.
bool verify_property_i(const Certificate& c);
// One root of f in (-1, 1/2), f(1/2) < 0 and f(-1) > 0.
bool verify_property_ii(const RationalPoly& f);
bool verify_property_ii(const Certificate& c);

// f(-1). Positive means f breaks the classical Delsarte sign condition.
Rational classic_delsarte_gap(const Certificate& c);

nlohmann::json to_json(const Certificate& c);

}  // namespace kiss3
