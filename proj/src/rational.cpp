#include "kiss3/rational.hpp"

#include <cmath>
#include <limits>

#include "kiss3/errors.hpp"

namespace kiss3 {

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    const auto b = v.find_first_not_of(" \t\r\n");
    const auto e = v.find_last_not_of(" \t\r\n");
    v = b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw DomainError("empty rational literal");
  if (!s.empty() && s.front() == '+') s.erase(0, 1);

  try {
    const auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const auto scale = s.size() - dot - 1;
      Rational r(mpz_class(digits.empty() || digits == "-" ? "0" : digits, 10));
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
      r /= den;
      r.canonicalize();
      return r;
    }
    Rational r(s, 10);
    if (r.get_den() == 0) throw DomainError("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational literal: " + s);
  }
}

std::string to_string(const Rational& r) { return r.get_str(10); }

double to_double(const Rational& r) { return r.get_d(); }

Rational exact(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  return Rational(x);
}

int sign(const Rational& r) { return sgn(r); }

// mpq_get_d truncates toward zero; step one ulp outward when inexact.
double to_double_down(const Rational& r) {
  double d = r.get_d();
  if (Rational(d) > r) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double to_double_up(const Rational& r) {
  double d = r.get_d();
  if (Rational(d) < r) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace kiss3
