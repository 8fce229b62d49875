#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kiss3/rational.hpp"

namespace kiss3 {

// Closed real interval [lo, hi]; used as an enclosure of a real quantity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_);
  static Interval point(double x) { return Interval(x, x); }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  // The interval widened by `r` on each side.
  Interval inflate(double r) const { return Interval(lo - r, hi + r); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Enclosure of max(x, y) for x in a, y in b.
Interval max(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, const Interval& b);

// Interval with exact rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  Interval to_interval() const;  // outward-rounded
  Rational width() const { return hi - lo; }
};

// Univariate polynomial with exact rational coefficients, lowest power first.
// Trailing zeros are trimmed so the zero polynomial has no coefficients.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);
  RationalPoly(std::initializer_list<Rational> coeffs);

  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(const Rational& c, int power);
  static RationalPoly identity();

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of t^k; zero beyond the degree.
  Rational coeff(int k) const;
  const Rational& leading() const;
  std::span<const Rational> coefficients() const { return coeffs_; }
  std::vector<double> to_doubles() const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& s);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& s) { return a *= s; }
  friend RationalPoly operator*(const Rational& s, RationalPoly a) { return a *= s; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(RationalPoly a);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string(const char* var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

RationalPoly pow(const RationalPoly& p, int n);

// Quotient and remainder of exact long division. Throws DomainError for b = 0.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);

// Monic greatest common divisor; zero when both inputs are zero.
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);

// p / gcd(p, p'): same distinct roots, all simple.
RationalPoly squarefree_part(const RationalPoly& p);

// Composition p(q(t)).
RationalPoly compose(const RationalPoly& p, const RationalPoly& q);

Rational eval(const RationalPoly& p, const Rational& t);
double eval_real(const RationalPoly& p, double t);
RationalPoly derivative(const RationalPoly& p);

// Exact range enclosure of p over [lo, hi] by interval Horner evaluation.
RationalInterval eval_range(const RationalPoly& p, const Rational& lo, const Rational& hi);

// Power-of-two lower bound on the distance between distinct roots of the
// squarefree polynomial q (Mahler's bound on its primitive integer multiple).
Rational root_separation_bound(const RationalPoly& q);

// Sturm chain of the squarefree part of a polynomial. Built once, queried
// many times during isolation.
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPoly& p);

  // Sign changes of the chain at x, zeros skipped.
  int variations(const Rational& x) const;
  // Distinct roots of p in the open interval (a, b). Endpoints that are roots
  // are nudged inward by half the separation bound.
  int count(Rational a, Rational b) const;

  const RationalPoly& squarefree() const { return chain_.front(); }
  const Rational& separation() const { return separation_; }

 private:
  std::vector<RationalPoly> chain_;
  Rational separation_;
};

// Number of distinct real roots of p in (a, b). Requires a < b.
int sturm_count(const RationalPoly& p, const Rational& a, const Rational& b);

// Rational interval of width <= width holding the unique root of p in (a, b).
// Throws NoRoot / MultipleRoots when the interval does not isolate one root.
RationalInterval isolate_root_exact(const RationalPoly& p, const Rational& a,
                                    const Rational& b, const Rational& width);
Interval isolate_root(const RationalPoly& p, const Rational& a, const Rational& b,
                      double width);

// All distinct real roots of p in (a, b), each isolated to the given width,
// in increasing order.
std::vector<RationalInterval> isolate_all_roots(const RationalPoly& p, const Rational& a,
                                                const Rational& b, const Rational& width);

// Enclosure of max of p over [a, b] with width <= tol. Candidates are the
// endpoints and every critical point in (a, b), the latter isolated by Sturm
// bisection and evaluated with interval Horner.
Interval max_on_interval(const RationalPoly& p, double a, double b, double tol);
Interval max_on_interval(const RationalPoly& p, const Rational& a, const Rational& b,
                         double tol);

}  // namespace kiss3
