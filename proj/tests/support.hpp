#pragma once

// Hand-rolled generators and independent oracles shared by the unit tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kiss3/polynomial.hpp"
#include "kiss3/rational.hpp"

namespace testing {

// Separate engine from the library Rng so generators do not share code with
// the system under test.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }

  kiss3::Rational rational(long max_num = 40, long max_den = 16) {
    return kiss3::make_rational(integer(-max_num, max_num), integer(1, max_den));
  }

  kiss3::RationalPoly poly(int max_degree) {
    const int deg = static_cast<int>(integer(0, max_degree));
    std::vector<kiss3::Rational> c;
    for (int k = 0; k <= deg; ++k) c.push_back(rational());
    if (c.back() == 0) c.back() = 1;
    return kiss3::RationalPoly(c);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// p(t) as sum_k c_k t^k with independently formed powers.
inline kiss3::Rational eval_monomials(const kiss3::RationalPoly& p, const kiss3::Rational& t) {
  kiss3::Rational sum = 0;
  for (int k = 0; k <= p.degree(); ++k) {
    kiss3::Rational tk = 1;
    for (int j = 0; j < k; ++j) tk *= t;
    sum += p.coeff(k) * tk;
  }
  return sum;
}

inline double eval_monomials(const kiss3::RationalPoly& p, double t) {
  double sum = 0.0;
  for (int k = 0; k <= p.degree(); ++k) sum += p.coeff(k).get_d() * std::pow(t, k);
  return sum;
}

// Product of (t - r) over the given roots.
inline kiss3::RationalPoly from_roots(const std::vector<kiss3::Rational>& roots) {
  kiss3::RationalPoly p = kiss3::RationalPoly::constant(1);
  for (const auto& r : roots) p = p * kiss3::RationalPoly({-r, kiss3::Rational(1)});
  return p;
}

}  // namespace testing
