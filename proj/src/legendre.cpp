#include "kiss3/legendre.hpp"

#include <array>
#include <cmath>
#include <string>

#include "kiss3/errors.hpp"
#include "kiss3/sphere.hpp"

namespace kiss3 {

namespace {

void check_degree(int k) {
  if (k < 0 || k > kMaxLegendreDegree)
    throw DomainError("Legendre degree " + std::to_string(k) + " outside [0, " +
                      std::to_string(kMaxLegendreDegree) + "]");
}

struct LegendreTables {
  std::array<RationalPoly, kMaxLegendreDegree + 1> exact;
  // derivs[k][m]: floating coefficients of d^m/dt^m P_k.
  std::array<std::vector<std::vector<double>>, kMaxLegendreDegree + 1> derivs;
};

const LegendreTables& tables() {
  static const LegendreTables t = [] {
    LegendreTables out;
    const RationalPoly x = RationalPoly::identity();
    out.exact[0] = RationalPoly::constant(1);
    out.exact[1] = x;
    for (int k = 2; k <= kMaxLegendreDegree; ++k) {
      out.exact[k] = make_rational(2 * k - 1, k) * (x * out.exact[k - 1]) -
                     make_rational(k - 1, k) * out.exact[k - 2];
    }
    for (int k = 0; k <= kMaxLegendreDegree; ++k) {
      RationalPoly d = out.exact[k];
      for (int m = 0; m <= k; ++m) {
        out.derivs[k].push_back(d.to_doubles());
        d = derivative(d);
      }
    }
    return out;
  }();
  return t;
}

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace

RationalPoly legendre(int k) {
  check_degree(k);
  return tables().exact[static_cast<std::size_t>(k)];
}

RationalPoly legendre_rodrigues(int k) {
  check_degree(k);
  const RationalPoly base({Rational(-1), Rational(0), Rational(1)});
  RationalPoly p = pow(base, k);
  for (int i = 0; i < k; ++i) p = derivative(p);
  Rational scale = factorial(k);
  scale *= Rational(mpz_class(1) << k);
  return p * (1 / scale);
}

double legendre_value(int k, double t) {
  if (k < 0) throw DomainError("negative Legendre degree");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int n = 2; n <= k; ++n) {
    const double next = ((2.0 * n - 1.0) * t * cur - (n - 1.0) * prev) / n;
    prev = cur;
    cur = next;
  }
  return cur;
}

double assoc_legendre(int k, int m, double t) {
  check_degree(k);
  if (m < 0 || m > k) throw DomainError("associated Legendre order outside [0, k]");
  if (!(std::abs(t) <= 1.0)) throw DomainError("associated Legendre argument outside [-1, 1]");
  const double d = horner(tables().derivs[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)], t);
  if (m == 0) return d;
  return std::pow(1.0 - t * t, 0.5 * m) * d;
}

LegendreExpansion to_legendre_basis(const RationalPoly& p) {
  LegendreExpansion out;
  if (p.is_zero()) return out;
  check_degree(p.degree());
  out.coefficients.assign(static_cast<std::size_t>(p.degree()) + 1, Rational(0));
  RationalPoly rest = p;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational ck = rest.coeff(k) / tables().exact[static_cast<std::size_t>(k)].leading();
    out.coefficients[static_cast<std::size_t>(k)] = ck;
    if (sgn(ck) != 0) rest -= ck * tables().exact[static_cast<std::size_t>(k)];
  }
  return out;
}

RationalPoly from_legendre_basis(const LegendreExpansion& e) {
  RationalPoly out;
  for (int k = 0; k <= e.degree(); ++k) {
    const Rational& ck = e.coefficients[static_cast<std::size_t>(k)];
    if (sgn(ck) != 0) out += ck * legendre(k);
  }
  return out;
}

AdditionTermTable addition_terms(int k) {
  check_degree(k);
  AdditionTermTable t{k, {}};
  t.weights.push_back(1);
  for (int m = 1; m <= k; ++m) t.weights.push_back(2 * factorial(k - m) / factorial(k + m));
  return t;
}

double addition_theorem_residual(int k, double theta1, double theta2, double phi) {
  const double lhs = legendre_value(k, cos_law(theta1, theta2, phi));
  const AdditionTermTable table = addition_terms(k);
  const double t1 = std::cos(theta1);
  const double t2 = std::cos(theta2);
  double rhs = 0.0;
  for (int m = 0; m <= k; ++m) {
    rhs += table.weights[static_cast<std::size_t>(m)].get_d() * assoc_legendre(k, m, t1) *
           assoc_legendre(k, m, t2) * std::cos(m * phi);
  }
  return std::abs(lhs - rhs);
}

double gegenbauer_sum(const PointSet& points, int k) {
  if (k < 0) throw DomainError("negative Legendre degree");
  const auto& pts = points.points();
  const std::size_t n = pts.size();
  double total = static_cast<double>(n);  // diagonal, P_k(1) = 1
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      total += 2.0 * legendre_value(k, cos_law(pts[i].theta, pts[j].theta, pts[i].phi - pts[j].phi));
    }
  }
  return total;
}

}  // namespace kiss3
