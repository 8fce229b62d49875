#pragma once

#include <vector>

#include "kiss3/polynomial.hpp"

namespace kiss3 {

class PointSet;

// Exact routines are capped at this degree.
inline constexpr int kMaxLegendreDegree = 12;

// Coefficients c_0..c_K of a polynomial in the basis P_0..P_K.
struct LegendreExpansion {
  std::vector<Rational> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  friend bool operator==(const LegendreExpansion&, const LegendreExpansion&) = default;
};

// Weights of the Legendre addition theorem for one degree k:
// c_{0,k} = 1 and c_{m,k} = 2 (k-m)!/(k+m)! for m >= 1.
struct AdditionTermTable {
  int degree = 0;
  std::vector<Rational> weights;
};

// P_k by the three-term recurrence.
RationalPoly legendre(int k);
// P_k as (1 / (2^k k!)) d^k/dt^k (t^2 - 1)^k.
RationalPoly legendre_rodrigues(int k);

// Floating P_k(t) by the recurrence, any k >= 0.
double legendre_value(int k, double t);

// (1 - t^2)^{m/2} d^m/dt^m P_k(t). Throws DomainError for |t| > 1 or m outside [0, k].
double assoc_legendre(int k, int m, double t);

LegendreExpansion to_legendre_basis(const RationalPoly& p);
RationalPoly from_legendre_basis(const LegendreExpansion& e);

AdditionTermTable addition_terms(int k);

// |P_k(cos law) - sum_m c_{m,k} P_k^m(cos t1) P_k^m(cos t2) cos(m phi)|.
double addition_theorem_residual(int k, double theta1, double theta2, double phi);

// sum_{i,j} P_k(cos dist(x_i, x_j)) over ordered pairs, diagonal included.
double gegenbauer_sum(const PointSet& points, int k);

}  // namespace kiss3
