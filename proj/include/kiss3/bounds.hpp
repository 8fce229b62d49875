#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kiss3/certificate.hpp"
#include "kiss3/sphere.hpp"

namespace kiss3 {

// Circumradius of the spherical regular triangle with 60-degree edges,
// acos(sqrt(2/3)).
double circumradius_r0();

// Points y_1..y_m in the theta0-cap around the pole e0 with score
// H = f(1) + sum f(-cos theta_i).
struct CapConfig {
  std::vector<double> colatitudes;
  std::vector<double> azimuths;
  double score = 0.0;
};

// Validates the cap constraints (theta_i < theta0 upper end, pairwise
// separation >= 60 degrees) and fills in the score.
// Throws DomainError / SeparationViolation.
CapConfig make_cap_config(const Certificate& c, std::vector<double> colatitudes, std::vector<double> azimuths);

// f(U + V) + f(U - V) as a degree-9 polynomial in s, where U = alpha + beta s
// and V = gamma sqrt(1 - s^2). `poly` is exact for the rounded trig constants;
// `error_budget` bounds the effect of that rounding on the domain.
struct ProfilePoly {
  double psi = 0.0;
  RationalPoly poly;
  Interval domain;
  double error_budget = 0.0;

  std::vector<double> coefficients() const { return poly.to_doubles(); }
  double eval(double s) const { return eval_real(poly, s); }
};

// The pair profile f(-cos theta) + f(-cos(psi - theta)) in s = cos(theta - psi/2),
// on [cos(theta0 - psi/2), 1]. Requires psi in [60 deg, 2 theta0].
ProfilePoly build_omega(const Certificate& c, double psi);
// The triangle profile with theta_3 = psi in s = cos u, on [cos u0, 1].
// Requires psi in [R0, theta0].
ProfilePoly build_triangle_profile(const Certificate& c, double psi);

// Max of the pair profile for edge length psi (upper enclosure).
Interval F1(const Certificate& c, double psi, double tol);
// Max of the triangle profile for theta_3 = psi (upper enclosure).
Interval F2(const Certificate& c, double psi, double tol);

// Upper bound on f(-cos psi), valid for psi in [0, theta0].
Interval f_neg_cos_upper(const Certificate& c, double psi);

// (1/2 - cos a cos b) / (sin a sin b) and its partial derivative in a.
double q_ratio(double alpha, double beta);
double q_partial_alpha(double alpha, double beta);

// Enclosure of acos((1/2 - t0^2) / (1 - t0^2)) over the t0 enclosure.
Interval mu_angle(const RationalInterval& t0);
// floor(360 deg / angle) after checking angle > 72 deg; BoundFailure otherwise.
int mu_from_t0(const RationalInterval& t0);
int mu_upper_bound(const Certificate& c);

struct SmallH {
  Interval h0, h1, h2;
};
SmallH h_small(const Certificate& c, double tol);

struct H4Bound {
  Interval case1;  // f(1) + F1(rho(2 theta0)) + F1(rho(77 deg))
  Interval case2;  // f(1) + F1(77 deg) + F1(90 deg)
  Interval bound;
  std::map<std::string, std::pair<double, Interval>> f1_used;  // label -> (psi, F1)
};
// Both cases are computed; BoundFailure if either reaches 13.
H4Bound h4_bound(const Certificate& c, double tol);
H4Bound h4_cases(const Certificate& c, double tol);

// The fixed cover {R0, 38, 41, 44, 48 deg, theta0}.
std::vector<double> triangle_psi_grid(const Certificate& c);

struct H3Bound {
  std::vector<double> grid;
  std::vector<Interval> f2;  // F2 at each grid point
  std::vector<Interval> w;   // f(1) + F2(psi_{i+1}) + f(-cos psi_i)
  Interval bound;
};
H3Bound h3_bound(const Certificate& c, double tol);
H3Bound h3_cases(const Certificate& c, double tol);

struct BoundTable {
  int mu = 0;
  Interval mu_angle;
  double r0 = 0.0;
  std::vector<Interval> h;  // h_0..h_4
  Interval h_max;
  Interval h4_case1, h4_case2;
  std::map<double, Interval> f1_values;  // psi (rad) -> F1
  std::map<double, Interval> f2_values;  // psi (rad) -> F2
  std::vector<double> psi_grid;
  std::vector<Interval> w;
  bool verdict = false;
  std::vector<std::string> failures;
};

// Assembles everything without throwing on a failed bound; the verdict and
// `failures` record the outcome.
BoundTable assemble_bound_table(const Certificate& c, double tol);
// As above, throwing BoundFailure for the first h_m that reaches 13.
BoundTable compute_bound_table(const Certificate& c, double tol);

// Non-rigorous estimates of the true suprema h3 (regular 60-degree triangle)
// and h4 (60-degree rhombus) by grid search plus local pattern search.
struct RefinedEstimates {
  double h3 = 0.0;
  double h4 = 0.0;
  double h3_theta3 = 0.0, h3_u = 0.0;              // argmax, radians
  double h4_d1 = 0.0, h4_offset = 0.0, h4_turn = 0.0;
};
RefinedEstimates refine_h34(const Certificate& c, int grid_density, std::uint64_t seed);

// Score of the regular triangle placed by (theta3, u), and of the rhombus with
// short diagonal d1 whose centre sits `offset` from e0, turned by `turn`.
// Returns -infinity for placements leaving the cap.
double triangle_score(const Certificate& c, double theta0, double theta3, double u);
double rhombus_score(const Certificate& c, double theta0, double d1, double offset, double turn);

nlohmann::json to_json(const BoundTable& t);

}  // namespace kiss3
