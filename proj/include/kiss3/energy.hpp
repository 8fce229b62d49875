#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "kiss3/certificate.hpp"
#include "kiss3/sphere.hpp"

namespace kiss3 {

struct PointEnergy {
  double S = 0.0;          // sum_j f(cos phi_ij), diagonal included
  double T = 0.0;          // f(1) + sum over J(i)
  std::vector<int> J;      // j with cos phi_ij < -t0 (lower end of the enclosure)
};

struct EnergySummary {
  int n = 0;
  double S = 0.0;
  std::vector<PointEnergy> per_point;
  double min_sep = kPi;  // pi when there are fewer than two points
};

// S(X) = sum_{i,j} f(cos phi_ij) with the per-point split S_i, T_i, J(i).
// Rows are summed in a fixed order so results are reproducible.
EnergySummary energy(const PointSet& ps, const Certificate& c);

// S >= n^2 (1 - 1e-9).
bool check_lemma2(const PointSet& ps, const Certificate& c);
bool check_lemma2(const EnergySummary& e);

// S < 13 n and S_i <= T_i + 1e-12, T_i < 13 for every i.
// Throws SeparationViolation when two distinct points are closer than 60 degrees.
bool check_lemma3(const PointSet& ps, const Certificate& c);

// Gegenbauer sums for k = 0..kmax.
std::vector<double> check_lemma1(const PointSet& ps, int kmax);

// |S - sum_k c_k G_k| where G_k are the Gegenbauer sums.
double linearity_bridge_residual(const PointSet& ps, const Certificate& c);

// Largest |f_float(cos phi) - f_exact(cos phi)| over `pairs` random pairs,
// where the exact value evaluates f at the double cos phi as a rational.
double exact_spot_check(const PointSet& ps, const Certificate& c, std::uint64_t seed, int pairs = 8);

nlohmann::json to_json(const EnergySummary& e);

}  // namespace kiss3
