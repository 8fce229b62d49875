#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kiss3/bounds.hpp"
#include "kiss3/certificate.hpp"

namespace kiss3 {

// The closing chain: n^2 <= S(X) from a nonnegative Legendre expansion,
// S(X) < 13 n from the bound table, hence n <= 12, and the icosahedron shows
// 12 is attained.
struct TheoremReport {
  bool expansion_admissible = false;
  bool bounds_verdict = false;
  int largest_n = 0;  // largest n >= 1 with n^2 < 13 n
  int witness_points = 0;
  double witness_min_sep = 0.0;  // radians
  double witness_energy = 0.0;
  bool witness_ok = false;
  std::optional<int> conclusion;
  std::vector<std::string> failures;
};

int largest_n_below_13();

// Uses an already assembled table; never throws on a failed component.
TheoremReport check_theorem(const Certificate& c, const BoundTable& table);

// Builds the table itself and throws the first failing component
// (BoundFailure, CertificateInvalid, SeparationViolation).
TheoremReport verify_theorem(const Certificate& c, double tol);

nlohmann::json to_json(const TheoremReport& r);

}  // namespace kiss3
