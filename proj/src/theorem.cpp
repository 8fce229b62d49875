#include "kiss3/theorem.hpp"

#include <cmath>

#include "kiss3/energy.hpp"
#include "kiss3/errors.hpp"

namespace kiss3 {

int largest_n_below_13() {
  int best = 0;
  for (long n = 1; n * n <= 13 * n; ++n)
    if (n * n < 13 * n) best = static_cast<int>(n);
  return best;
}

TheoremReport check_theorem(const Certificate& c, const BoundTable& table) {
  TheoremReport r;
  r.expansion_admissible = expansion_admissible(c.legendre_coeffs);
  if (!r.expansion_admissible) r.failures.push_back("Legendre expansion is not admissible (c_0 = 1, c_k >= 0)");

  r.bounds_verdict = table.verdict;
  for (const auto& f : table.failures) r.failures.push_back("bounds: " + f);
  if (!table.verdict && table.failures.empty()) r.failures.push_back("bounds: verdict false");

  r.largest_n = largest_n_below_13();

  const PointSet ico = icosahedron();
  r.witness_points = static_cast<int>(ico.size());
  r.witness_min_sep = min_separation(ico);
  const EnergySummary e = energy(ico, c);
  r.witness_energy = e.S;
  // S is exactly 144 here (the vertices form an antipodal 5-design), so the
  // lower side uses the same rounding allowance as the S >= n^2 check.
  r.witness_ok = r.witness_points == 12 && r.witness_min_sep > kPi / 3.0 && check_lemma2(e) &&
                 r.witness_energy < 13.0 * static_cast<double>(ico.size());
  if (!r.witness_ok) r.failures.push_back("icosahedron witness failed");

  if (r.failures.empty() && r.witness_points == r.largest_n) r.conclusion = r.largest_n;
  return r;
}

TheoremReport verify_theorem(const Certificate& c, double tol) {
  if (!expansion_admissible(c.legendre_coeffs))
    throw CertificateInvalid("Legendre expansion is not admissible (c_0 = 1, c_k >= 0)");
  const BoundTable table = compute_bound_table(c, tol);
  TheoremReport r = check_theorem(c, table);
  if (!r.witness_ok) throw SeparationViolation("icosahedron witness failed");
  if (!r.conclusion) throw Error(r.failures.empty() ? "no conclusion" : r.failures.front());
  return r;
}

nlohmann::json to_json(const TheoremReport& r) {
  nlohmann::json j{{"expansion_admissible", r.expansion_admissible},
                   {"bounds_verdict", r.bounds_verdict},
                   {"largest_n", r.largest_n},
                   {"witness",
                    {{"points", r.witness_points},
                     {"min_sep_deg", rad2deg(r.witness_min_sep)},
                     {"energy", r.witness_energy},
                     {"passed", r.witness_ok}}},
                   {"failures", r.failures},
                   {"unit", "deg"}};
  if (r.conclusion) j["conclusion"] = *r.conclusion;
  return j;
}

}  // namespace kiss3
