#include "kiss3/energy.hpp"

#include <cmath>

#include "kiss3/errors.hpp"
#include "kiss3/legendre.hpp"

namespace kiss3 {

namespace {

constexpr double kSixtyDeg = kPi / 3.0;
// Rounding slack for the 60-degree separation test on parsed or rotated data.
constexpr double kSeparationSlack = 1e-12;

std::vector<std::vector<double>> cosine_matrix(const PointSet& ps) {
  const auto& pts = ps.points();
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      c[i][j] = c[j][i] = cos_law(pts[i].theta, pts[j].theta, pts[i].phi - pts[j].phi);
  return c;
}

}  // namespace

EnergySummary energy(const PointSet& ps, const Certificate& c) {
  EnergySummary out;
  out.n = static_cast<int>(ps.size());
  if (ps.size() >= 2) out.min_sep = min_separation(ps);
  const auto cosines = cosine_matrix(ps);
  const double f1 = c.value(1.0);
  const double cap = -c.t0.lo;

  for (std::size_t i = 0; i < ps.size(); ++i) {
    PointEnergy pe;
    pe.T = f1;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const double v = i == j ? f1 : c.value(cosines[i][j]);
      pe.S += v;
      if (i != j && cosines[i][j] < cap) {
        pe.J.push_back(static_cast<int>(j));
        pe.T += v;
      }
    }
    out.S += pe.S;
    out.per_point.push_back(std::move(pe));
  }
  return out;
}

bool check_lemma2(const EnergySummary& e) {
  const double n2 = static_cast<double>(e.n) * e.n;
  return e.S >= n2 * (1.0 - 1e-9);
}

bool check_lemma2(const PointSet& ps, const Certificate& c) { return check_lemma2(energy(ps, c)); }

bool check_lemma3(const PointSet& ps, const Certificate& c) {
  if (ps.size() >= 2 && min_separation(ps) < kSixtyDeg - kSeparationSlack)
    throw SeparationViolation("points closer than 60 degrees");
  const EnergySummary e = energy(ps, c);
  for (const auto& pe : e.per_point)
    if (!(pe.S <= pe.T + 1e-12) || !(pe.T < 13.0)) return false;
  return e.S < 13.0 * e.n;
}

std::vector<double> check_lemma1(const PointSet& ps, int kmax) {
  if (kmax < 0 || kmax > kMaxLegendreDegree) throw DomainError("kmax outside [0, 12]");
  std::vector<double> sums;
  for (int k = 0; k <= kmax; ++k) sums.push_back(gegenbauer_sum(ps, k));
  return sums;
}

double linearity_bridge_residual(const PointSet& ps, const Certificate& c) {
  const double s = energy(ps, c).S;
  const int kmax = c.legendre_coeffs.degree();
  const auto sums = check_lemma1(ps, kmax);
  double bridge = 0.0;
  for (int k = 0; k <= kmax; ++k) bridge += c.legendre_coeffs.coefficients[static_cast<std::size_t>(k)].get_d() * sums[static_cast<std::size_t>(k)];
  return std::abs(s - bridge);
}

double exact_spot_check(const PointSet& ps, const Certificate& c, std::uint64_t seed, int pairs) {
  if (ps.size() < 2) return 0.0;
  Rng rng(seed, 0x5eed);
  const auto& pts = ps.points();
  const int n = static_cast<int>(pts.size());
  double worst = 0.0;
  for (int s = 0; s < pairs; ++s) {
    const int i = rng.uniform_int(0, n - 1);
    int j = rng.uniform_int(0, n - 2);
    if (j >= i) ++j;
    const double t = cos_law(pts[static_cast<std::size_t>(i)].theta, pts[static_cast<std::size_t>(j)].theta,
                             pts[static_cast<std::size_t>(i)].phi - pts[static_cast<std::size_t>(j)].phi);
    const Rational exact_value = eval(c.f, exact(t));
    worst = std::max(worst, std::abs(c.value(t) - exact_value.get_d()));
  }
  return worst;
}

nlohmann::json to_json(const EnergySummary& e) {
  nlohmann::json pp = nlohmann::json::array();
  for (const auto& p : e.per_point) pp.push_back({{"S_i", p.S}, {"T_i", p.T}, {"J_i", p.J}});
  return {{"n", e.n}, {"S", e.S}, {"min_sep_deg", rad2deg(e.min_sep)}, {"unit", "deg"}, {"per_point", pp}};
}

}  // namespace kiss3
