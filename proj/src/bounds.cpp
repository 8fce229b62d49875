#include "kiss3/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <iomanip>

#include "kiss3/errors.hpp"

namespace kiss3 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Error allowance for one rounded trig-derived constant of magnitude <= 1.
constexpr double kTrigError = 8 * kEps;
// Slack on angle preconditions and on domain endpoints.
constexpr double kAngleSlack = 1e-12;
constexpr double kThirteen = 13.0;

double step_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double step_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, kInf);
  return x;
}

// Radian values guaranteed below / above the exact angle of `deg` degrees.
double angle_below(double deg) { return step_down(deg2rad(deg), 4); }
double angle_above(double deg) { return step_up(deg2rad(deg), 4); }

Interval widen(const Interval& iv, double r) { return Interval(step_down(iv.lo - r, 1), step_up(iv.hi + r, 1)); }

Interval exact_enclosure(const Rational& r) { return Interval(to_double_down(r), to_double_up(r)); }

Rational binomial(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

// f(U + V) + f(U - V), U = alpha + beta s, V = gamma sqrt(1 - s^2). Odd powers
// of V cancel; even powers become powers of (1 - s^2).
RationalPoly pair_profile(const RationalPoly& f, const Rational& alpha, const Rational& beta,
                          const Rational& gamma) {
  const int n = std::max(f.degree(), 0);
  const RationalPoly u({alpha, beta});
  const RationalPoly one_minus_s2({Rational(1), Rational(0), Rational(-1)});
  std::vector<RationalPoly> u_pow{RationalPoly::constant(1)};
  for (int k = 1; k <= n; ++k) u_pow.push_back(u_pow.back() * u);
  std::vector<RationalPoly> w_pow{RationalPoly::constant(1)};
  for (int k = 1; 2 * k <= n; ++k) w_pow.push_back(w_pow.back() * one_minus_s2);
  const Rational gamma2 = gamma * gamma;

  RationalPoly out;
  for (int k = 0; k <= f.degree(); ++k) {
    const Rational fk = f.coeff(k);
    if (sgn(fk) == 0) continue;
    Rational g = 1;
    for (int j = 0; j <= k; j += 2) {
      Rational scale = 2 * fk * binomial(k, j) * g;
      out += u_pow[static_cast<std::size_t>(k - j)] * w_pow[static_cast<std::size_t>(j / 2)] * scale;
      g *= gamma2;
    }
  }
  return out;
}

// sum_k k |f_k| r^{k-1}: Lipschitz constant of f on [-r, r].
double lipschitz(const RationalPoly& f, double r) {
  double l = 0.0;
  for (int k = 1; k <= f.degree(); ++k) l += k * std::abs(f.coeff(k).get_d()) * std::pow(r, k - 1);
  return l;
}

ProfilePoly make_profile(const Certificate& c, double psi, double alpha, double beta, double gamma,
                         double s_lo) {
  ProfilePoly p;
  p.psi = psi;
  p.poly = pair_profile(c.f, exact(alpha), exact(beta), exact(gamma));
  p.domain = Interval(std::clamp(s_lo, -1.0, 1.0), 1.0);
  // U +- V are cosines, so |U +- V| <= 1; each of alpha, beta s, gamma sqrt(1-s^2)
  // moves by at most kTrigError, and there are two f terms.
  p.error_budget = 2.0 * lipschitz(c.f, 1.001) * 3.0 * kTrigError;
  return p;
}

Interval maximize(const ProfilePoly& p, double tol) {
  const Interval m = max_on_interval(p.poly, p.domain.lo, p.domain.hi, 0.5 * tol);
  return widen(m, p.error_budget);
}

std::string degree_key(double rad) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << rad2deg(rad);
  return os.str();
}

nlohmann::json interval_json(const Interval& iv) { return nlohmann::json::array({iv.lo, iv.hi}); }

}  // namespace

double circumradius_r0() { return std::acos(std::sqrt(2.0 / 3.0)); }

CapConfig make_cap_config(const Certificate& c, std::vector<double> colatitudes, std::vector<double> azimuths) {
  if (colatitudes.size() != azimuths.size()) throw DomainError("colatitude and azimuth counts differ");
  const std::size_t m = colatitudes.size();
  for (double th : colatitudes)
    if (!(th >= 0.0 && th < c.theta0.hi)) throw DomainError("cap point outside the theta0 cap");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (cos_law(colatitudes[i], colatitudes[j], azimuths[i] - azimuths[j]) > 0.5 + kAngleSlack)
        throw SeparationViolation("cap points closer than 60 degrees");
  CapConfig cfg{std::move(colatitudes), std::move(azimuths), c.value(1.0)};
  for (double th : cfg.colatitudes) cfg.score += c.value(-std::cos(th));
  return cfg;
}

// --- profiles -----------------------------------------------------------------

ProfilePoly build_omega(const Certificate& c, double psi) {
  if (!(psi >= kPi / 3.0 - kAngleSlack && psi <= 2.0 * c.theta0.hi + kAngleSlack))
    throw DomainError("pair profile needs psi in [60 deg, 2 theta0]");
  const double half = 0.5 * psi;
  const double a_max = std::max(0.0, c.theta0.hi - half) + kAngleSlack;
  return make_profile(c, psi, 0.0, -std::cos(half), std::sin(half), step_down(std::cos(a_max), 4));
}

ProfilePoly build_triangle_profile(const Certificate& c, double psi) {
  const double r0 = circumradius_r0();
  if (!(psi >= r0 - kAngleSlack && psi <= c.theta0.hi + kAngleSlack))
    throw DomainError("triangle profile needs psi in [R0, theta0]");
  const double ratio = std::clamp(std::cos(psi) / std::sin(psi) / std::sqrt(3.0), -1.0, 1.0);
  const double u0 = std::max(0.0, std::acos(ratio) - r0) + kAngleSlack;
  return make_profile(c, psi, -0.5 * std::cos(psi), -std::sin(psi) / std::sqrt(2.0), 0.5 * std::sin(psi),
                      step_down(std::cos(u0), 4));
}

Interval F1(const Certificate& c, double psi, double tol) { return maximize(build_omega(c, psi), tol); }

Interval F2(const Certificate& c, double psi, double tol) { return maximize(build_triangle_profile(c, psi), tol); }

Interval f_neg_cos_upper(const Certificate& c, double psi) {
  // f is decreasing on [-1, -t0]; bracket t = -cos psi and evaluate exactly.
  const double cos_psi = std::cos(psi);
  const Rational t_lo = exact(-step_up(cos_psi, 2));
  const Rational t_hi = exact(-step_down(cos_psi, 2));
  return Interval(to_double_down(eval(c.f, t_hi)), to_double_up(eval(c.f, t_lo)));
}

// --- mu -------------------------------------------------------------------------

double q_ratio(double alpha, double beta) {
  return (0.5 - std::cos(alpha) * std::cos(beta)) / (std::sin(alpha) * std::sin(beta));
}

double q_partial_alpha(double alpha, double beta) {
  const double sa = std::sin(alpha);
  return (2.0 * std::cos(beta) - std::cos(alpha)) / (2.0 * sa * sa * std::sin(beta));
}

Interval mu_angle(const RationalInterval& t0) {
  auto ratio = [](const Rational& t) {
    Rational t2 = t * t;
    Rational r = (make_rational(1, 2) - t2) / (1 - t2);
    return r;
  };
  // The ratio decreases in t, so the angle increases in t.
  const double r_hi = std::clamp(to_double_up(ratio(t0.lo)), -1.0, 1.0);
  const double r_lo = std::clamp(to_double_down(ratio(t0.hi)), -1.0, 1.0);
  return Interval(step_down(std::acos(r_hi), 2), step_up(std::acos(r_lo), 2));
}

int mu_from_t0(const RationalInterval& t0) {
  const Interval angle = mu_angle(t0);
  if (!(angle.lo > angle_above(72.0)))
    throw BoundFailure("mu", angle.lo,
                       "azimuth separation bound " + std::to_string(rad2deg(angle.lo)) + " deg is not above 72 deg");
  return static_cast<int>(std::floor(2.0 * kPi / angle.lo));
}

int mu_upper_bound(const Certificate& c) { return mu_from_t0(c.t0_exact); }

// --- h_m -----------------------------------------------------------------------

SmallH h_small(const Certificate& c, double tol) {
  const Rational f1 = eval(c.f, Rational(1));
  const Rational fm1 = eval(c.f, Rational(-1));
  SmallH out;
  out.h0 = exact_enclosure(f1);
  out.h1 = exact_enclosure(f1 + fm1);
  out.h2 = out.h0 + F1(c, angle_below(60.0), tol);
  return out;
}

H4Bound h4_cases(const Certificate& c, double tol) {
  H4Bound out;
  // F1 decreases in psi: every argument is rounded toward smaller psi.
  const double psi_a = step_down(rho(2.0 * c.theta0.hi), 8);
  const double psi_b = step_down(rho(angle_above(77.0)), 8);
  const double psi_c = angle_below(77.0);
  const double psi_d = angle_below(90.0);
  const Interval fa = F1(c, psi_a, tol);
  const Interval fb = F1(c, psi_b, tol);
  const Interval fc = F1(c, psi_c, tol);
  const Interval fd = F1(c, psi_d, tol);
  out.f1_used = {{"rho(2 theta0)", {psi_a, fa}}, {"rho(77)", {psi_b, fb}}, {"77", {psi_c, fc}}, {"90", {psi_d, fd}}};
  const Interval h0 = exact_enclosure(eval(c.f, Rational(1)));
  out.case1 = h0 + fa + fb;
  out.case2 = h0 + fc + fd;
  out.bound = max(out.case1, out.case2);
  return out;
}

H4Bound h4_bound(const Certificate& c, double tol) {
  H4Bound out = h4_cases(c, tol);
  if (!(out.case1.hi < kThirteen)) throw BoundFailure("h4", out.case1.hi, "h4 case 1 bound reaches 13");
  if (!(out.case2.hi < kThirteen)) throw BoundFailure("h4", out.case2.hi, "h4 case 2 bound reaches 13");
  return out;
}

std::vector<double> triangle_psi_grid(const Certificate& c) {
  return {circumradius_r0(), deg2rad(38.0), deg2rad(41.0), deg2rad(44.0), deg2rad(48.0), c.theta0.hi};
}

H3Bound h3_cases(const Certificate& c, double tol) {
  H3Bound out;
  out.grid = triangle_psi_grid(c);
  const double r0 = circumradius_r0();
  // F2 increases in psi (evaluate at the upper end of each cell); f(-cos psi)
  // decreases (evaluate at the lower end).
  const std::vector<double> upper = {step_up(r0, 4), angle_above(38.0), angle_above(41.0),
                                     angle_above(44.0), angle_above(48.0), c.theta0.hi};
  const std::vector<double> lower = {step_down(r0, 4), angle_below(38.0), angle_below(41.0),
                                     angle_below(44.0), angle_below(48.0), c.theta0.lo};
  for (double psi : upper) out.f2.push_back(F2(c, std::min(psi, c.theta0.hi), tol));
  const Interval h0 = exact_enclosure(eval(c.f, Rational(1)));
  for (std::size_t i = 0; i + 1 < out.grid.size(); ++i)
    out.w.push_back(h0 + out.f2[i + 1] + f_neg_cos_upper(c, lower[i]));
  out.bound = out.w.front();
  for (const auto& w : out.w) out.bound = max(out.bound, w);
  return out;
}

H3Bound h3_bound(const Certificate& c, double tol) {
  H3Bound out = h3_cases(c, tol);
  for (std::size_t i = 0; i < out.w.size(); ++i)
    if (!(out.w[i].hi < kThirteen))
      throw BoundFailure("h3", out.w[i].hi, "w_" + std::to_string(i + 1) + " reaches 13");
  return out;
}

BoundTable assemble_bound_table(const Certificate& c, double tol) {
  BoundTable t;
  t.r0 = circumradius_r0();
  t.mu_angle = mu_angle(c.t0_exact);
  try {
    t.mu = mu_upper_bound(c);
  } catch (const BoundFailure& e) {
    t.mu = -1;
    t.failures.push_back(e.what());
  }

  try {
    const SmallH small = h_small(c, tol);
    const H4Bound h4 = h4_cases(c, tol);
    const H3Bound h3 = h3_cases(c, tol);
    t.h = {small.h0, small.h1, small.h2, h3.bound, h4.bound};
    t.h4_case1 = h4.case1;
    t.h4_case2 = h4.case2;
    t.f1_values[angle_below(60.0)] = F1(c, angle_below(60.0), tol);
    for (const auto& [label, entry] : h4.f1_used) t.f1_values[entry.first] = entry.second;
    for (std::size_t i = 0; i < h3.grid.size(); ++i) t.f2_values[h3.grid[i]] = h3.f2[i];
    t.psi_grid = h3.grid;
    t.w = h3.w;
  } catch (const Error& e) {
    t.failures.push_back(std::string("bound computation failed: ") + e.what());
    t.verdict = false;
    return t;
  }

  const int top = t.mu >= 0 ? std::min(t.mu, 4) : 4;
  t.h_max = t.h[0];
  for (int m = 0; m <= top; ++m) {
    t.h_max = max(t.h_max, t.h[static_cast<std::size_t>(m)]);
    if (!(t.h[static_cast<std::size_t>(m)].hi < kThirteen))
      t.failures.push_back("h" + std::to_string(m) + " upper bound " + std::to_string(t.h[static_cast<std::size_t>(m)].hi) +
                           " is not below 13");
  }
  if (t.mu > 4) t.failures.push_back("mu above 4 is not covered by the case analysis");
  t.verdict = t.failures.empty();
  return t;
}

BoundTable compute_bound_table(const Certificate& c, double tol) {
  BoundTable t = assemble_bound_table(c, tol);
  if (t.verdict) return t;
  for (std::size_t m = 0; m < t.h.size(); ++m)
    if (!(t.h[m].hi < kThirteen)) throw BoundFailure("h" + std::to_string(m), t.h[m].hi, t.failures.front());
  throw BoundFailure("bounds", t.h_max.hi, t.failures.front());
}

// --- refined estimates ------------------------------------------------------

double triangle_score(const Certificate& c, double theta0, double theta3, double u) {
  const double r0 = circumradius_r0();
  if (theta3 < r0 || theta3 > theta0 || u < 0.0) return -kInf;
  const double ratio = std::clamp(std::cos(theta3) / std::sin(theta3) / std::sqrt(3.0), -1.0, 1.0);
  const double u0 = std::max(0.0, std::acos(ratio) - r0);
  if (u > u0) return -kInf;
  const double a = 0.5 * std::cos(theta3);
  const double b = 0.5 * std::sqrt(3.0) * std::sin(theta3);
  const double c1 = a + b * std::cos(r0 - u);
  const double c2 = a + b * std::cos(r0 + u);
  return c.value(1.0) + c.value(-c1) + c.value(-c2) + c.value(-std::cos(theta3));
}

double rhombus_score(const Certificate& c, double theta0, double d1, double offset, double turn) {
  if (offset < 0.0) return -kInf;
  double d2 = 0.0;
  try {
    d2 = rho(d1);
  } catch (const DomainError&) {
    return -kInf;
  }
  const double half[4] = {0.5 * d1, 0.5 * d1, 0.5 * d2, 0.5 * d2};
  const double dir[4] = {turn, turn + kPi, turn + 0.5 * kPi, turn + 1.5 * kPi};
  const double cos_cap = std::cos(theta0);
  double h = c.value(1.0);
  for (int i = 0; i < 4; ++i) {
    const double ct = cos_law(offset, half[i], dir[i]);
    if (ct < cos_cap) return -kInf;
    h += c.value(-ct);
  }
  return h;
}

namespace {

// Compass search maximizing g over the box [lo, hi].
template <typename G>
std::pair<std::array<double, 2>, double> pattern_search(G&& g, std::array<double, 2> x, std::array<double, 2> lo,
                                                        std::array<double, 2> hi, std::array<double, 2> step) {
  double best = g(x[0], x[1]);
  static constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  while (step[0] > 1e-12 || step[1] > 1e-12) {
    bool moved = false;
    for (const auto& d : kDirs) {
      std::array<double, 2> y{std::clamp(x[0] + d[0] * step[0], lo[0], hi[0]),
                              std::clamp(x[1] + d[1] * step[1], lo[1], hi[1])};
      const double v = g(y[0], y[1]);
      if (v > best) {
        best = v;
        x = y;
        moved = true;
      }
    }
    if (!moved) {
      step[0] *= 0.5;
      step[1] *= 0.5;
    }
  }
  return {x, best};
}

// Best offset for a rhombus of diagonal d1 and turn: the feasible offsets form
// an interval [0, r_max]; scan it, then golden-section around the best sample.
std::pair<double, double> best_rhombus_offset(const Certificate& c, double theta0, double d1, double turn) {
  auto h = [&](double r) { return rhombus_score(c, theta0, d1, r, turn); };
  if (h(0.0) == -kInf) return {0.0, -kInf};
  double lo = 0.0;
  double hi = theta0;
  if (h(hi) != -kInf) {
    lo = hi;
  } else {
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (h(mid) == -kInf ? hi : lo) = mid;
    }
  }
  const double r_max = lo;
  constexpr int kSamples = 24;
  double best_r = r_max;
  double best = h(r_max);
  for (int i = 0; i < kSamples; ++i) {
    const double r = r_max * i / kSamples;
    const double v = h(r);
    if (v > best) {
      best = v;
      best_r = r;
    }
  }
  const double cell = r_max / kSamples;
  double a = std::max(0.0, best_r - cell);
  double b = std::min(r_max, best_r + cell);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i < 80 && b - a > 1e-13; ++i) {
    const double x1 = b - gr * (b - a);
    const double x2 = a + gr * (b - a);
    if (h(x1) >= h(x2)) {
      b = x2;
    } else {
      a = x1;
    }
  }
  const double mid = 0.5 * (a + b);
  if (h(mid) > best) {
    best = h(mid);
    best_r = mid;
  }
  return {best_r, best};
}

}  // namespace

RefinedEstimates refine_h34(const Certificate& c, int grid_density, std::uint64_t seed) {
  if (grid_density < 64) throw DomainError("grid_density must be at least 64");
  RefinedEstimates out;
  const double theta0 = std::acos(c.t0.mid());
  const double r0 = circumradius_r0();
  Rng rng(seed, 0x4834);
  const int n = grid_density;

  // m = 3: parameters (theta3, lambda) with u = lambda u0(theta3).
  {
    auto u_max = [&](double th3) {
      const double ratio = std::clamp(std::cos(th3) / std::sin(th3) / std::sqrt(3.0), -1.0, 1.0);
      return std::max(0.0, std::acos(ratio) - r0);
    };
    auto g = [&](double th3, double lambda) { return triangle_score(c, theta0, th3, lambda * u_max(th3)); };
    std::vector<std::pair<double, std::array<double, 2>>> starts;
    for (int i = 0; i <= n; ++i) {
      const double th3 = r0 + (theta0 - r0) * i / n;
      for (int j = 0; j <= n; ++j) {
        const double lambda = static_cast<double>(j) / n;
        starts.push_back({g(th3, lambda), {th3, lambda}});
      }
    }
    std::partial_sort(starts.begin(), starts.begin() + 4, starts.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    starts.resize(4);
    for (int k = 0; k < 4; ++k) starts.push_back({0.0, {rng.uniform(r0, theta0), rng.uniform()}});
    out.h3 = -kInf;
    for (const auto& s : starts) {
      const auto [x, v] = pattern_search(g, s.second, {r0, 0.0}, {theta0, 1.0}, {(theta0 - r0) / n, 1.0 / n});
      if (v > out.h3) {
        out.h3 = v;
        out.h3_theta3 = x[0];
        out.h3_u = x[1] * u_max(x[0]);
      }
    }
  }

  // m = 4: parameters (d1, turn), offset optimized inside.
  {
    const double d1_lo = rho(2.0 * theta0);
    const double d1_hi = 0.5 * kPi;
    const double turn_hi = 0.5 * kPi;
    auto g = [&](double d1, double turn) { return best_rhombus_offset(c, theta0, d1, turn).second; };
    std::vector<std::pair<double, std::array<double, 2>>> starts;
    for (int i = 0; i <= n; ++i) {
      const double d1 = d1_lo + (d1_hi - d1_lo) * i / n;
      for (int j = 0; j <= n; ++j) {
        const double turn = turn_hi * j / n;
        starts.push_back({g(d1, turn), {d1, turn}});
      }
    }
    std::partial_sort(starts.begin(), starts.begin() + 4, starts.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    starts.resize(4);
    for (int k = 0; k < 4; ++k) starts.push_back({0.0, {rng.uniform(d1_lo, d1_hi), rng.uniform(0.0, turn_hi)}});
    out.h4 = -kInf;
    for (const auto& s : starts) {
      const auto [x, v] =
          pattern_search(g, s.second, {d1_lo, 0.0}, {d1_hi, turn_hi}, {(d1_hi - d1_lo) / n, turn_hi / n});
      if (v > out.h4) {
        out.h4 = v;
        out.h4_d1 = x[0];
        out.h4_turn = x[1];
        out.h4_offset = best_rhombus_offset(c, theta0, x[0], x[1]).first;
      }
    }
  }
  return out;
}

nlohmann::json to_json(const BoundTable& t) {
  nlohmann::json j;
  j["unit"] = "deg";
  j["mu"] = t.mu;
  j["mu_angle"] = interval_json(Interval(rad2deg(t.mu_angle.lo), rad2deg(t.mu_angle.hi)));
  j["R0"] = rad2deg(t.r0);
  for (std::size_t m = 0; m < t.h.size(); ++m) j["h" + std::to_string(m)] = interval_json(t.h[m]);
  if (!t.h.empty()) j["h_max"] = interval_json(t.h_max);
  j["h4_case1"] = interval_json(t.h4_case1);
  j["h4_case2"] = interval_json(t.h4_case2);
  nlohmann::json f1 = nlohmann::json::object();
  for (const auto& [psi, v] : t.f1_values) f1[degree_key(psi)] = interval_json(v);
  nlohmann::json f2 = nlohmann::json::object();
  for (const auto& [psi, v] : t.f2_values) f2[degree_key(psi)] = interval_json(v);
  j["f1"] = f1;
  j["f2"] = f2;
  nlohmann::json grid = nlohmann::json::array();
  for (double psi : t.psi_grid) grid.push_back(rad2deg(psi));
  j["psi_grid"] = grid;
  nlohmann::json w = nlohmann::json::array();
  for (const auto& v : t.w) w.push_back(interval_json(v));
  j["w"] = w;
  j["verdict"] = t.verdict;
  j["failures"] = t.failures;
  return j;
}

}  // namespace kiss3
