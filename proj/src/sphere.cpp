#include "kiss3/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "kiss3/errors.hpp"

namespace kiss3 {

SphericalPoint SphericalPoint::make(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw DomainError("non-finite spherical coordinate");
  // Degree-to-radian conversion can overshoot the poles by an ulp.
  if (theta < -1e-12 || theta > kPi + 1e-12) throw DomainError("colatitude outside [0, pi]");
  theta = std::clamp(theta, 0.0, kPi);
  double wrapped = std::fmod(phi, 2.0 * kPi);
  if (wrapped < 0.0) wrapped += 2.0 * kPi;
  if (wrapped >= 2.0 * kPi) wrapped = 0.0;
  return {theta, wrapped};
}

Vec3 to_cartesian(const SphericalPoint& p) {
  const double s = std::sin(p.theta);
  return {s * std::cos(p.phi), s * std::sin(p.phi), std::cos(p.theta)};
}

SphericalPoint from_cartesian(const Vec3& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(r > 0.0)) throw DomainError("zero vector has no direction");
  const double theta = std::acos(std::clamp(v[2] / r, -1.0, 1.0));
  return SphericalPoint::make(theta, std::atan2(v[1], v[0]));
}

std::vector<std::vector<double>> PointSet::distance_matrix() const {
  const std::size_t n = points_.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i][j] = d[j][i] = angular_distance(points_[i], points_[j]);
    }
  }
  return d;
}

double cos_law(double theta1, double theta2, double dphi) {
  const double c = std::cos(theta1) * std::cos(theta2) + std::sin(theta1) * std::sin(theta2) * std::cos(dphi);
  return std::clamp(c, -1.0, 1.0);
}

double angular_distance(const SphericalPoint& p, const SphericalPoint& q) {
  if (p.theta == q.theta && p.phi == q.phi) return 0.0;
  // acos loses half the digits near 0 and pi; use the chord there.
  const Vec3 a = to_cartesian(p);
  const Vec3 b = to_cartesian(q);
  const double c = cos_law(p.theta, q.theta, p.phi - q.phi);
  if (std::abs(c) < 0.9) return std::acos(c);
  const Vec3 cross{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  const double s = std::sqrt(cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]);
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return std::atan2(s, dot);
}

double rho(double s) {
  const double c = std::cos(0.5 * s);
  if (!(s >= 0.0) || !(s < 2.0 * kPi / 3.0) || !(c > 0.5)) throw DomainError("rho requires 0 <= s < 2 pi / 3");
  return 2.0 * std::acos(std::min(1.0, 1.0 / (2.0 * c)));
}

double min_separation(const PointSet& ps) {
  const auto& pts = ps.points();
  if (pts.size() < 2) throw TooFewPoints("min_separation needs at least two points");
  double best = kPi;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, angular_distance(pts[i], pts[j]));
  return best;
}

PointSet icosahedron() {
  const double tau = std::numbers::phi;
  PointSet out;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-tau, tau}) {
      out.add(from_cartesian({0.0, a, b}));
      out.add(from_cartesian({a, b, 0.0}));
      out.add(from_cartesian({b, 0.0, a}));
    }
  }
  return out;
}

// --- randomness ---------------------------------------------------------------

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

SphericalPoint random_point(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  return SphericalPoint::make(std::acos(z), phi);
}

PointSet random_point_set(std::size_t n, Rng& rng) {
  PointSet out;
  for (std::size_t i = 0; i < n; ++i) out.add(random_point(rng));
  return out;
}

PointSet random_separated_set(std::size_t n, double min_sep, std::uint64_t seed, std::size_t max_tries) {
  if (n < 1) throw DomainError("random_separated_set needs n >= 1");
  Rng rng(seed);
  PointSet out;
  std::size_t rejections = 0;
  while (out.size() < n) {
    const SphericalPoint cand = random_point(rng);
    const bool ok = std::all_of(out.points().begin(), out.points().end(),
                                [&](const SphericalPoint& p) { return angular_distance(p, cand) >= min_sep; });
    if (ok) {
      out.add(cand);
      rejections = 0;
    } else if (++rejections >= max_tries) {
      throw SaturationError("placed " + std::to_string(out.size()) + " of " + std::to_string(n) +
                            " points before " + std::to_string(max_tries) + " consecutive rejections");
    }
  }
  return out;
}

Rotation random_rotation(Rng& rng) {
  // Uniform unit quaternion (Shoemake).
  const double u1 = rng.uniform();
  const double u2 = rng.uniform(0.0, 2.0 * kPi);
  const double u3 = rng.uniform(0.0, 2.0 * kPi);
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const double w = a * std::sin(u2);
  const double x = a * std::cos(u2);
  const double y = b * std::sin(u3);
  const double z = b * std::cos(u3);
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
           {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
           {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

namespace {

Vec3 rotate_vec(const Rotation& r, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2];
  return out;
}

}  // namespace

PointSet rotate(const PointSet& ps, const Rotation& r) {
  PointSet out;
  for (const auto& p : ps.points()) out.add(from_cartesian(rotate_vec(r, to_cartesian(p))));
  return out;
}

PointSet jittered_icosahedron_subset(std::size_t n, double max_jitter, Rng& rng) {
  if (n > 12) throw DomainError("icosahedron has 12 vertices");
  const PointSet ico = rotate(icosahedron(), random_rotation(rng));
  std::vector<std::size_t> order(12);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < n; ++i) std::swap(order[i], order[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i), 11))]);

  PointSet out;
  for (std::size_t i = 0; i < n; ++i) {
    const SphericalPoint& p = ico.points()[order[i]];
    // Step of length delta along a random tangent direction.
    const double delta = max_jitter * rng.uniform();
    const double dir = rng.uniform(0.0, 2.0 * kPi);
    const Vec3 v = to_cartesian(p);
    const Vec3 e_theta{std::cos(p.theta) * std::cos(p.phi), std::cos(p.theta) * std::sin(p.phi), -std::sin(p.theta)};
    const Vec3 e_phi{-std::sin(p.phi), std::cos(p.phi), 0.0};
    Vec3 moved{};
    for (int k = 0; k < 3; ++k) {
      const double tangent = std::cos(dir) * e_theta[k] + std::sin(dir) * e_phi[k];
      moved[k] = std::cos(delta) * v[k] + std::sin(delta) * tangent;
    }
    out.add(from_cartesian(moved));
  }
  return out;
}

PointSet read_point_set(std::istream& in) {
  PointSet out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    std::string extra;
    if (!(ls >> theta_deg >> phi_deg) || (ls >> extra))
      throw DomainError("point-set line " + std::to_string(lineno) + ": expected \"theta_deg phi_deg\"");
    out.add(SphericalPoint::make(deg2rad(theta_deg), deg2rad(phi_deg)));
  }
  return out;
}

void write_point_set(std::ostream& out, const PointSet& ps) {
  const auto old = out.precision(17);
  out << "# theta_deg phi_deg\n";
  for (const auto& p : ps.points()) out << rad2deg(p.theta) << ' ' << rad2deg(p.phi) << '\n';
  out.precision(old);
}

}  // namespace kiss3
