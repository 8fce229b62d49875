#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <random>
#include <vector>

namespace kiss3 {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

using Vec3 = std::array<double, 3>;

// Point on the unit sphere. Colatitude 0 is the reference pole e0.
struct SphericalPoint {
  double theta = 0.0;  // colatitude, [0, pi]
  double phi = 0.0;    // azimuth, [0, 2 pi)

  // Validates theta and wraps phi into [0, 2 pi).
  static SphericalPoint make(double theta, double phi);
};

Vec3 to_cartesian(const SphericalPoint& p);
// Any nonzero vector; normalized first.
SphericalPoint from_cartesian(const Vec3& v);

class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<SphericalPoint> points) : points_(std::move(points)) {}

  const std::vector<SphericalPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  void add(const SphericalPoint& p) { points_.push_back(p); }

  // Symmetric matrix of angular distances, zero diagonal.
  std::vector<std::vector<double>> distance_matrix() const;

 private:
  std::vector<SphericalPoint> points_;
};

// cos of the side opposite the angle dphi, clamped to [-1, 1].
double cos_law(double theta1, double theta2, double dphi);
double angular_distance(const SphericalPoint& p, const SphericalPoint& q);

// Companion diagonal 2 acos(1 / (2 cos(s/2))) of a spherical rhombus with
// 60-degree edges. Requires s < 2 pi / 3.
double rho(double s);

// Minimum pairwise distance. Throws TooFewPoints for fewer than two points.
double min_separation(const PointSet& ps);

// Vertices of the regular icosahedron, cyclic permutations of (0, +-1, +-tau).
PointSet icosahedron();

// Seeded mt19937_64 with portable conversions (the std distributions are
// implementation-defined). A stream id splits one seed into shards.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int uniform_int(int lo, int hi);       // [lo, hi]

 private:
  std::mt19937_64 engine_;
};

// Area-uniform point.
SphericalPoint random_point(Rng& rng);
PointSet random_point_set(std::size_t n, Rng& rng);

// Sequential rejection sampling. Throws SaturationError after max_tries
// consecutive rejections.
PointSet random_separated_set(std::size_t n, double min_sep, std::uint64_t seed,
                              std::size_t max_tries);

using Rotation = std::array<Vec3, 3>;  // rows of an orthogonal matrix

Rotation random_rotation(Rng& rng);
PointSet rotate(const PointSet& ps, const Rotation& r);

// n vertices of a randomly rotated icosahedron, each moved by at most
// max_jitter. Keeps min separation >= acos(1/sqrt 5) - 2 max_jitter.
PointSet jittered_icosahedron_subset(std::size_t n, double max_jitter, Rng& rng);

// Text format: one "theta_deg phi_deg" per line, '#' starts a comment.
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& ps);

}  // namespace kiss3
