#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gaugelab {

// Distance below which a point counts as lying on an excluded set.
inline constexpr double kAxisGuard = 1e-9;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

// Points and vectors share a representation; the alias documents intent.
using Point3 = Vec3;

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Cylindrical coordinates about the z-axis. phi lies in [0, 2pi) and is
// measured counterclockwise when viewed from +z.
struct Cylindrical {
  double rho = 0.0;
  double phi = 0.0;
  double z = 0.0;
};

Cylindrical to_cylindrical(const Point3& p);
Point3 from_cylindrical(double rho, double phi, double z);

// theta is the polar angle from +z, phi the azimuth.
Point3 from_spherical(double r, double theta, double phi);

// Unit azimuthal vector at p; requires a point off the z-axis.
Vec3 azimuthal_unit(const Point3& p);

// ---------------------------------------------------------------------------
// Validity patches
// ---------------------------------------------------------------------------

enum class ExcludedKind { kZAxis, kNegZHalfAxis, kPosZHalfAxis, kCylinderShell };

struct ExcludedSet {
  ExcludedKind kind = ExcludedKind::kZAxis;
  double radius = 0.0;  // only meaningful for kCylinderShell

  double distance(const Point3& p) const;
  std::string describe() const;
  friend bool operator==(const ExcludedSet&, const ExcludedSet&) = default;
};

// Open region on which a potential is defined, stored as the union of the
// singular sets it leaves out. An empty list is all of space.
class PatchSpec {
 public:
  PatchSpec() = default;

  static PatchSpec none() { return {}; }
  static PatchSpec z_axis();
  static PatchSpec neg_z_half_axis();
  static PatchSpec pos_z_half_axis();
  static PatchSpec cylinder_shell(double radius);

  // Overlap of two patches: the excluded sets are merged.
  static PatchSpec intersect(const PatchSpec& a, const PatchSpec& b);

  const std::vector<ExcludedSet>& excluded() const { return excluded_; }

  // +infinity for the unrestricted patch.
  double distance_to_excluded(const Point3& p) const;
  bool contains(const Point3& p) const { return distance_to_excluded(p) > kAxisGuard; }

  std::string describe() const;

  friend bool operator==(const PatchSpec&, const PatchSpec&) = default;

 private:
  std::vector<ExcludedSet> excluded_;
};

// ---------------------------------------------------------------------------
// Parametric paths
// ---------------------------------------------------------------------------

// A curve t in [0,1] -> Point3. The tangent is d(point)/dt; when omitted it
// is estimated with a fourth-order difference stencil. Breakpoints mark
// parameters where the map is only piecewise smooth (polyline vertices,
// concatenation joints); quadrature never straddles them.
class ParamPath {
 public:
  using Map = std::function<Point3(double)>;

  ParamPath(Map map, Map tangent, bool closed, int samples_hint = 64,
            std::vector<double> breakpoints = {});

  Point3 point(double t) const { return map_(t); }
  Vec3 tangent(double t) const;
  bool closed() const { return closed_; }
  int samples_hint() const { return samples_hint_; }
  // Sorted, strictly inside (0, 1).
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  // Breakpoints with 0 and 1 appended at both ends.
  std::vector<double> smooth_pieces() const;

 private:
  Map map_;
  Map tangent_;
  bool closed_;
  int samples_hint_;
  std::vector<double> breakpoints_;
};

// Circle about `center` in the plane with unit normal `normal`; `turns` full
// revolutions, counterclockwise with respect to the normal when positive.
ParamPath circle(const Point3& center, double radius, const Vec3& normal = {0, 0, 1},
                 int turns = 1, double start_angle = 0.0);
ParamPath unit_circle();
ParamPath segment(const Point3& from, const Point3& to);
// Piecewise-linear path through the vertices; a closed polyline returns to
// the first vertex.
ParamPath polyline(std::vector<Point3> vertices, bool closed);

ParamPath reversed(const ParamPath& path);
// First `a` on [0, 1/2], then `b` on [1/2, 1]. Closed iff the result returns
// to its start.
ParamPath concatenate(const ParamPath& a, const ParamPath& b);
// path(s(t)) for a monotone increasing s with s(0)=0, s(1)=1.
ParamPath reparametrized(const ParamPath& path, std::function<double(double)> s,
                         std::function<double(double)> ds);

// Signed number of revolutions of a closed path about the z-axis.
// Throws NotClosed or PathTouchesAxis.
int winding_number(const ParamPath& path);

// True iff the path keeps clear of every excluded set of the patch.
bool path_in_patch(const ParamPath& path, const PatchSpec& patch);

// ---------------------------------------------------------------------------
// Parametric surfaces
// ---------------------------------------------------------------------------

// A surface (u, v) in [0,1]^2 -> Point3 oriented by du x dv. The boundary,
// when present, is traversed counterclockwise with respect to that normal.
// Closed surfaces (spheres) have no boundary.
class ParamSurface {
 public:
  using Map = std::function<Point3(double, double)>;

  ParamSurface(Map map, Map du, Map dv, std::optional<ParamPath> boundary,
               std::vector<double> u_breaks = {}, std::vector<double> v_breaks = {});

  Point3 point(double u, double v) const { return map_(u, v); }
  Vec3 du(double u, double v) const;
  Vec3 dv(double u, double v) const;
  // Unnormalized area element du x dv.
  Vec3 normal(double u, double v) const { return cross(du(u, v), dv(u, v)); }

  const std::optional<ParamPath>& boundary() const { return boundary_; }
  // Parameter values (strictly inside (0,1)) where the integrand may jump.
  const std::vector<double>& u_breaks() const { return u_breaks_; }
  const std::vector<double>& v_breaks() const { return v_breaks_; }

 private:
  Map map_;
  Map du_;
  Map dv_;
  std::optional<ParamPath> boundary_;
  std::vector<double> u_breaks_;
  std::vector<double> v_breaks_;
};

// Flat disk, u radial and v angular. `split_radii` adds radial breaks at the
// given distances from the z-axis; this is only accepted for disks centred on
// the axis with normal +-z, where rho is a function of u alone.
ParamSurface disk(const Point3& center, double radius, const Vec3& normal = {0, 0, 1},
                  std::span<const double> split_radii = {});
// Sphere with outward normal; u is the polar angle, v the azimuth.
ParamSurface sphere(const Point3& center, double radius);

// Orthonormal pair (e1, e2) with e1 x e2 = normalized n.
void orthonormal_frame(const Vec3& n, Vec3& e1, Vec3& e2);

}  // namespace gaugelab
