#include "gaugelab/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <utility>

#include "gaugelab/errors.hpp"

namespace gaugelab {

namespace {

constexpr double kStencilStep = 2e-4;

// Fourth-order first derivative of f at t in [0, 1], one-sided near the ends.
template <typename F>
Vec3 five_point_derivative(const F& f, double t) {
  const double h = kStencilStep;
  if (t - 2 * h >= 0.0 && t + 2 * h <= 1.0) {
    return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h);
  }
  if (t - 2 * h < 0.0) {
    return (-25.0 * f(t) + 48.0 * f(t + h) - 36.0 * f(t + 2 * h) + 16.0 * f(t + 3 * h) -
            3.0 * f(t + 4 * h)) /
           (12.0 * h);
  }
  return (25.0 * f(t) - 48.0 * f(t - h) + 36.0 * f(t - 2 * h) - 16.0 * f(t - 3 * h) +
          3.0 * f(t - 4 * h)) /
         (12.0 * h);
}

std::vector<double> clean_breaks(std::vector<double> breaks) {
  std::erase_if(breaks, [](double b) { return !(b > 0.0 && b < 1.0); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a;
}

double endpoint_tolerance(const Point3& p) { return 1e-12 * std::max(1.0, norm(p)); }

std::string format_point(const Point3& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.9g, %.9g, %.9g)", p.x, p.y, p.z);
  return buf;
}

// Parameter nodes: a uniform grid of `n` intervals merged with breakpoints.
std::vector<double> parameter_nodes(const ParamPath& path, int n) {
  std::vector<double> nodes;
  nodes.reserve(static_cast<size_t>(n) + path.breakpoints().size() + 1);
  for (int i = 0; i <= n; ++i) nodes.push_back(static_cast<double>(i) / n);
  nodes.insert(nodes.end(), path.breakpoints().begin(), path.breakpoints().end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

}  // namespace

Cylindrical to_cylindrical(const Point3& p) {
  Cylindrical c;
  c.rho = std::hypot(p.x, p.y);
  c.z = p.z;
  if (c.rho == 0.0) {
    c.phi = 0.0;
    return c;
  }
  double phi = std::atan2(p.y, p.x);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  c.phi = phi;
  return c;
}

Point3 from_cylindrical(double rho, double phi, double z) {
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

Point3 from_spherical(double r, double theta, double phi) {
  const double s = std::sin(theta);
  return {r * s * std::cos(phi), r * s * std::sin(phi), r * std::cos(theta)};
}

Vec3 azimuthal_unit(const Point3& p) {
  const double rho = std::hypot(p.x, p.y);
  return {-p.y / rho, p.x / rho, 0.0};
}

void orthonormal_frame(const Vec3& n, Vec3& e1, Vec3& e2) {
  const double len = norm(n);
  if (!(len > 0.0) || !std::isfinite(len)) throw InvalidArgument("normal vector must be nonzero");
  const Vec3 nh = n / len;
  const Vec3 seed = std::abs(nh.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = seed - dot(seed, nh) * nh;
  e1 = e1 / norm(e1);
  e2 = cross(nh, e1);
}

// ---------------------------------------------------------------------------

double ExcludedSet::distance(const Point3& p) const {
  const double rho = std::hypot(p.x, p.y);
  switch (kind) {
    case ExcludedKind::kZAxis:
      return rho;
    case ExcludedKind::kNegZHalfAxis:
      return p.z <= 0.0 ? rho : std::hypot(rho, p.z);
    case ExcludedKind::kPosZHalfAxis:
      return p.z >= 0.0 ? rho : std::hypot(rho, p.z);
    case ExcludedKind::kCylinderShell:
      return std::abs(rho - radius);
  }
  return std::numeric_limits<double>::infinity();
}

std::string ExcludedSet::describe() const {
  switch (kind) {
    case ExcludedKind::kZAxis:
      return "z-axis";
    case ExcludedKind::kNegZHalfAxis:
      return "z<=0 half-axis";
    case ExcludedKind::kPosZHalfAxis:
      return "z>=0 half-axis";
    case ExcludedKind::kCylinderShell: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "cylinder shell rho=%.9g", radius);
      return buf;
    }
  }
  return "?";
}

PatchSpec PatchSpec::z_axis() {
  PatchSpec p;
  p.excluded_.push_back({ExcludedKind::kZAxis, 0.0});
  return p;
}

PatchSpec PatchSpec::neg_z_half_axis() {
  PatchSpec p;
  p.excluded_.push_back({ExcludedKind::kNegZHalfAxis, 0.0});
  return p;
}

PatchSpec PatchSpec::pos_z_half_axis() {
  PatchSpec p;
  p.excluded_.push_back({ExcludedKind::kPosZHalfAxis, 0.0});
  return p;
}

PatchSpec PatchSpec::cylinder_shell(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("cylinder shell radius must be positive and finite");
  }
  PatchSpec p;
  p.excluded_.push_back({ExcludedKind::kCylinderShell, radius});
  return p;
}

PatchSpec PatchSpec::intersect(const PatchSpec& a, const PatchSpec& b) {
  PatchSpec out = a;
  for (const auto& e : b.excluded_) {
    if (std::find(out.excluded_.begin(), out.excluded_.end(), e) == out.excluded_.end()) {
      out.excluded_.push_back(e);
    }
  }
  return out;
}

double PatchSpec::distance_to_excluded(const Point3& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& e : excluded_) d = std::min(d, e.distance(p));
  return d;
}

std::string PatchSpec::describe() const {
  if (excluded_.empty()) return "all space";
  std::string s = "space minus ";
  for (size_t i = 0; i < excluded_.size(); ++i) {
    if (i) s += " and ";
    s += excluded_[i].describe();
  }
  return s;
}

// ---------------------------------------------------------------------------

ParamPath::ParamPath(Map map, Map tangent, bool closed, int samples_hint,
                     std::vector<double> breakpoints)
    : map_(std::move(map)),
      tangent_(std::move(tangent)),
      closed_(closed),
      samples_hint_(samples_hint),
      breakpoints_(clean_breaks(std::move(breakpoints))) {
  if (!map_) throw InvalidArgument("path map is empty");
  if (samples_hint_ < 1) throw InvalidArgument("samples_hint must be positive");
  const Point3 a = map_(0.0);
  const Point3 b = map_(1.0);
  if (!is_finite(a) || !is_finite(b)) throw InvalidArgument("path map is not finite");
  if (closed_ && norm(a - b) >= endpoint_tolerance(a)) {
    throw NotClosed("path flagged closed but endpoints differ: " + format_point(a) + " vs " +
                    format_point(b));
  }
}

Vec3 ParamPath::tangent(double t) const {
  if (tangent_) return tangent_(t);
  return five_point_derivative(map_, t);
}

std::vector<double> ParamPath::smooth_pieces() const {
  std::vector<double> out;
  out.reserve(breakpoints_.size() + 2);
  out.push_back(0.0);
  out.insert(out.end(), breakpoints_.begin(), breakpoints_.end());
  out.push_back(1.0);
  return out;
}

ParamPath circle(const Point3& center, double radius, const Vec3& normal, int turns,
                 double start_angle) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("circle radius must be positive");
  if (turns == 0) throw InvalidArgument("circle must make at least one turn");
  Vec3 e1, e2;
  orthonormal_frame(normal, e1, e2);
  const double sweep = kTwoPi * turns;
  auto map = [=](double t) {
    const double a = start_angle + sweep * t;
    return center + radius * (std::cos(a) * e1 + std::sin(a) * e2);
  };
  auto tangent = [=](double t) {
    const double a = start_angle + sweep * t;
    return (radius * sweep) * (-std::sin(a) * e1 + std::cos(a) * e2);
  };
  return ParamPath(map, tangent, true, 64 * std::abs(turns));
}

ParamPath unit_circle() { return circle({0, 0, 0}, 1.0); }

ParamPath segment(const Point3& from, const Point3& to) {
  const Vec3 d = to - from;
  return ParamPath([=](double t) { return from + t * d; }, [=](double) { return d; }, false, 16);
}

ParamPath polyline(std::vector<Point3> vertices, bool closed) {
  if (vertices.size() < 2) throw InvalidArgument("polyline needs at least two vertices");
  for (const auto& v : vertices) {
    if (!is_finite(v)) throw InvalidArgument("polyline vertex is not finite");
  }
  if (closed) vertices.push_back(vertices.front());
  const size_t m = vertices.size() - 1;
  auto locate = [m](double t, size_t& k, double& s) {
    const double x = std::clamp(t, 0.0, 1.0) * static_cast<double>(m);
    k = std::min(static_cast<size_t>(x), m - 1);
    s = x - static_cast<double>(k);
  };
  auto map = [vertices, locate](double t) {
    size_t k;
    double s;
    locate(t, k, s);
    if (s == 1.0) return vertices[k + 1];
    return vertices[k] + s * (vertices[k + 1] - vertices[k]);
  };
  auto tangent = [vertices, locate, m](double t) {
    size_t k;
    double s;
    locate(t, k, s);
    return static_cast<double>(m) * (vertices[k + 1] - vertices[k]);
  };
  std::vector<double> breaks;
  for (size_t k = 1; k < m; ++k) breaks.push_back(static_cast<double>(k) / static_cast<double>(m));
  return ParamPath(map, tangent, closed, static_cast<int>(16 * m), std::move(breaks));
}

ParamPath reversed(const ParamPath& path) {
  std::vector<double> breaks;
  for (double b : path.breakpoints()) breaks.push_back(1.0 - b);
  return ParamPath([path](double t) { return path.point(1.0 - t); },
                   [path](double t) { return -path.tangent(1.0 - t); }, path.closed(),
                   path.samples_hint(), std::move(breaks));
}

ParamPath concatenate(const ParamPath& a, const ParamPath& b) {
  const Point3 a_end = a.point(1.0);
  const Point3 b_start = b.point(0.0);
  if (norm(a_end - b_start) > 1e-9 * std::max(1.0, norm(a_end))) {
    throw InvalidArgument("concatenated paths do not meet: " + format_point(a_end) + " vs " +
                          format_point(b_start));
  }
  std::vector<double> breaks;
  for (double x : a.breakpoints()) breaks.push_back(0.5 * x);
  breaks.push_back(0.5);
  for (double x : b.breakpoints()) breaks.push_back(0.5 + 0.5 * x);
  auto map = [a, b](double t) { return t <= 0.5 ? a.point(2.0 * t) : b.point(2.0 * t - 1.0); };
  auto tangent = [a, b](double t) {
    return t <= 0.5 ? 2.0 * a.tangent(2.0 * t) : 2.0 * b.tangent(2.0 * t - 1.0);
  };
  const Point3 start = a.point(0.0);
  const bool closed = norm(b.point(1.0) - start) < endpoint_tolerance(start);
  return ParamPath(map, tangent, closed, a.samples_hint() + b.samples_hint(), std::move(breaks));
}

ParamPath reparametrized(const ParamPath& path, std::function<double(double)> s,
                         std::function<double(double)> ds) {
  if (!s || !ds) throw InvalidArgument("reparametrization needs s and ds/dt");
  // Breakpoints pulled back through s by bisection.
  std::vector<double> breaks;
  for (double b : path.breakpoints()) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (s(mid) < b ? lo : hi) = mid;
    }
    breaks.push_back(0.5 * (lo + hi));
  }
  return ParamPath([path, s](double t) { return path.point(s(t)); },
                   [path, s, ds](double t) { return ds(t) * path.tangent(s(t)); }, path.closed(),
                   path.samples_hint(), std::move(breaks));
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxWindingDepth = 60;

double azimuth_checked(const Point3& p) {
  const double rho = std::hypot(p.x, p.y);
  if (!(rho > kAxisGuard)) {
    throw PathTouchesAxis("path passes within 1e-9 of the z-axis at " + format_point(p));
  }
  return std::atan2(p.y, p.x);
}

// Azimuth change over [a, b], bisecting until each step is below pi/2.
double azimuth_increment(const ParamPath& path, double a, double b, double phi_a, double phi_b,
                         int depth) {
  const double d = wrap_angle(phi_b - phi_a);
  if (std::abs(d) < 0.5 * kPi) return d;
  if (depth >= kMaxWindingDepth) {
    throw PathTouchesAxis("azimuth failed to resolve near the z-axis; path grazes the axis");
  }
  const double m = 0.5 * (a + b);
  const double phi_m = azimuth_checked(path.point(m));
  return azimuth_increment(path, a, m, phi_a, phi_m, depth + 1) +
         azimuth_increment(path, m, b, phi_m, phi_b, depth + 1);
}

}  // namespace

int winding_number(const ParamPath& path) {
  if (!path.closed()) throw NotClosed("winding number requires a closed path");
  const auto nodes = parameter_nodes(path, std::max(path.samples_hint(), 64));
  double total = 0.0;
  double phi_prev = azimuth_checked(path.point(nodes.front()));
  for (size_t i = 1; i < nodes.size(); ++i) {
    const double phi = azimuth_checked(path.point(nodes[i]));
    total += azimuth_increment(path, nodes[i - 1], nodes[i], phi_prev, phi, 0);
    phi_prev = phi;
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= 1e-6) {
    throw NotClosed("accumulated azimuth is not a whole number of turns");
  }
  return static_cast<int>(rounded);
}

namespace {

struct PatchProbe {
  const ParamPath& path;
  const PatchSpec& patch;
  double floor_length;

  double dist(double t) const { return patch.distance_to_excluded(path.point(t)); }

  // Golden-section search for the smallest distance on a short piece.
  double local_minimum(double a, double b) const {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = dist(x1), f2 = dist(x2);
    double best = std::min({dist(a), dist(b), f1, f2});
    for (int i = 0; i < 60 && b - a > 1e-15; ++i) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = dist(x1);
        best = std::min(best, f1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = dist(x2);
        best = std::min(best, f2);
      }
    }
    return best;
  }

  // A piece of length L whose endpoints sit at distances da, db from the
  // excluded set stays at least (da + db - L) / 2 away from it.
  bool clear(double a, double b, const Point3& pa, const Point3& pb, double da, double db,
             int depth) const {
    if (!(da > kAxisGuard) || !(db > kAxisGuard)) return false;
    const double m = 0.5 * (a + b);
    const Point3 pm = path.point(m);
    const double length = norm(pm - pa) + norm(pb - pm);
    if (1.1 * length < da + db - 2.0 * kAxisGuard) return true;
    if (length <= floor_length || depth > 60) return local_minimum(a, b) > kAxisGuard;
    const double dm = patch.distance_to_excluded(pm);
    return clear(a, m, pa, pm, da, dm, depth + 1) && clear(m, b, pm, pb, dm, db, depth + 1);
  }
};

}  // namespace

bool path_in_patch(const ParamPath& path, const PatchSpec& patch) {
  const auto nodes = parameter_nodes(path, std::max(path.samples_hint(), 64));
  std::vector<Point3> pts;
  pts.reserve(nodes.size());
  for (double t : nodes) {
    const Point3 p = path.point(t);
    if (!is_finite(p)) return false;
    pts.push_back(p);
  }
  if (patch.excluded().empty()) return true;
  double length = 0.0;
  for (size_t i = 1; i < pts.size(); ++i) length += norm(pts[i] - pts[i - 1]);
  const PatchProbe probe{path, patch, 1e-4 * length};
  std::vector<double> dist(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) dist[i] = patch.distance_to_excluded(pts[i]);
  for (size_t i = 1; i < pts.size(); ++i) {
    if (!probe.clear(nodes[i - 1], nodes[i], pts[i - 1], pts[i], dist[i - 1], dist[i], 0)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

ParamSurface::ParamSurface(Map map, Map du, Map dv, std::optional<ParamPath> boundary,
                           std::vector<double> u_breaks, std::vector<double> v_breaks)
    : map_(std::move(map)),
      du_(std::move(du)),
      dv_(std::move(dv)),
      boundary_(std::move(boundary)),
      u_breaks_(clean_breaks(std::move(u_breaks))),
      v_breaks_(clean_breaks(std::move(v_breaks))) {
  if (!map_) throw InvalidArgument("surface map is empty");
  if (boundary_ && !boundary_->closed()) throw NotClosed("surface boundary must be a closed path");
}

Vec3 ParamSurface::du(double u, double v) const {
  if (du_) return du_(u, v);
  return five_point_derivative([&](double s) { return map_(s, v); }, u);
}

Vec3 ParamSurface::dv(double u, double v) const {
  if (dv_) return dv_(u, v);
  return five_point_derivative([&](double s) { return map_(u, s); }, v);
}

ParamSurface disk(const Point3& center, double radius, const Vec3& normal,
                  std::span<const double> split_radii) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("disk radius must be positive");
  Vec3 e1, e2;
  orthonormal_frame(normal, e1, e2);
  std::vector<double> u_breaks;
  if (!split_radii.empty()) {
    const Vec3 nh = normal / norm(normal);
    const bool axis_centred = std::hypot(center.x, center.y) <= kAxisGuard;
    const bool horizontal = std::hypot(nh.x, nh.y) <= 1e-12;
    if (!axis_centred || !horizontal) {
      throw InvalidArgument("shell split needs a disk centred on the z-axis with normal +-z");
    }
    for (double r : split_radii) u_breaks.push_back(r / radius);
  }
  auto map = [=](double u, double v) {
    const double a = kTwoPi * v;
    return center + (radius * u) * (std::cos(a) * e1 + std::sin(a) * e2);
  };
  auto du = [=](double, double v) {
    const double a = kTwoPi * v;
    return radius * (std::cos(a) * e1 + std::sin(a) * e2);
  };
  auto dv = [=](double u, double v) {
    const double a = kTwoPi * v;
    return (radius * u * kTwoPi) * (-std::sin(a) * e1 + std::cos(a) * e2);
  };
  return ParamSurface(map, du, dv, circle(center, radius, normal), std::move(u_breaks));
}

ParamSurface sphere(const Point3& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("sphere radius must be positive");
  auto map = [=](double u, double v) {
    return center + from_spherical(radius, kPi * u, kTwoPi * v);
  };
  auto du = [=](double u, double v) {
    const double th = kPi * u, ph = kTwoPi * v;
    return (radius * kPi) * Vec3{std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th)};
  };
  auto dv = [=](double u, double v) {
    const double th = kPi * u, ph = kTwoPi * v;
    return (radius * kTwoPi * std::sin(th)) * Vec3{-std::sin(ph), std::cos(ph), 0.0};
  };
  return ParamSurface(map, du, dv, std::nullopt);
}

}  // namespace gaugelab
