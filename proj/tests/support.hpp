#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <array>

#include "gaugelab/geometry.hpp"

namespace gaugelab::testing {

inline constexpr std::uint64_t kSeed = 20240611;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kSeed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }

  Point3 in_box(double half) { return {uniform(-half, half), uniform(-half, half), uniform(-half, half)}; }

  // Point at cylindrical radius in [rho_lo, rho_hi], |z| <= z_half.
  Point3 cylindrical(double rho_lo, double rho_hi, double z_half) {
    const double rho = uniform(rho_lo, rho_hi);
    const double phi = uniform(0.0, 2 * kPi);
    return {rho * std::cos(phi), rho * std::sin(phi), uniform(-z_half, z_half)};
  }

  Vec3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2 * kPi);
    const double s = std::sqrt(1 - z * z);
    return {s * std::cos(phi), s * std::sin(phi), z};
  }

 private:
  std::mt19937_64 gen_;
};

// Reference fields written out directly in Cartesian form.
inline Vec3 ref_kappa(double kappa, const Point3& p) {
  const double rho2 = p.x * p.x + p.y * p.y;
  return {-kappa * p.y / rho2, kappa * p.x / rho2, 0.0};
}

inline Vec3 ref_monopole(double g, const Point3& p) {
  const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  return {g * p.x / (r * r * r), g * p.y / (r * r * r), g * p.z / (r * r * r)};
}

// Textbook spherical form, 1 - cos(theta) evaluated directly.
inline Vec3 ref_string_i(double g, const Point3& p) {
  const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  const double theta = std::acos(p.z / r);
  const double phi = std::atan2(p.y, p.x);
  const double mag = g * (1 - std::cos(theta)) / (r * std::sin(theta));
  return {-mag * std::sin(phi), mag * std::cos(phi), 0.0};
}

inline Vec3 ref_string_ii(double g, const Point3& p) {
  const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  const double theta = std::acos(p.z / r);
  const double phi = std::atan2(p.y, p.x);
  const double mag = -g * (1 + std::cos(theta)) / (r * std::sin(theta));
  return {-mag * std::sin(phi), mag * std::cos(phi), 0.0};
}

// Trapezoid rule on n equal steps of a closed curve given by position and
// derivative. Spectrally accurate for smooth periodic integrands.
inline double trapezoid_circulation(const std::function<Vec3(const Point3&)>& field,
                                    const std::function<Point3(double)>& r,
                                    const std::function<Vec3(double)>& dr, long n) {
  double sum = 0.0;
  for (long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    sum += dot(field(r(t)), dr(t));
  }
  return sum / static_cast<double>(n);
}

// Star-shaped loop around a centre in a horizontal plane, r(phi) =
// r0 (1 + sum a_m cos(m phi + b_m)). For winding != 0 the axis lies inside
// the star, for winding 0 well outside it.
inline ParamPath star_loop(Rng& rng, int winding) {
  const double r0 = rng.uniform(0.5, 2.0);
  std::array<double, 3> a{}, b{};
  double total = 0.0;
  for (int m = 0; m < 3; ++m) {
    a[m] = rng.uniform(-1, 1);
    b[m] = rng.uniform(0, kTwoPi);
    total += std::abs(a[m]);
  }
  for (auto& x : a) x *= rng.uniform(0.05, 0.5) / total;
  const int turns = winding != 0 ? winding : (rng.coin() ? 1 : -1);
  const double reach = winding != 0 ? rng.uniform(0.0, 0.45 * r0) : rng.uniform(1.6 * r0, 4 * r0);
  const double angle = rng.uniform(0, kTwoPi);
  const double cx = reach * std::cos(angle), cy = reach * std::sin(angle);
  const double z0 = rng.uniform(-2, 2), wobble = rng.uniform(-0.5, 0.5);
  const double phi0 = rng.uniform(0, kTwoPi);
  const double speed = kTwoPi * turns;
  auto radius = [=](double phi) {
    double r = 1.0;
    for (int m = 0; m < 3; ++m) r += a[m] * std::cos((m + 1) * phi + b[m]);
    return r0 * r;
  };
  auto radius_d = [=](double phi) {
    double d = 0.0;
    for (int m = 0; m < 3; ++m) d -= a[m] * (m + 1) * std::sin((m + 1) * phi + b[m]);
    return r0 * d;
  };
  auto map = [=](double t) {
    const double phi = phi0 + speed * t;
    const double r = radius(phi);
    return Point3{cx + r * std::cos(phi), cy + r * std::sin(phi), z0 + wobble * std::sin(phi - phi0)};
  };
  auto tangent = [=](double t) {
    const double phi = phi0 + speed * t;
    const double r = radius(phi), dr = radius_d(phi);
    return Vec3{speed * (dr * std::cos(phi) - r * std::sin(phi)),
                speed * (dr * std::sin(phi) + r * std::cos(phi)), speed * wobble * std::cos(phi - phi0)};
  };
  return ParamPath(map, tangent, true, 64 * std::abs(turns));
}

// Tilted, gently curved disk: centre + x e1 + y e2 + h(x, y) n with
// h = (b1 (x^2 - y^2) + b2 x y) / a over the disk of radius a. Derivatives
// come from the finite-difference fallback.
struct BumpyDisk {
  Point3 center;
  double radius = 1.0;
  Vec3 normal{0, 0, 1};
  double b1 = 0.0;
  double b2 = 0.0;

  ParamSurface surface() const {
    Vec3 e1, e2;
    orthonormal_frame(normal, e1, e2);
    const Vec3 n = normal / norm(normal);
    const BumpyDisk d = *this;
    auto map = [=](double u, double v) {
      const double x = d.radius * u * std::cos(kTwoPi * v);
      const double y = d.radius * u * std::sin(kTwoPi * v);
      const double h = (d.b1 * (x * x - y * y) + d.b2 * x * y) / d.radius;
      return d.center + x * e1 + y * e2 + h * n;
    };
    ParamPath edge([=](double t) { return map(1.0, t); }, nullptr, true, 128);
    return ParamSurface(map, nullptr, nullptr, edge);
  }
};

// Random bumpy disk that crosses the z-axis once (through_axis) or keeps
// clear of it.
inline BumpyDisk random_bumpy_disk(Rng& rng, bool through_axis) {
  BumpyDisk d;
  d.radius = rng.uniform(0.5, 2.0);
  const double tilt = rng.uniform(0, 0.8);
  const double az = rng.uniform(0, kTwoPi);
  d.normal = {std::sin(tilt) * std::cos(az), std::sin(tilt) * std::sin(az), std::cos(tilt)};
  if (rng.coin()) d.normal = -d.normal;
  d.b1 = rng.uniform(-0.25, 0.25);
  d.b2 = rng.uniform(-0.25, 0.25);
  const double reach = through_axis ? rng.uniform(0, 0.4 * d.radius) : rng.uniform(1.6, 3.0) * d.radius;
  const double ang = rng.uniform(0, kTwoPi);
  d.center = {reach * std::cos(ang), reach * std::sin(ang), rng.uniform(-1, 1)};
  return d;
}

}  // namespace gaugelab::testing
