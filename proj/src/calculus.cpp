#include "gaugelab/calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "gaugelab/errors.hpp"

namespace gaugelab {

namespace {

// Neumaier-compensated running sum; order of additions is fixed by callers.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double roundoff_floor(double abs_integral) { return std::max(1e-14, 1e-15 * abs_integral); }

long long panels_per_piece(int base_panels, size_t n_pieces) {
  const long long np = static_cast<long long>(std::max<size_t>(n_pieces, 1));
  return std::max<long long>(1, (base_panels + np - 1) / np);
}

std::vector<double> pieces_with_breaks(const std::vector<double>& breaks) {
  std::vector<double> out{0.0};
  out.insert(out.end(), breaks.begin(), breaks.end());
  out.push_back(1.0);
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) throw InvalidArgument("rel_tol must be positive");
  if (base_panels < 4) throw InvalidArgument("base_panels must be at least 4");
  if (max_refinements < 1) throw InvalidArgument("max_refinements must be at least 1");
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  // P_n and P_{n-1} at x by the three-term recurrence.
  auto legendre = [n](double x, double& pn, double& pnm1) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    pn = p1;
    pnm1 = p0;
  };
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Tricomi initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pn, pnm1;
    for (int iter = 0; iter < 100; ++iter) {
      legendre(x, pn, pnm1);
      const double dx = pn / (n * (x * pn - pnm1) / (x * x - 1.0));
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, pn, pnm1);
    const double dp = n * (x * pn - pnm1) / (x * x - 1.0);
    rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_legendre_8() {
  static const GaussRule rule = gauss_legendre(8);
  return rule;
}

double composite_gauss_legendre(const std::function<double(double)>& f,
                                std::span<const double> pieces, long long panels,
                                double* abs_integral) {
  const GaussRule& rule = gauss_legendre_8();
  CompensatedSum sum, abs_sum;
  for (size_t p = 0; p + 1 < pieces.size(); ++p) {
    const double a = pieces[p], b = pieces[p + 1];
    if (!(b > a)) continue;
    const double width = (b - a) / static_cast<double>(panels);
    for (long long k = 0; k < panels; ++k) {
      const double lo = a + width * static_cast<double>(k);
      const double half = 0.5 * width;
      const double mid = lo + half;
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double term = rule.weights[i] * half * f(mid + half * rule.nodes[i]);
        sum.add(term);
        abs_sum.add(std::abs(term));
      }
    }
  }
  if (abs_integral) *abs_integral = abs_sum.value();
  return sum.value();
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> pieces, const QuadratureConfig& cfg) {
  cfg.validate();
  if (pieces.size() < 2) throw InvalidArgument("integration needs at least one interval");
  const size_t n_pieces = pieces.size() - 1;
  long long per_piece = panels_per_piece(cfg.base_panels, n_pieces);
  double prev = composite_gauss_legendre(f, pieces, per_piece);
  for (int level = 1; level <= cfg.max_refinements; ++level) {
    per_piece *= 2;
    double l1 = 0.0;
    const double cur = composite_gauss_legendre(f, pieces, per_piece, &l1);
    const double diff = std::abs(cur - prev);
    if (diff <= cfg.rel_tol * std::abs(cur) || diff <= roundoff_floor(l1)) {
      return {cur, per_piece * static_cast<long long>(n_pieces), diff, level};
    }
    prev = cur;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "quadrature did not converge after %d panel doublings",
                cfg.max_refinements);
  throw NoConvergence(buf);
}

QuadratureResult line_integral_detailed(const PotentialSpec& spec, const ParamPath& path,
                                        const QuadratureConfig& cfg) {
  if (!path_in_patch(path, spec.patch())) {
    throw OutsideDomain("path leaves the patch of " + spec.describe() + " (" +
                        spec.patch().describe() + ")");
  }
  const auto pieces = path.smooth_pieces();
  return integrate_adaptive(
      [&](double t) { return dot(eval_potential(spec, path.point(t)).value, path.tangent(t)); },
      pieces, cfg);
}

double line_integral(const PotentialSpec& spec, const ParamPath& path, const QuadratureConfig& cfg) {
  return line_integral_detailed(spec, path, cfg).value;
}

// ---------------------------------------------------------------------------

double default_curl_step(const Point3& p) { return 1e-4 * std::max(1.0, norm(p)); }

FieldSample numeric_curl(const PotentialSpec& spec, const Point3& p, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("finite-difference step must be positive");
  if (!(spec.patch().distance_to_excluded(p) > 2.0 * h)) {
    throw OutsideDomain("finite-difference stencil around the point leaves the patch of " +
                        spec.describe());
  }
  // Five-point central stencil; it reaches 2h from p.
  auto partial = [&](const Vec3& e) {
    auto at = [&](double s) { return eval_potential(spec, p + (s * h) * e).value; };
    return (at(-2.0) - 8.0 * at(-1.0) + 8.0 * at(1.0) - at(2.0)) / (12.0 * h);
  };
  const Vec3 dx = partial({1, 0, 0});
  const Vec3 dy = partial({0, 1, 0});
  const Vec3 dz = partial({0, 0, 1});
  return {{dy.z - dz.y, dz.x - dx.z, dx.y - dy.x}, p};
}

FieldSample numeric_curl(const PotentialSpec& spec, const Point3& p) {
  return numeric_curl(spec, p, default_curl_step(p));
}

// ---------------------------------------------------------------------------

namespace {

double composite_gauss_legendre_2d(const std::function<double(double, double)>& f,
                                   std::span<const double> u_pieces,
                                   std::span<const double> v_pieces, long long nu, long long nv,
                                   double* abs_integral) {
  const GaussRule& rule = gauss_legendre_8();
  CompensatedSum sum, abs_sum;
  for (size_t pu = 0; pu + 1 < u_pieces.size(); ++pu) {
    const double ua = u_pieces[pu], ub = u_pieces[pu + 1];
    if (!(ub > ua)) continue;
    const double hu = 0.5 * (ub - ua) / static_cast<double>(nu);
    for (size_t pv = 0; pv + 1 < v_pieces.size(); ++pv) {
      const double va = v_pieces[pv], vb = v_pieces[pv + 1];
      if (!(vb > va)) continue;
      const double hv = 0.5 * (vb - va) / static_cast<double>(nv);
      for (long long ku = 0; ku < nu; ++ku) {
        const double um = ua + hu * (2.0 * static_cast<double>(ku) + 1.0);
        for (long long kv = 0; kv < nv; ++kv) {
          const double vm = va + hv * (2.0 * static_cast<double>(kv) + 1.0);
          for (size_t i = 0; i < rule.nodes.size(); ++i) {
            for (size_t j = 0; j < rule.nodes.size(); ++j) {
              const double term = rule.weights[i] * rule.weights[j] * hu * hv *
                                  f(um + hu * rule.nodes[i], vm + hv * rule.nodes[j]);
              sum.add(term);
              abs_sum.add(std::abs(term));
            }
          }
        }
      }
    }
  }
  if (abs_integral) *abs_integral = abs_sum.value();
  return sum.value();
}

}  // namespace

QuadratureResult surface_flux_detailed(const VectorField& field, const ParamSurface& surf,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  const auto u_pieces = pieces_with_breaks(surf.u_breaks());
  const auto v_pieces = pieces_with_breaks(surf.v_breaks());
  auto integrand = [&](double u, double v) {
    const Point3 p = surf.point(u, v);
    Vec3 b;
    try {
      b = field(p).value;
    } catch (const DomainError& e) {
      throw FieldSingularOnSurface(std::string("field is singular on the surface: ") + e.what());
    }
    return dot(b, surf.normal(u, v));
  };
  const int base = std::max(1, cfg.base_panels / 8);
  long long nu = panels_per_piece(base, u_pieces.size() - 1);
  long long nv = panels_per_piece(base, v_pieces.size() - 1);
  double prev = composite_gauss_legendre_2d(integrand, u_pieces, v_pieces, nu, nv, nullptr);
  for (int level = 1; level <= cfg.max_refinements; ++level) {
    nu *= 2;
    nv *= 2;
    double l1 = 0.0;
    const double cur = composite_gauss_legendre_2d(integrand, u_pieces, v_pieces, nu, nv, &l1);
    const double diff = std::abs(cur - prev);
    if (diff <= cfg.rel_tol * std::abs(cur) || diff <= roundoff_floor(l1)) {
      const long long panels = nu * static_cast<long long>(u_pieces.size() - 1) * nv *
                               static_cast<long long>(v_pieces.size() - 1);
      return {cur, panels, diff, level};
    }
    prev = cur;
  }
  throw NoConvergence("surface flux did not converge");
}

double surface_flux(const VectorField& field, const ParamSurface& surf, const QuadratureConfig& cfg) {
  return surface_flux_detailed(field, surf, cfg).value;
}

// ---------------------------------------------------------------------------
// Axis interceptions and inner loops
// ---------------------------------------------------------------------------

namespace {

struct XySolve {
  SurfaceParam param;
  double residual = std::numeric_limits<double>::infinity();
};

// Damped Gauss-Newton for surf(u, v).xy == (tx, ty). The parameters are not
// clamped to the unit square.
XySolve solve_xy(const ParamSurface& surf, double tx, double ty, SurfaceParam start, double tol) {
  auto residual_at = [&](const SurfaceParam& s, double& fx, double& fy) {
    const Point3 p = surf.point(s.u, s.v);
    fx = p.x - tx;
    fy = p.y - ty;
    return std::hypot(fx, fy);
  };
  XySolve best;
  SurfaceParam cur = start;
  double fx, fy;
  double r = residual_at(cur, fx, fy);
  double lambda = 1e-6;
  best = {cur, r};
  for (int iter = 0; iter < 100 && r > tol; ++iter) {
    const Vec3 du = surf.du(cur.u, cur.v);
    const Vec3 dv = surf.dv(cur.u, cur.v);
    const double a11 = du.x * du.x + du.y * du.y;
    const double a12 = du.x * dv.x + du.y * dv.y;
    const double a22 = dv.x * dv.x + dv.y * dv.y;
    const double g1 = du.x * fx + du.y * fy;
    const double g2 = dv.x * fx + dv.y * fy;
    const double scale = std::max(a11 + a22, 1e-300);
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      const double m11 = a11 + lambda * (a11 + 1e-12 * scale);
      const double m22 = a22 + lambda * (a22 + 1e-12 * scale);
      const double det = m11 * m22 - a12 * a12;
      if (!(std::abs(det) > 0.0)) {
        lambda *= 10.0;
        continue;
      }
      const SurfaceParam trial{cur.u - (m22 * g1 - a12 * g2) / det,
                               cur.v - (m11 * g2 - a12 * g1) / det};
      double tfx, tfy;
      const double tr = residual_at(trial, tfx, tfy);
      if (tr < r) {
        cur = trial;
        fx = tfx;
        fy = tfy;
        r = tr;
        lambda = std::max(lambda * 0.1, 1e-15);
        improved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (r < best.residual) best = {cur, r};
    if (!improved) break;
  }
  return best;
}

double xy_distance(const Point3& p) { return std::hypot(p.x, p.y); }

// Signed turns of the quadrilateral's xy-projection about the origin; NaN
// when the origin sits on an edge.
double cell_turns(const std::array<Point3, 4>& c) {
  double total = 0.0;
  for (size_t k = 0; k < 4; ++k) {
    const Point3& a = c[k];
    const Point3& b = c[(k + 1) % 4];
    const double d = std::remainder(std::atan2(b.y, b.x) - std::atan2(a.y, a.x), kTwoPi);
    if (std::abs(d) > kPi - 1e-9) return std::numeric_limits<double>::quiet_NaN();
    total += d;
  }
  return total / kTwoPi;
}

}  // namespace

std::vector<AxisInterception> find_axis_interceptions(const ParamSurface& surf) {
  constexpr int n = 64;
  std::vector<Point3> grid(static_cast<size_t>((n + 1) * (n + 1)));
  auto at = [&](int i, int j) -> Point3& { return grid[static_cast<size_t>(i * (n + 1) + j)]; };
  double scale = 1.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      at(i, j) = surf.point(static_cast<double>(i) / n, static_cast<double>(j) / n);
      scale = std::max(scale, norm(at(i, j)));
    }
  }

  std::vector<SurfaceParam> seeds;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::array<Point3, 4> c{at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const std::array<SurfaceParam, 4> cp{
          SurfaceParam{static_cast<double>(i) / n, static_cast<double>(j) / n},
          SurfaceParam{static_cast<double>(i + 1) / n, static_cast<double>(j) / n},
          SurfaceParam{static_cast<double>(i + 1) / n, static_cast<double>(j + 1) / n},
          SurfaceParam{static_cast<double>(i) / n, static_cast<double>(j + 1) / n}};
      bool corner_hit = false;
      for (size_t k = 0; k < 4; ++k) {
        if (xy_distance(c[k]) <= kAxisGuard) {
          seeds.push_back(cp[k]);
          corner_hit = true;
        }
      }
      if (corner_hit) continue;
      const double turns = cell_turns(c);
      if (std::isnan(turns) || std::lround(turns) != 0) {
        seeds.push_back({(i + 0.5) / n, (j + 0.5) / n});
      }
    }
  }

  std::vector<AxisInterception> hits;
  const double tol = 1e-14 * scale;
  for (const auto& seed : seeds) {
    const XySolve s = solve_xy(surf, 0.0, 0.0, seed, tol);
    if (s.residual > 1e-10 * scale) continue;
    const double slack = 1e-9;
    if (s.param.u < -slack || s.param.u > 1 + slack || s.param.v < -slack || s.param.v > 1 + slack) {
      continue;
    }
    const Point3 p = surf.point(s.param.u, s.param.v);
    const bool known = std::any_of(hits.begin(), hits.end(), [&](const AxisInterception& h) {
      return norm(h.point - p) < 1e-7 * scale;
    });
    if (!known) hits.push_back({s.param, p});
  }
  return hits;
}

ParamPath inner_axis_loop(const ParamSurface& surf, const AxisInterception& at, double epsilon,
                          int orientation) {
  if (!(epsilon > 0.0)) throw InvalidArgument("inner loop radius must be positive");
  if (orientation != 1 && orientation != -1) throw InvalidArgument("orientation must be +1 or -1");

  const SurfaceParam root = at.param;
  const double du_len = norm(surf.du(root.u, root.v));
  const double dv_len = norm(surf.dv(root.u, root.v));
  const double speed = std::max(du_len, dv_len);
  if (!(speed > 0.0)) throw InvalidArgument("surface parametrization is degenerate at the interception");
  const double delta = epsilon / speed;
  const double tol = 1e-12 * epsilon;
  const double accept = 1e-8 * epsilon;

  // Solutions at evenly spaced azimuths; each evaluation restarts from the
  // nearest one.
  constexpr int kBins = 256;
  std::vector<SurfaceParam> table(kBins);
  {
    const double tx = epsilon, ty = 0.0;
    std::vector<SurfaceParam> seeds;
    for (int k = 0; k < 64; ++k) {
      const double a = kTwoPi * k / 64.0;
      seeds.push_back({root.u + delta * std::cos(a), root.v + delta * std::sin(a)});
      const double s = static_cast<double>(k) / 64.0;
      seeds.push_back({root.u + delta, s});
      seeds.push_back({root.u - delta, s});
      seeds.push_back({s, root.v + delta});
      seeds.push_back({s, root.v - delta});
    }
    double best_r = std::numeric_limits<double>::infinity();
    SurfaceParam best{};
    for (const auto& seed : seeds) {
      const Point3 p = surf.point(seed.u, seed.v);
      const double r = std::hypot(p.x - tx, p.y - ty);
      if (r < best_r && norm(p - at.point) < 4.0 * epsilon) {
        best_r = r;
        best = seed;
      }
    }
    if (!std::isfinite(best_r)) throw NoConvergence("no starting point for the inner loop");
    XySolve s = solve_xy(surf, tx, ty, best, tol);
    if (s.residual > accept) throw NoConvergence("inner loop did not close on the surface");
    table[0] = s.param;
  }
  for (int k = 1; k < kBins; ++k) {
    const double phi = orientation * kTwoPi * k / kBins;
    const XySolve s =
        solve_xy(surf, epsilon * std::cos(phi), epsilon * std::sin(phi), table[k - 1], tol);
    if (s.residual > accept) throw NoConvergence("inner loop continuation failed");
    table[static_cast<size_t>(k)] = s.param;
  }

  struct Solved {
    SurfaceParam param;
    double phi;
  };
  auto solve_at = [surf, table, epsilon, orientation, tol, accept](double t) {
    const double phi = orientation * kTwoPi * t;
    const auto bin = static_cast<size_t>(std::lround(t * kBins)) % kBins;
    const XySolve s = solve_xy(surf, epsilon * std::cos(phi), epsilon * std::sin(phi), table[bin], tol);
    if (s.residual > accept) throw NoConvergence("inner loop point did not converge");
    return Solved{s.param, phi};
  };
  auto map = [surf, solve_at, epsilon](double t) {
    const Solved s = solve_at(t);
    const double z = surf.point(s.param.u, s.param.v).z;
    return Point3{epsilon * std::cos(s.phi), epsilon * std::sin(s.phi), z};
  };
  auto tangent = [surf, solve_at, epsilon, orientation](double t) {
    const Solved s = solve_at(t);
    const double w = orientation * kTwoPi * epsilon;
    const double tx = -w * std::sin(s.phi), ty = w * std::cos(s.phi);
    const Vec3 du = surf.du(s.param.u, s.param.v);
    const Vec3 dv = surf.dv(s.param.u, s.param.v);
    const double det = du.x * dv.y - dv.x * du.y;
    const double a = (tx * dv.y - dv.x * ty) / det;
    const double b = (du.x * ty - tx * du.y) / det;
    return Vec3{tx, ty, a * du.z + b * dv.z};
  };
  return ParamPath(map, tangent, true, 64);
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw InvalidArgument("extrapolation needs matching samples");
  double out = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double w = 1.0;
    for (size_t j = 0; j < x.size(); ++j) {
      if (j != i) w *= -x[j] / (x[i] - x[j]);
    }
    out += w * y[i];
  }
  return out;
}

StokesReport stokes_annular(const PotentialSpec& spec, const ParamSurface& surf,
                            const QuadratureConfig& cfg) {
  cfg.validate();
  if (!surf.boundary()) throw InvalidArgument("the Stokes procedure needs a surface with a boundary");
  const ParamPath& boundary = *surf.boundary();
  const auto hits = find_axis_interceptions(surf);
  if (hits.size() > 1) {
    throw MultipleInterceptions("surface meets the z-axis at " + std::to_string(hits.size()) +
                                " points; only a single interception is supported");
  }

  StokesReport report;
  report.boundary_integral = line_integral(spec, boundary, cfg);
  report.boundary_winding = winding_number(boundary);

  if (hits.empty()) {
    if (report.boundary_winding != 0) {
      throw InvalidArgument("boundary winds around the z-axis but no interception was found");
    }
    report.stokes_case = StokesCase::kNonIntercepting;
    report.inner_limit_integral = 0.0;
    report.flux = report.boundary_integral;
    return report;
  }

  if (std::abs(report.boundary_winding) != 1) {
    throw InvalidArgument("surface meets the z-axis once but its boundary winds " +
                          std::to_string(report.boundary_winding) + " times");
  }
  report.stokes_case = StokesCase::kAxisIntercepting;
  report.interception = hits.front().point;

  std::array<double, 3> eps{}, values{};
  for (size_t k = 0; k < 3; ++k) {
    eps[k] = kInnerLoopRadii[k];
    const ParamPath loop = inner_axis_loop(surf, hits.front(), eps[k], report.boundary_winding);
    values[k] = line_integral(spec, loop, cfg);
    report.inner_samples.push_back({eps[k], values[k]});
  }
  const double quadratic = extrapolate_to_zero(eps, values);
  const double linear = extrapolate_to_zero(std::span(eps).subspan(1), std::span(values).subspan(1));
  report.inner_limit_integral = quadratic;
  report.extrapolation_defect = std::abs(quadratic - linear);
  report.flux = report.boundary_integral - report.inner_limit_integral;
  return report;
}

}  // namespace gaugelab
