#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gaugelab/geometry.hpp"
#include "gaugelab/potentials.hpp"

namespace gaugelab {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  int max_refinements = 24;
  // Panels per smooth piece of a path at the coarsest level. Surfaces start
  // from base_panels / 8 panels per parameter direction.
  int base_panels = 64;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  long long panels_used = 0;
  // |difference| between the last two panel-doubling estimates.
  double est_error = 0.0;
  int refinements = 0;
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);
// The 8-point rule used by every integrator here.
const GaussRule& gauss_legendre_8();

// Composite 8-point rule with `panels` equal panels on each interval
// [pieces[i], pieces[i+1]]. `abs_integral`, when given, receives the same
// rule applied to |f| (used for the round-off floor).
double composite_gauss_legendre(const std::function<double(double)>& f,
                                std::span<const double> pieces, long long panels,
                                double* abs_integral = nullptr);

// Panel doubling until successive estimates agree to rel_tol (or to an
// absolute round-off floor for results near zero). Throws NoConvergence.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> pieces, const QuadratureConfig& cfg);

// Circulation of the potential along the path. Throws OutsideDomain when the
// path leaves the potential's patch.
QuadratureResult line_integral_detailed(const PotentialSpec& spec, const ParamPath& path,
                                        const QuadratureConfig& cfg = {});
double line_integral(const PotentialSpec& spec, const ParamPath& path,
                     const QuadratureConfig& cfg = {});

// Default finite-difference step 1e-4 * max(1, |p|).
double default_curl_step(const Point3& p);

// Central-difference curl (five-point stencil, error O(h^4)). The stencil ball
// of radius 2h must lie inside the patch, otherwise OutsideDomain.
FieldSample numeric_curl(const PotentialSpec& spec, const Point3& p, double h);
FieldSample numeric_curl(const PotentialSpec& spec, const Point3& p);

using VectorField = std::function<FieldSample(const Point3&)>;

// Flux of the field through the surface along du x dv, by tensor-product
// Gauss-Legendre split at the surface's u/v breaks. A field evaluation that
// raises a DomainError becomes FieldSingularOnSurface.
QuadratureResult surface_flux_detailed(const VectorField& field, const ParamSurface& surf,
                                       const QuadratureConfig& cfg = {});
double surface_flux(const VectorField& field, const ParamSurface& surf,
                    const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------
// Annular Stokes procedure
// ---------------------------------------------------------------------------

enum class StokesCase { kNonIntercepting, kAxisIntercepting };

struct SurfaceParam {
  double u = 0.0;
  double v = 0.0;
};

struct AxisInterception {
  SurfaceParam param;
  Point3 point;
};

// Points where the surface meets the z-axis, one entry per distinct point.
std::vector<AxisInterception> find_axis_interceptions(const ParamSurface& surf);

// Loop on the surface at distance epsilon from the z-axis, around an
// interception. orientation = +1 runs counterclockwise seen from +z, -1
// clockwise. The surface map must extend smoothly slightly past [0,1]^2 near
// the interception (true for the disk and sphere factories).
ParamPath inner_axis_loop(const ParamSurface& surf, const AxisInterception& at, double epsilon,
                          int orientation);

// Radii of the inner loops whose circulations are extrapolated to zero.
inline constexpr double kInnerLoopRadii[3] = {1e-2, 1e-3, 1e-4};

struct InnerLoopSample {
  double epsilon = 0.0;
  double integral = 0.0;
};

struct StokesReport {
  double boundary_integral = 0.0;
  double inner_limit_integral = 0.0;
  double flux = 0.0;
  StokesCase stokes_case = StokesCase::kNonIntercepting;
  int boundary_winding = 0;
  std::optional<Point3> interception;
  std::vector<InnerLoopSample> inner_samples;
  // |quadratic - linear| Richardson estimates of the inner limit.
  double extrapolation_defect = 0.0;
};

// Flux of curl A through the surface, restricted to the potential's patch.
// Without an axis interception this is the boundary circulation; with one,
// the circulation of a vanishing loop around the axis is subtracted.
// Throws MultipleInterceptions for surfaces crossing the axis more than once.
StokesReport stokes_annular(const PotentialSpec& spec, const ParamSurface& surf,
                            const QuadratureConfig& cfg = {});

// Value at zero of the interpolating polynomial through (x_i, y_i).
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

}  // namespace gaugelab
