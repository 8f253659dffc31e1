#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gaugelab/calculus.hpp"
#include "gaugelab/gauge.hpp"
#include "gaugelab/geometry.hpp"
#include "gaugelab/potentials.hpp"

namespace gaugelab {

// Infinite solenoid along the z-axis.
struct SolenoidConfig {
  double B = 0.0;
  double R = 1.0;

  void validate() const;
};

// B pi R^2.
double enclosed_flux(const SolenoidConfig& cfg);

// Two semiclassical paths from a source to each screen point, one passing on
// either side of the solenoid. The closed loop (upper then reversed lower)
// must wind once around the z-axis and stay outside the shell.
struct TwoPathSetup {
  using PathBuilder = std::function<ParamPath(const Point3&)>;

  Point3 source;
  std::vector<Point3> screen_points;
  PathBuilder upper_path;
  PathBuilder lower_path;
  // Free-propagation phase difference at a screen point.
  std::function<double(const Point3&)> baseline_phase;
  // Coordinate reported for a screen point in the pattern.
  std::function<double(const Point3&)> screen_coordinate;
};

namespace defaults {
inline constexpr double kSolenoidRadius = 0.1;
inline constexpr double kSourceX = -5.0;
inline constexpr double kScreenX = 5.0;
inline constexpr double kScreenHalfWidth = 3.0;
inline constexpr int kScreenPoints = 601;
inline constexpr double kWaveNumber = 50.0;
inline constexpr double kSlitSeparation = 1.0;
inline constexpr double kScreenDistance = 10.0;
}  // namespace defaults

// Solenoid of radius 0.1 carrying flux pi (B = 1 / R^2).
SolenoidConfig default_solenoid();

// Half circle from `from` to `to` in the z = from.z plane, bulging towards
// +90 degrees of the chord direction when `left` is true.
ParamPath semicircular_path(const Point3& from, const Point3& to, bool left);

// Source at (-5, 0, 0), screen x = 5 with y in [-3, 3], semicircular paths,
// baseline phase k y d / L.
TwoPathSetup default_two_path_setup(int screen_points = defaults::kScreenPoints);

// Checks the winding and exterior-path invariants for every screen point.
void validate_setup(const TwoPathSetup& setup, double solenoid_radius);

// q (circulation along upper - circulation along lower).
double ab_relative_phase(ChargeSpec q, const PotentialSpec& spec, const TwoPathSetup& setup,
                         std::size_t screen_index, const QuadratureConfig& cfg = {});

struct InterferencePattern {
  std::vector<double> positions;
  std::vector<double> intensities;
};

// Intensity 1 + cos(baseline + AB phase) at every screen point. Screen points
// are split across `threads` workers; results do not depend on the count.
InterferencePattern interference_pattern(ChargeSpec q, const PotentialSpec& spec,
                                         const TwoPathSetup& setup, const QuadratureConfig& cfg = {},
                                         unsigned threads = 1);

struct InvarianceReport {
  double max_intensity_deviation = 0.0;
  std::size_t worst_index = 0;
  bool quantized = false;
  QuantizationReport condition;
};

// Compares the AB pattern with and without the kappa potential added outside
// the solenoid.
InvarianceReport kappa_invariance_experiment(ChargeSpec q, const SolenoidConfig& cfg,
                                             const TwoPathSetup& setup, double kappa,
                                             const QuadratureConfig& quad = {},
                                             unsigned threads = 1);

}  // namespace gaugelab
