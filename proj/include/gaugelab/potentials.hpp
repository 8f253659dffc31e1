#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gaugelab/geometry.hpp"

namespace gaugelab {

// All quantities are in natural units: hbar = c = 1, electron charge e = 1.

class PotentialSpec;

// g (1 - cos theta) / (r sin theta) phi-hat; string along z < 0.
struct DiracStringI {
  double g;
};
// -g (1 + cos theta) / (r sin theta) phi-hat; string along z > 0.
struct DiracStringII {
  double g;
};
// kappa / rho phi-hat, the gradient of kappa * phi.
struct PureGaugeKappa {
  double kappa;
};
// B rho / 2 inside the solenoid, B R^2 / (2 rho) outside, along phi-hat.
struct AbSolenoid {
  double B;
  double R;
};
// kappa / rho phi-hat outside the shell rho = R, zero inside.
struct SolenoidKappa {
  double kappa;
  double R;
};
struct Superposition {
  std::vector<PotentialSpec> members;
};

// One of the catalogued vector potentials together with the patch it is
// defined on. Instances are immutable.
class PotentialSpec {
 public:
  using Kind =
      std::variant<DiracStringI, DiracStringII, PureGaugeKappa, AbSolenoid, SolenoidKappa, Superposition>;

  static PotentialSpec dirac_string_i(double g);
  static PotentialSpec dirac_string_ii(double g);
  static PotentialSpec pure_gauge_kappa(double kappa);
  static PotentialSpec ab_solenoid(double B, double R);
  static PotentialSpec solenoid_kappa(double kappa, double R);
  // Empty member list is the zero potential on all of space.
  static PotentialSpec superposition(std::vector<PotentialSpec> members);

  const Kind& kind() const { return kind_; }
  const PatchSpec& patch() const { return patch_; }
  std::string describe() const;

 private:
  PotentialSpec(Kind kind, PatchSpec patch) : kind_(std::move(kind)), patch_(std::move(patch)) {}

  Kind kind_;
  PatchSpec patch_;
};

struct FieldSample {
  Vec3 value;
  Point3 location;
};

// Cartesian components of the potential at p. Throws OutsideDomain when p is
// within kAxisGuard of the patch's excluded set.
FieldSample eval_potential(const PotentialSpec& spec, const Point3& p);

// Regular monopole field g / r^2 r-hat. Throws OutsideDomain at the origin.
FieldSample eval_monopole_field(double g, const Point3& p);

// B z-hat inside rho < R, zero outside. Throws OnSolenoidShell on rho = R.
FieldSample eval_solenoid_field(double B, double R, const Point3& p);

// Curl of the potential on its patch: the monopole field for the string
// potentials, the solenoid field for the AB potential, zero for the
// kappa potentials. Delta-function terms on excluded sets are not represented.
FieldSample eval_field(const PotentialSpec& spec, const Point3& p);

}  // namespace gaugelab
