#include "gaugelab/potentials.hpp"

#include <cmath>
#include <cstdio>

#include "gaugelab/errors.hpp"

namespace gaugelab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

void require_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("solenoid radius R must be positive");
}

std::string point_text(const Point3& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.9g, %.9g, %.9g)", p.x, p.y, p.z);
  return buf;
}

[[noreturn]] void outside(const Point3& p, const PatchSpec& patch) {
  throw OutsideDomain("point " + point_text(p) + " is outside the patch (" + patch.describe() + ")");
}

// 1 - cos(theta) and 1 + cos(theta) without cancellation near the poles.
double one_minus_cos(double rho, double z, double r) {
  return z > 0.0 ? rho * rho / (r * (r + z)) : (r - z) / r;
}
double one_plus_cos(double rho, double z, double r) {
  return z < 0.0 ? rho * rho / (r * (r - z)) : (r + z) / r;
}

// Signed phi-hat component; every catalogued potential is purely azimuthal.
double azimuthal_magnitude(const PotentialSpec::Kind& kind, const Point3& p, double rho) {
  return std::visit(
      Overloaded{
          [&](const DiracStringI& s) {
            const double r = std::hypot(rho, p.z);
            return s.g * one_minus_cos(rho, p.z, r) / rho;
          },
          [&](const DiracStringII& s) {
            const double r = std::hypot(rho, p.z);
            return -s.g * one_plus_cos(rho, p.z, r) / rho;
          },
          [&](const PureGaugeKappa& s) { return s.kappa / rho; },
          [&](const AbSolenoid& s) {
            return rho < s.R ? 0.5 * s.B * rho : 0.5 * s.B * s.R * s.R / rho;
          },
          [&](const SolenoidKappa& s) { return rho > s.R ? s.kappa / rho : 0.0; },
          [&](const Superposition& s) {
            double sum = 0.0;
            for (const auto& m : s.members) sum += azimuthal_magnitude(m.kind(), p, rho);
            return sum;
          },
      },
      kind);
}

}  // namespace

PotentialSpec PotentialSpec::dirac_string_i(double g) {
  require_finite(g, "g");
  return {DiracStringI{g}, PatchSpec::neg_z_half_axis()};
}

PotentialSpec PotentialSpec::dirac_string_ii(double g) {
  require_finite(g, "g");
  return {DiracStringII{g}, PatchSpec::pos_z_half_axis()};
}

PotentialSpec PotentialSpec::pure_gauge_kappa(double kappa) {
  require_finite(kappa, "kappa");
  return {PureGaugeKappa{kappa}, PatchSpec::z_axis()};
}

PotentialSpec PotentialSpec::ab_solenoid(double B, double R) {
  require_finite(B, "B");
  require_radius(R);
  return {AbSolenoid{B, R}, PatchSpec::cylinder_shell(R)};
}

PotentialSpec PotentialSpec::solenoid_kappa(double kappa, double R) {
  require_finite(kappa, "kappa");
  require_radius(R);
  return {SolenoidKappa{kappa, R}, PatchSpec::cylinder_shell(R)};
}

PotentialSpec PotentialSpec::superposition(std::vector<PotentialSpec> members) {
  PatchSpec patch;
  for (const auto& m : members) patch = PatchSpec::intersect(patch, m.patch());
  return {Superposition{std::move(members)}, std::move(patch)};
}

std::string PotentialSpec::describe() const {
  char buf[128];
  return std::visit(
      Overloaded{
          [&](const DiracStringI& s) {
            std::snprintf(buf, sizeof buf, "dirac-string-i(g=%.9g)", s.g);
            return std::string(buf);
          },
          [&](const DiracStringII& s) {
            std::snprintf(buf, sizeof buf, "dirac-string-ii(g=%.9g)", s.g);
            return std::string(buf);
          },
          [&](const PureGaugeKappa& s) {
            std::snprintf(buf, sizeof buf, "kappa(kappa=%.9g)", s.kappa);
            return std::string(buf);
          },
          [&](const AbSolenoid& s) {
            std::snprintf(buf, sizeof buf, "ab-solenoid(B=%.9g, R=%.9g)", s.B, s.R);
            return std::string(buf);
          },
          [&](const SolenoidKappa& s) {
            std::snprintf(buf, sizeof buf, "solenoid-kappa(kappa=%.9g, R=%.9g)", s.kappa, s.R);
            return std::string(buf);
          },
          [&](const Superposition& s) {
            std::string out = "superposition[";
            for (size_t i = 0; i < s.members.size(); ++i) {
              if (i) out += ", ";
              out += s.members[i].describe();
            }
            return out + "]";
          },
      },
      kind_);
}

FieldSample eval_potential(const PotentialSpec& spec, const Point3& p) {
  if (!is_finite(p)) throw InvalidArgument("evaluation point is not finite");
  if (!spec.patch().contains(p)) outside(p, spec.patch());
  const double rho = std::hypot(p.x, p.y);
  // Every catalogued potential vanishes on the axis where it is defined there.
  if (rho == 0.0) return {{0.0, 0.0, 0.0}, p};
  const double a = azimuthal_magnitude(spec.kind(), p, rho);
  return {{-a * p.y / rho, a * p.x / rho, 0.0}, p};
}

FieldSample eval_monopole_field(double g, const Point3& p) {
  const double r = norm(p);
  if (!(r > kAxisGuard)) throw OutsideDomain("monopole field is undefined at the origin");
  const double s = g / (r * r * r);
  return {s * p, p};
}

FieldSample eval_solenoid_field(double B, double R, const Point3& p) {
  require_radius(R);
  const double rho = std::hypot(p.x, p.y);
  if (std::abs(rho - R) <= kAxisGuard) {
    throw OnSolenoidShell("solenoid field is undefined on the shell rho = R at " + point_text(p));
  }
  return {rho < R ? Vec3{0.0, 0.0, B} : Vec3{}, p};
}

FieldSample eval_field(const PotentialSpec& spec, const Point3& p) {
  if (!spec.patch().contains(p)) outside(p, spec.patch());
  return std::visit(
      Overloaded{
          [&](const DiracStringI& s) { return eval_monopole_field(s.g, p); },
          [&](const DiracStringII& s) { return eval_monopole_field(s.g, p); },
          [&](const PureGaugeKappa&) { return FieldSample{{}, p}; },
          [&](const AbSolenoid& s) { return eval_solenoid_field(s.B, s.R, p); },
          [&](const SolenoidKappa&) { return FieldSample{{}, p}; },
          [&](const Superposition& s) {
            FieldSample out{{}, p};
            for (const auto& m : s.members) out.value += eval_field(m, p).value;
            return out;
          },
      },
      spec.kind());
}

}  // namespace gaugelab
