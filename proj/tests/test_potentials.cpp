#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gaugelab/errors.hpp"
#include "gaugelab/potentials.hpp"
#include "support.hpp"

namespace gaugelab {
namespace {

using testing::Rng;

// Magnitude along phi-hat, after checking there is no other component.
double azimuthal(const Vec3& v, const Point3& p) {
  const Vec3 phi = azimuthal_unit(p);
  const double a = dot(v, phi);
  EXPECT_LE(norm(v - a * phi), 1e-14 * std::max(1.0, std::abs(a)));
  return a;
}

TEST(Potentials, Examples) {
  const Point3 equator = from_spherical(1, kPi / 2, 0.4);
  EXPECT_NEAR(azimuthal(eval_potential(PotentialSpec::dirac_string_i(1), equator).value, equator),
              1.0, 1e-15);

  const Point3 p2 = from_cylindrical(2, 1.1, -3);
  EXPECT_NEAR(azimuthal(eval_potential(PotentialSpec::pure_gauge_kappa(3), p2).value, p2), 1.5,
              1e-15);

  const auto ab = PotentialSpec::ab_solenoid(2, 1);
  const Point3 in = from_cylindrical(0.5, 2.0, 1);
  const Point3 out = from_cylindrical(2, 5.0, -1);
  EXPECT_NEAR(azimuthal(eval_potential(ab, in).value, in), 0.5, 1e-15);
  EXPECT_NEAR(azimuthal(eval_potential(ab, out).value, out), 0.5, 1e-15);

  EXPECT_THROW(eval_potential(PotentialSpec::dirac_string_i(1), {0, 0, -1}), OutsideDomain);
}

TEST(Potentials, StringPotentialsAgreeWithSphericalForm) {
  Rng rng;
  for (int i = 0; i < 1000; ++i) {
    const Point3 p = rng.cylindrical(0.05, 3, 3);
    const double g = rng.uniform(-2, 2);
    const Vec3 a = eval_potential(PotentialSpec::dirac_string_i(g), p).value;
    const Vec3 b = eval_potential(PotentialSpec::dirac_string_ii(g), p).value;
    ASSERT_LT(norm(a - testing::ref_string_i(g, p)), 1e-10 * (1 + norm(a)));
    ASSERT_LT(norm(b - testing::ref_string_ii(g, p)), 1e-10 * (1 + norm(b)));
  }
}

TEST(Potentials, StringPotentialsRegularOnTheirGoodHalfAxis) {
  // A^I vanishes on the +z axis and A^II on the -z axis.
  const auto a = eval_potential(PotentialSpec::dirac_string_i(1), {0, 0, 2});
  EXPECT_EQ(norm(a.value), 0.0);
  const auto b = eval_potential(PotentialSpec::dirac_string_ii(1), {0, 0, -2});
  EXPECT_EQ(norm(b.value), 0.0);
  // Near the good axis the value stays small instead of cancelling badly.
  const Vec3 near = eval_potential(PotentialSpec::dirac_string_i(1), {1e-7, 0, 1}).value;
  EXPECT_NEAR(near.y, 0.5e-7, 1e-20);
  EXPECT_THROW(eval_potential(PotentialSpec::dirac_string_ii(1), {0, 0, 2}), OutsideDomain);
  EXPECT_THROW(eval_potential(PotentialSpec::dirac_string_i(1), {0, 0, 0}), OutsideDomain);
}

TEST(Potentials, KappaPotentials) {
  EXPECT_THROW(eval_potential(PotentialSpec::pure_gauge_kappa(1), {0, 0, 5}), OutsideDomain);
  const auto sk = PotentialSpec::solenoid_kappa(2, 1);
  EXPECT_EQ(norm(eval_potential(sk, {0.5, 0, 0}).value), 0.0);
  EXPECT_EQ(norm(eval_potential(sk, {0, 0, 0}).value), 0.0);
  EXPECT_NEAR(eval_potential(sk, {0, 4, 0}).value.x, -0.5, 1e-15);
  EXPECT_THROW(eval_potential(sk, {0, 1, 0}), OutsideDomain);
  // AB potential is regular on the axis.
  EXPECT_EQ(norm(eval_potential(PotentialSpec::ab_solenoid(2, 1), {0, 0, 3}).value), 0.0);
  EXPECT_THROW(eval_potential(PotentialSpec::ab_solenoid(2, 1), {1, 0, 0}), OutsideDomain);
}

TEST(Potentials, ParameterValidation) {
  EXPECT_THROW(PotentialSpec::ab_solenoid(1, 0), InvalidArgument);
  EXPECT_THROW(PotentialSpec::ab_solenoid(1, -1), InvalidArgument);
  EXPECT_THROW(PotentialSpec::solenoid_kappa(1, 0), InvalidArgument);
  EXPECT_THROW(PotentialSpec::pure_gauge_kappa(std::nan("")), InvalidArgument);
  EXPECT_THROW(PotentialSpec::dirac_string_i(INFINITY), InvalidArgument);
}

TEST(Potentials, PatchesFollowKinds) {
  EXPECT_EQ(PotentialSpec::dirac_string_i(1).patch(), PatchSpec::neg_z_half_axis());
  EXPECT_EQ(PotentialSpec::dirac_string_ii(1).patch(), PatchSpec::pos_z_half_axis());
  EXPECT_EQ(PotentialSpec::pure_gauge_kappa(1).patch(), PatchSpec::z_axis());
  EXPECT_EQ(PotentialSpec::ab_solenoid(1, 2).patch(), PatchSpec::cylinder_shell(2));
  EXPECT_EQ(PotentialSpec::solenoid_kappa(1, 2).patch(), PatchSpec::cylinder_shell(2));
  const auto sup = PotentialSpec::superposition(
      {PotentialSpec::ab_solenoid(1, 2), PotentialSpec::pure_gauge_kappa(1)});
  EXPECT_FALSE(sup.patch().contains({0, 0, 1}));
  EXPECT_FALSE(sup.patch().contains({2, 0, 1}));
  EXPECT_TRUE(sup.patch().contains({1, 0, 1}));
  EXPECT_TRUE(PotentialSpec::superposition({}).patch().contains({0, 0, 0}));
}

TEST(Potentials, OnlyAzimuthalComponents) {
  Rng rng;
  const std::vector<PotentialSpec> specs = {
      PotentialSpec::dirac_string_i(0.7),  PotentialSpec::dirac_string_ii(-1.3),
      PotentialSpec::pure_gauge_kappa(2),  PotentialSpec::ab_solenoid(3, 1),
      PotentialSpec::solenoid_kappa(1, 1), PotentialSpec::superposition({PotentialSpec::ab_solenoid(3, 1),
                                                                        PotentialSpec::pure_gauge_kappa(-1)})};
  for (int i = 0; i < 10000; ++i) {
    const Point3 p = rng.cylindrical(1e-3, 5, 5);
    const auto& spec = specs[i % specs.size()];
    if (!spec.patch().contains(p)) continue;
    const Vec3 v = eval_potential(spec, p).value;
    const Vec3 phi = azimuthal_unit(p);
    const Vec3 rho_hat{phi.y, -phi.x, 0};
    ASSERT_EQ(v.z, 0.0) << i;
    ASSERT_LE(std::abs(dot(v, rho_hat)), 1e-14 * norm(v) + 1e-300) << i;
  }
}

TEST(Potentials, SuperpositionIsMemberSum) {
  Rng rng;
  const auto a = PotentialSpec::ab_solenoid(1.7, 0.8);
  const auto b = PotentialSpec::solenoid_kappa(-0.4, 1.3);
  const auto c = PotentialSpec::dirac_string_i(0.9);
  const auto sup = PotentialSpec::superposition({a, b, c});
  for (int i = 0; i < 2000; ++i) {
    const Point3 p = rng.in_box(3);
    if (!sup.patch().contains(p)) continue;
    const Vec3 sum = eval_potential(a, p).value + eval_potential(b, p).value + eval_potential(c, p).value;
    ASSERT_LE(norm(eval_potential(sup, p).value - sum), 1e-14 * std::max(1.0, norm(sum))) << i;
  }
}

TEST(Potentials, LinearInStrength) {
  Rng rng;
  for (int i = 0; i < 1000; ++i) {
    const Point3 p = rng.cylindrical(0.01, 4, 4);
    const double s = rng.uniform(-3, 3);
    auto twice = [&](const PotentialSpec& one, const PotentialSpec& two) {
      const Vec3 a = eval_potential(one, p).value;
      const Vec3 b = eval_potential(two, p).value;
      ASSERT_LE(norm(b - 2.0 * a), 1e-14 * norm(b) + 1e-300) << i;
    };
    twice(PotentialSpec::pure_gauge_kappa(s), PotentialSpec::pure_gauge_kappa(2 * s));
    twice(PotentialSpec::dirac_string_i(s), PotentialSpec::dirac_string_i(2 * s));
    twice(PotentialSpec::dirac_string_ii(s), PotentialSpec::dirac_string_ii(2 * s));
  }
}

TEST(Fields, MonopoleExamples) {
  const Vec3 a = eval_monopole_field(1, {2, 0, 0}).value;
  EXPECT_NEAR(a.x, 0.25, 1e-16);
  EXPECT_EQ(a.y, 0.0);
  EXPECT_EQ(a.z, 0.0);
  const Vec3 b = eval_monopole_field(1, {0, 0, 3}).value;
  EXPECT_NEAR(b.z, 1.0 / 9.0, 1e-16);
  EXPECT_EQ(norm(eval_monopole_field(0, {0.3, -2, 1}).value), 0.0);
  EXPECT_THROW(eval_monopole_field(1, {0, 0, 0}), OutsideDomain);
}

TEST(Fields, SolenoidExamples) {
  const Vec3 in = eval_solenoid_field(2, 1, {0.5, 0, 0}).value;
  EXPECT_EQ(in.x, 0.0);
  EXPECT_EQ(in.y, 0.0);
  EXPECT_EQ(in.z, 2.0);
  EXPECT_EQ(norm(eval_solenoid_field(2, 1, {3, 0, 0}).value), 0.0);
  EXPECT_THROW(eval_solenoid_field(2, 1, {1, 0, 0}), OnSolenoidShell);
  EXPECT_THROW(eval_solenoid_field(2, 1, {0, 1 + 5e-10, 7}), OnSolenoidShell);
  EXPECT_EQ(eval_solenoid_field(2, 1, {0, 0, 0}).value.z, 2.0);
}

TEST(Fields, AnalyticCurlPerKind) {
  const Point3 p{0.3, 0.4, 0.5};
  EXPECT_LT(norm(eval_field(PotentialSpec::dirac_string_ii(2), p).value - testing::ref_monopole(2, p)),
            1e-14);
  EXPECT_EQ(norm(eval_field(PotentialSpec::pure_gauge_kappa(2), p).value), 0.0);
  EXPECT_EQ(eval_field(PotentialSpec::ab_solenoid(2, 1), p).value.z, 2.0);
  EXPECT_EQ(norm(eval_field(PotentialSpec::solenoid_kappa(2, 0.1), p).value), 0.0);
  EXPECT_THROW(eval_field(PotentialSpec::pure_gauge_kappa(2), {0, 0, 1}), OutsideDomain);
}

}  // namespace
}  // namespace gaugelab
