#include <gtest/gtest.h>

#include "softgrip/grasp.hpp"

using namespace softgrip;

namespace {

ObjectDescriptor object(ShapeClass c, double d, double mass = 0.05) {
  ObjectDescriptor o;
  o.name = "test";
  o.shape_class = c;
  o.characteristic_diameter_mm = d;
  o.mass_kg = mass;
  return o;
}

struct GraspFixture : ::testing::Test {
  GripperAssembly a;
  Workspace ws = workspace(a);
};

}  // namespace

TEST(ShapeNames, RoundTrip) {
  for (const auto& [k, name] : kShapeNames) {
    EXPECT_EQ(parse_shape_class(name), k);
    EXPECT_EQ(to_string(k), name);
  }
  EXPECT_FALSE(parse_shape_class("torus").has_value());
}

TEST_F(GraspFixture, ModeRules) {
  auto beaker = object(ShapeClass::cylinder, 70.0);
  beaker.aperture_diameter_mm = 50.0;
  EXPECT_EQ(select_mode(beaker, a, ws).mode, GraspMode::expansion);

  // Opening too narrow for the folded ring: falls through to the body.
  auto narrow = object(ShapeClass::cylinder, 40.0);
  narrow.aperture_diameter_mm = 20.0;
  EXPECT_EQ(select_mode(narrow, a, ws).mode, GraspMode::contraction);

  EXPECT_EQ(select_mode(object(ShapeClass::flat_plate, 100.0), a, ws).mode, GraspMode::suction);
  auto box = object(ShapeClass::cube, 120.0);
  box.has_flat_sealable_surface = true;
  EXPECT_EQ(select_mode(box, a, ws).mode, GraspMode::suction);

  EXPECT_EQ(select_mode(object(ShapeClass::sphere, 40.0), a, ws).mode, GraspMode::contraction);
  EXPECT_EQ(select_mode(object(ShapeClass::cylinder, 48.0), a, ws).mode,
            GraspMode::contraction);

  const auto big = select_mode(object(ShapeClass::sphere, 200.0), a, ws);
  EXPECT_FALSE(big.mode);
  EXPECT_EQ(big.reason.rfind("exceeds workspace", 0), 0u);
  const auto tiny = select_mode(object(ShapeClass::sphere, 4.0), a, ws);
  EXPECT_FALSE(tiny.mode);
  EXPECT_EQ(tiny.reason.rfind("below minimum aperture", 0), 0u);
}

TEST_F(GraspFixture, ContractionBoundaryIsInclusive) {
  const double hi = contraction_diameter_range(ws, a).hi;
  EXPECT_EQ(select_mode(object(ShapeClass::sphere, hi), a, ws).mode, GraspMode::contraction);
  EXPECT_FALSE(select_mode(object(ShapeClass::sphere, hi + 1e-6), a, ws).mode);
}

TEST(Objects, Validation) {
  EXPECT_THROW(object(ShapeClass::sphere, 0.0).validate(), DomainError);
  EXPECT_THROW(object(ShapeClass::sphere, 10.0, -1.0).validate(), DomainError);
  auto o = object(ShapeClass::sphere, 10.0);
  o.aperture_diameter_mm = -3.0;
  EXPECT_THROW(o.validate(), DomainError);
  EXPECT_NEAR(object(ShapeClass::sphere, 10.0, 1.0).weight_N(), 9.80665, 1e-12);
}

TEST(Schedules, DefaultsAndLimits) {
  const auto c = pressure_schedule(GraspMode::contraction);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].label, "open");
  EXPECT_EQ(c[0].target_kPa, 40.0);
  EXPECT_EQ(c[1].target_kPa, -40.0);
  const auto e = pressure_schedule(GraspMode::expansion);
  EXPECT_EQ(e[0].target_kPa, -40.0);
  EXPECT_EQ(e[1].target_kPa, 40.0);
  const auto s = pressure_schedule(GraspMode::suction);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].target_kPa, 20.0);

  ScheduleSettings bad;
  bad.expansion_grip_kPa = 45.0;
  EXPECT_THROW(pressure_schedule(GraspMode::expansion, bad), DomainError);
}

TEST(Capacity, RisesThenPlateaus) {
  const auto table = default_capacity_table();
  const auto sphere = object(ShapeClass::sphere, 30.0);
  double prev = -1.0;
  for (double p = 0.0; p >= -30.0; p -= 5.0) {
    const double f = contraction_capacity(sphere, p, table, 20.0);
    EXPECT_GT(f, prev);
    prev = f;
  }
  EXPECT_EQ(contraction_capacity(sphere, -30.0, table, 20.0),
            contraction_capacity(sphere, -40.0, table, 20.0));
  EXPECT_THROW(contraction_capacity(sphere, 5.0, table, 20.0), DomainError);
}

TEST(Capacity, OversizedCylinderHoldsAtZeroVacuum) {
  const auto table = default_capacity_table();
  EXPECT_NEAR(contraction_capacity(object(ShapeClass::cylinder, 48.0), 0.0, table, 20.675956),
              20.0, 1e-12);
}

TEST(Capacity, MissingShapeIsUncalibrated) {
  const auto table = default_capacity_table();
  EXPECT_THROW(contraction_capacity(object(ShapeClass::flat_plate, 30.0), -10.0, table, 20.0),
               UncalibratedError);
}

TEST(Suction, IsothermalForceFromVolumes) {
  // Interior at half ambient over 1000 mm^2.
  EXPECT_NEAR(suction_force_from_volumes(101.325, 1000.0, 1.0, 2.0), 50.6625, 1e-12);
  EXPECT_EQ(suction_force_from_volumes(101.325, 1000.0, 2.0, 1.0), 0.0);
  EXPECT_THROW(suction_force_from_volumes(101.325, 1000.0, 0.0, 1.0), DomainError);
}

TEST(Suction, DefaultModelReproducesAnchorForces) {
  const GripperAssembly a;
  const SuctionModel m = make_suction_model(a);
  EXPECT_NEAR(suction_force(m, 0.0, m.peak_lift_volume_mm3), 15.0, 0.01);
  EXPECT_NEAR(suction_force(m, 20.0, m.peak_lift_volume_mm3), 30.0, 0.01);
  double prev = 0.0;
  for (double p = 0.0; p <= 40.0; p += 5.0) {
    const double f = suction_force(m, p, m.peak_lift_volume_mm3);
    EXPECT_GT(f, prev);
    prev = f;
  }
}

TEST(Suction, SealThresholdAndMissingMap) {
  const GripperAssembly a;
  SuctionModel m = make_suction_model(a);
  m.seal_threshold_kPa = 5.0;
  EXPECT_THROW(suction_force(m, 2.0, 100.0), DomainError);
  EXPECT_THROW(suction_force(SuctionModel{}, 2.0, 100.0), DomainError);
}

TEST_F(GraspFixture, PlansStayWithinPressureLimit) {
  const GraspSettings settings;
  auto beaker = object(ShapeClass::cylinder, 70.0, 0.3);
  beaker.aperture_diameter_mm = 50.0;
  for (const auto& o : {beaker, object(ShapeClass::flat_plate, 100.0, 0.012),
                        object(ShapeClass::sphere, 40.0), object(ShapeClass::cylinder, 48.0)}) {
    const GraspPlan plan = plan_grasp(o, a, ws, settings);
    ASSERT_TRUE(plan.mode);
    EXPECT_TRUE(plan.feasible) << plan.rationale;
    for (const auto& ph : plan.schedule) {
      EXPECT_LE(std::abs(ph.target_kPa), kPressureLimit);
    }
  }
}

TEST_F(GraspFixture, HeavyObjectIsInfeasible) {
  const GraspPlan plan = plan_grasp(object(ShapeClass::sphere, 40.0, 50.0), a, ws, GraspSettings{});
  EXPECT_EQ(plan.mode, GraspMode::contraction);
  EXPECT_FALSE(plan.feasible);
  EXPECT_NE(plan.rationale.find("exceeds capacity"), std::string::npos);
}

TEST_F(GraspFixture, UncalibratedShapeIsReported) {
  GraspSettings settings;
  settings.capacity.erase(ShapeClass::sphere);
  const GraspPlan plan = plan_grasp(object(ShapeClass::sphere, 40.0), a, ws, settings);
  EXPECT_FALSE(plan.feasible);
  EXPECT_NE(plan.rationale.find("uncalibrated"), std::string::npos);
}
