#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "softgrip/config.hpp"
#include "softgrip/io.hpp"
#include "softgrip/validate.hpp"

using namespace softgrip;

TEST(Config, DefaultsMatchLibraryDefaults) {
  const Config c = config_from_json(json::object());
  const GripperAssembly a;
  EXPECT_EQ(c.assembly.chamber_count, a.chamber_count);
  EXPECT_EQ(c.assembly.material.c1(), 119.0);
  EXPECT_DOUBLE_EQ(c.assembly.geometry.half_angle_0(), a.geometry.half_angle_0());
  EXPECT_DOUBLE_EQ(c.assembly.box.half_angle.hi, a.box.half_angle.hi);
  EXPECT_EQ(c.p_max_kPa, 40.0);
  EXPECT_EQ(c.grasp.capacity.size(), default_capacity_table().size());
  EXPECT_NEAR(aperture_vs_pressure(c.assembly, 20.0), aperture_vs_pressure(a, 20.0), 1e-12);
}

TEST(Config, PartialOverride) {
  const Config c = config_from_json(json::parse(R"({"material": {"c1_kPa": 150},
                                                    "assembly": {"n_chambers": 11}})"));
  EXPECT_EQ(c.assembly.material.c1(), 150.0);
  EXPECT_EQ(c.assembly.chamber_count, 11);
  EXPECT_EQ(c.assembly.geometry.r_outer_0(), 4.56);
}

TEST(Config, RejectsUnknownKeysWithPath) {
  try {
    config_from_json(json::parse(R"({"material": {"c2_kPa": 1}})"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("material.c2_kPa"), std::string::npos);
  }
}

TEST(Config, RejectsWrongTypesAndInvariants) {
  EXPECT_THROW(config_from_json(json::parse(R"({"material": {"c1_kPa": "soft"}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"assembly": {"n_chambers": 2.5}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"solver": {"box": {"theta0_deg": [57.6]}}})")),
               ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"geometry": {"R1_mm": 5.0}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"material": {"c1_kPa": -1}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"workspace": {"p_max_kPa": 60}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"schedule": {"expansion_grip_kPa": 41}})")),
               ConfigError);
  EXPECT_THROW(config_from_json(json::parse("[1, 2]")), ConfigError);
}

TEST(Config, MissingFile) {
  EXPECT_THROW(load_config_file("/nonexistent/softgrip.json"), ConfigError);
}

TEST(ObjectJson, ParsesAndValidates) {
  const auto o = object_from_json(json::parse(R"({"name": "beaker", "shape_class": "cylinder",
      "characteristic_diameter_mm": 70, "mass_kg": 0.3, "has_aperture": true,
      "aperture_diameter_mm": 50})"));
  EXPECT_EQ(o.shape_class, ShapeClass::cylinder);
  ASSERT_TRUE(o.aperture_diameter_mm);
  EXPECT_EQ(*o.aperture_diameter_mm, 50.0);

  EXPECT_THROW(object_from_json(json::parse(R"({"shape_class": "cylinder",
      "characteristic_diameter_mm": 70, "mass_kg": 0.3, "has_aperture": true})")),
               ConfigError);
  EXPECT_THROW(object_from_json(json::parse(R"({"shape_class": "blob",
      "characteristic_diameter_mm": 70, "mass_kg": 0.3})")),
               ConfigError);
  EXPECT_THROW(object_from_json(json::parse(R"({"shape_class": "sphere",
      "characteristic_diameter_mm": 70, "mass_kg": 0.3, "colour": "red"})")),
               ConfigError);
  EXPECT_THROW(object_from_json(json::parse(R"({"shape_class": "sphere",
      "characteristic_diameter_mm": -1, "mass_kg": 0.3})")),
               ConfigError);
}

TEST(ObjectJson, PlanSerialization) {
  GraspPlan p;
  p.mode = GraspMode::suction;
  p.schedule = {{"seal+inflate", 20.0}};
  p.predicted_capacity_N = 30.0000000001;
  p.feasible = true;
  p.rationale = "flat";
  const json j = to_json(p);
  EXPECT_EQ(j["mode"], "suction");
  EXPECT_EQ(j["schedule"][0]["phase"], "seal+inflate");
  EXPECT_EQ(j["predicted_capacity_N"].get<double>(), 30.0);
  EXPECT_TRUE(to_json(GraspPlan{})["mode"].is_null());
}

TEST(Validation, AllChecksPassOnDefaults) {
  const ValidationReport rep = run_validation(GripperAssembly{});
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_NEAR(rep.as_printed_at_identity_kPa, 49.8265, 1e-4);
  EXPECT_EQ(rep.sweep_points, 41u);
  EXPECT_EQ(rep.discrepancy.size(), 5u);
  for (const auto& row : rep.discrepancy) {
    EXPECT_NEAR(row.as_printed_kPa - row.rederived_kPa, row.analytic_gap_kPa, 1e-9);
  }
}
