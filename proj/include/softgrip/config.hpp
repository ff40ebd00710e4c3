#pragma once

// JSON configuration. Every key has an embedded default; a user file only
// overrides what it names. Unknown keys and wrong types are rejected with
// the offending path.

#include <algorithm>
#include <fstream>
#include <string>

#include "json.hpp"

#include "softgrip/chamber.hpp"
#include "softgrip/errors.hpp"
#include "softgrip/grasp.hpp"
#include "softgrip/gripper.hpp"

namespace softgrip {

using json = nlohmann::json;

struct Config {
  GripperAssembly assembly{};
  GraspSettings grasp{};
  double p_max_kPa = 40.0;
  double inverse_tol_mm = 1e-9;

  /// Suction model bound to this configuration's forward map.
  SuctionModel suction_model() const { return make_suction_model(assembly, grasp.suction); }
};

inline json default_config_json() {
  json capacity = json::object();
  for (const auto& [shape, e] : default_capacity_table()) {
    capacity[std::string(to_string(shape))] = {{"slope_N_per_kPa", e.slope_N_per_kPa},
                                               {"plateau_N", e.plateau_N},
                                               {"threshold_kPa", e.threshold_kPa},
                                               {"prestretch_N", e.prestretch_N}};
  }
  return {
      {"geometry", {{"R0_mm", 4.56}, {"R1_mm", 3.0}, {"Theta0_deg", 57.6}}},
      {"material", {{"c1_kPa", 119.0}}},
      {"assembly",
       {{"n_chambers", 22},
        {"folded_aperture_mm", 5.0},
        {"stretch_margin_mm", 8.65},
        {"wall_thickness_mm", 10.0}}},
      {"solver",
       {{"box",
         {{"r_outer_mm", {4.56, 5.0}}, {"r_inner_mm", {3.0, 3.8}}, {"theta0_deg", {57.6, 80.0}}}},
        {"tol", {{"angle_rad", 1e-10}, {"quadrature_rel", 1e-9}, {"inverse_mm", 1e-9}}}}},
      {"workspace", {{"p_max_kPa", 40.0}}},
      {"suction",
       {{"ambient_kPa", kStandardAtmosphere},
        {"A_eff_mm2", 2082.14},
        {"h_eff_mm", 19.456},
        {"seal_threshold_kPa", 0.0},
        {"peak_lift_volume_mm3", 2000.0}}},
      {"capacity", capacity},
      {"expansion", {{"slope_N_per_kPa", 0.5}}},
      {"schedule",
       {{"contraction_open_kPa", 40.0},
        {"contraction_hold_kPa", -40.0},
        {"expansion_insert_kPa", -40.0},
        {"expansion_grip_kPa", 40.0},
        {"suction_inflate_kPa", 20.0}}},
  };
}

namespace detail {

inline void merge_strict(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) throw ConfigError(path + ": expected an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key_path = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError(key_path + ": unknown key");
    json& slot = base[it.key()];
    const json& val = it.value();
    if (slot.is_object()) {
      merge_strict(slot, val, key_path);
    } else if (slot.is_array()) {
      if (!val.is_array() || val.size() != slot.size() ||
          !std::all_of(val.begin(), val.end(), [](const json& v) { return v.is_number(); })) {
        throw ConfigError(key_path + ": expected an array of " + std::to_string(slot.size()) +
                          " numbers");
      }
      slot = val;
    } else if (slot.is_number_integer()) {
      if (!val.is_number_integer()) throw ConfigError(key_path + ": expected an integer");
      slot = val;
    } else if (slot.is_number()) {
      if (!val.is_number()) throw ConfigError(key_path + ": expected a number");
      slot = val;
    } else {
      slot = val;
    }
  }
}

inline Interval interval_of(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace detail

/// Builds a validated Config from a (possibly partial) JSON document.
inline Config config_from_json(const json& user) {
  json j = default_config_json();
  detail::merge_strict(j, user, "");
  Config c;
  try {
    const auto& g = j.at("geometry");
    c.assembly.geometry = ChamberGeometry::from_degrees(
        g.at("R0_mm").get<double>(), g.at("R1_mm").get<double>(), g.at("Theta0_deg").get<double>());
    c.assembly.material = HyperelasticMaterial(j.at("material").at("c1_kPa").get<double>());

    const auto& as = j.at("assembly");
    c.assembly.chamber_count = as.at("n_chambers").get<int>();
    c.assembly.folded_aperture_mm = as.at("folded_aperture_mm").get<double>();
    c.assembly.stretch_margin_mm = as.at("stretch_margin_mm").get<double>();
    c.assembly.wall_thickness_mm = as.at("wall_thickness_mm").get<double>();

    const auto& box = j.at("solver").at("box");
    c.assembly.box.r_outer = detail::interval_of(box.at("r_outer_mm"));
    c.assembly.box.r_inner = detail::interval_of(box.at("r_inner_mm"));
    const Interval deg = detail::interval_of(box.at("theta0_deg"));
    c.assembly.box.half_angle = {deg_to_rad(deg.lo), deg_to_rad(deg.hi)};
    const auto& tol = j.at("solver").at("tol");
    c.assembly.solver.angle_tol = tol.at("angle_rad").get<double>();
    c.assembly.quadrature_tol = tol.at("quadrature_rel").get<double>();
    c.inverse_tol_mm = tol.at("inverse_mm").get<double>();
    if (!(c.inverse_tol_mm > 0.0)) throw DomainError("solver.tol.inverse_mm must be > 0");
    c.assembly.validate();

    c.p_max_kPa = j.at("workspace").at("p_max_kPa").get<double>();
    if (!(c.p_max_kPa >= 0.0 && c.p_max_kPa <= kPressureLimit)) {
      throw DomainError("workspace.p_max_kPa must lie in [0, 40]");
    }

    const auto& su = j.at("suction");
    c.grasp.suction.ambient_kPa = su.at("ambient_kPa").get<double>();
    c.grasp.suction.seal_area_mm2 = su.at("A_eff_mm2").get<double>();
    c.grasp.suction.effective_height_mm = su.at("h_eff_mm").get<double>();
    c.grasp.suction.seal_threshold_kPa = su.at("seal_threshold_kPa").get<double>();
    c.grasp.suction.peak_lift_volume_mm3 = su.at("peak_lift_volume_mm3").get<double>();
    c.grasp.suction.validate_parameters();

    c.grasp.capacity.clear();
    for (const auto& [name, e] : j.at("capacity").items()) {
      const auto shape = parse_shape_class(name);
      if (!shape) throw ConfigError("capacity." + name + ": unknown shape class");
      CapacityEntry entry{e.at("slope_N_per_kPa").get<double>(), e.at("plateau_N").get<double>(),
                          e.at("threshold_kPa").get<double>(), e.at("prestretch_N").get<double>()};
      entry.validate();
      c.grasp.capacity[*shape] = entry;
    }
    c.grasp.expansion.slope_N_per_kPa = j.at("expansion").at("slope_N_per_kPa").get<double>();
    if (!(c.grasp.expansion.slope_N_per_kPa >= 0.0)) {
      throw DomainError("expansion.slope_N_per_kPa must be >= 0");
    }

    const auto& sc = j.at("schedule");
    c.grasp.schedule = {sc.at("contraction_open_kPa").get<double>(),
                        sc.at("contraction_hold_kPa").get<double>(),
                        sc.at("expansion_insert_kPa").get<double>(),
                        sc.at("expansion_grip_kPa").get<double>(),
                        sc.at("suction_inflate_kPa").get<double>()};
    c.grasp.schedule.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invariant violation: ") + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("schema error: ") + e.what());
  }
  return c;
}

inline Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

}  // namespace softgrip
