#pragma once

// JSON encodings for object descriptors, grasp plans and fit reports.
// Numbers are rounded to 9 significant digits on output.

#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

#include "softgrip/calibration.hpp"
#include "softgrip/errors.hpp"
#include "softgrip/grasp.hpp"
#include "softgrip/numerics.hpp"

namespace softgrip {

using json = nlohmann::json;

inline double sig9(double v) { return std::strtod(numerics::format_g(v, 9).c_str(), nullptr); }

/// object.json:
///   name (string, optional), shape_class (string), characteristic_diameter_mm,
///   mass_kg, has_aperture (bool), aperture_diameter_mm (iff has_aperture),
///   has_flat_sealable_surface (bool, optional), orientation_note (optional)
inline ObjectDescriptor object_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("object: expected a JSON object");
  static const char* kKnown[] = {"name",    "shape_class",  "characteristic_diameter_mm",
                                 "mass_kg", "has_aperture", "aperture_diameter_mm",
                                 "has_flat_sealable_surface", "orientation_note"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(std::begin(kKnown), std::end(kKnown), it.key()) == std::end(kKnown)) {
      throw ConfigError("object." + it.key() + ": unknown key");
    }
  }
  ObjectDescriptor o;
  try {
    o.name = j.value("name", std::string{});
    const std::string shape = j.at("shape_class").get<std::string>();
    const auto sc = parse_shape_class(shape);
    if (!sc) throw ConfigError("object.shape_class: unknown shape class '" + shape + "'");
    o.shape_class = *sc;
    o.characteristic_diameter_mm = j.at("characteristic_diameter_mm").get<double>();
    o.mass_kg = j.at("mass_kg").get<double>();
    const bool has_aperture = j.value("has_aperture", false);
    if (has_aperture != j.contains("aperture_diameter_mm")) {
      throw ConfigError("object: aperture_diameter_mm must be given iff has_aperture is true");
    }
    if (has_aperture) o.aperture_diameter_mm = j.at("aperture_diameter_mm").get<double>();
    o.has_flat_sealable_surface = j.value("has_flat_sealable_surface", false);
    o.orientation_note = j.value("orientation_note", std::string{});
    o.validate();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("object schema error: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("object invariant violation: ") + e.what());
  }
  return o;
}

inline ObjectDescriptor load_object_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open object file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("object '" + path + "': " + e.what());
  }
  return object_from_json(j);
}

inline json to_json(const GraspPlan& p) {
  json schedule = json::array();
  for (const auto& ph : p.schedule) {
    schedule.push_back({{"phase", ph.label}, {"target_kPa", sig9(ph.target_kPa)}});
  }
  return {{"mode", p.mode ? json(std::string(to_string(*p.mode))) : json(nullptr)},
          {"schedule", schedule},
          {"predicted_capacity_N", sig9(p.predicted_capacity_N)},
          {"feasible", p.feasible},
          {"rationale", p.rationale}};
}

inline json to_json(const FitReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = sig9(v);
  json pts = json::array();
  for (const auto& pt : r.per_point) {
    pts.push_back({{"x", sig9(pt.x)},
                   {"measured", sig9(pt.measured)},
                   {"model", sig9(pt.model)},
                   {"error", sig9(pt.model - pt.measured)}});
  }
  json out{{"value", params},
           {"residual_norm", sig9(r.residual_norm)},
           {"per_point", pts},
           {"at_bound", r.at_bound},
           {"degenerate", r.degenerate}};
  out["parameter"] = r.parameters.size() == 1 ? json(r.parameters.front().first)
                                              : json([&] {
                                                  json names = json::array();
                                                  for (const auto& [k, v] : r.parameters) names.push_back(k);
                                                  return names;
                                                }());
  return out;
}

}  // namespace softgrip
