#pragma once

// Grasp planning: mode selection, pressure schedules, empirical holding
// capacity and the expansion-driven suction estimate.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softgrip/errors.hpp"
#include "softgrip/gripper.hpp"
#include "softgrip/numerics.hpp"

namespace softgrip {

inline constexpr double kStandardGravity = 9.80665;     // m/s^2
inline constexpr double kPressureLimit = 40.0;          // |p| bound for plans, kPa
inline constexpr double kStandardAtmosphere = 101.325;  // kPa

enum class ShapeClass { cylinder, sphere, cone, pyramid, cube, irregular, flat_plate };

inline constexpr std::array<std::pair<ShapeClass, std::string_view>, 7> kShapeNames{{
    {ShapeClass::cylinder, "cylinder"},
    {ShapeClass::sphere, "sphere"},
    {ShapeClass::cone, "cone"},
    {ShapeClass::pyramid, "pyramid"},
    {ShapeClass::cube, "cube"},
    {ShapeClass::irregular, "irregular"},
    {ShapeClass::flat_plate, "flat_plate"},
}};

inline std::string_view to_string(ShapeClass s) {
  for (const auto& [k, name] : kShapeNames) {
    if (k == s) return name;
  }
  return "unknown";
}

inline std::optional<ShapeClass> parse_shape_class(std::string_view name) {
  for (const auto& [k, n] : kShapeNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

enum class GraspMode { contraction, expansion, suction };

inline std::string_view to_string(GraspMode m) {
  switch (m) {
    case GraspMode::contraction: return "contraction";
    case GraspMode::expansion: return "expansion";
    case GraspMode::suction: return "suction";
  }
  return "unknown";
}

struct ObjectDescriptor {
  std::string name;
  ShapeClass shape_class = ShapeClass::irregular;
  double characteristic_diameter_mm = 0.0;
  double mass_kg = 0.0;
  /// Present iff the object has an opening the gripper can be inserted in.
  std::optional<double> aperture_diameter_mm;
  bool has_flat_sealable_surface = false;
  std::string orientation_note;

  bool has_aperture() const { return aperture_diameter_mm.has_value(); }

  void validate() const {
    if (!(characteristic_diameter_mm > 0.0)) {
      throw DomainError("object characteristic_diameter_mm must be > 0");
    }
    if (!(mass_kg >= 0.0)) throw DomainError("object mass_kg must be >= 0");
    if (aperture_diameter_mm && !(*aperture_diameter_mm > 0.0)) {
      throw DomainError("object aperture_diameter_mm must be > 0");
    }
  }

  double weight_N() const { return mass_kg * kStandardGravity; }
};

// ---------------------------------------------------------------------------
// Mode selection

struct ModeSelection {
  std::optional<GraspMode> mode;  // empty when infeasible
  std::string reason;
};

/// First matching rule wins: an insertable opening selects expansion, a flat
/// sealable face selects suction, a body inside the contraction range
/// selects contraction.
inline ModeSelection select_mode(const ObjectDescriptor& obj, const GripperAssembly& a,
                                 const Workspace& ws) {
  using numerics::format_g;
  obj.validate();
  const Interval expand = expansion_diameter_range(ws, a);
  const Interval contract = contraction_diameter_range(ws, a);
  if (obj.has_aperture() && expand.contains(*obj.aperture_diameter_mm)) {
    return {GraspMode::expansion, "opening of " + format_g(*obj.aperture_diameter_mm) +
                                      " mm within expansion range [" + format_g(expand.lo) +
                                      ", " + format_g(expand.hi) + "] mm"};
  }
  if (obj.shape_class == ShapeClass::flat_plate || obj.has_flat_sealable_surface) {
    return {GraspMode::suction, "flat sealable surface"};
  }
  const double d = obj.characteristic_diameter_mm;
  if (contract.contains(d)) {
    return {GraspMode::contraction, "diameter " + format_g(d) +
                                        " mm within contraction range [" +
                                        format_g(contract.lo) + ", " + format_g(contract.hi) +
                                        "] mm"};
  }
  if (d > contract.hi) {
    return {std::nullopt, "exceeds workspace: diameter " + format_g(d) +
                              " mm > contraction limit " + format_g(contract.hi) + " mm"};
  }
  return {std::nullopt, "below minimum aperture: diameter " + format_g(d) + " mm < " +
                            format_g(contract.lo) + " mm"};
}

// ---------------------------------------------------------------------------
// Schedules

struct SchedulePhase {
  std::string label;
  double target_kPa = 0.0;
};

struct ScheduleSettings {
  double contraction_open_kPa = 40.0;
  double contraction_hold_kPa = -40.0;
  double expansion_insert_kPa = -40.0;
  double expansion_grip_kPa = 40.0;
  double suction_inflate_kPa = 20.0;

  void validate() const {
    for (double v : {contraction_open_kPa, contraction_hold_kPa, expansion_insert_kPa,
                     expansion_grip_kPa, suction_inflate_kPa}) {
      if (!(std::abs(v) <= kPressureLimit)) {
        throw DomainError("schedule pressures must lie in [-40, 40] kPa");
      }
    }
    if (contraction_hold_kPa > 0.0) throw DomainError("contraction hold must be <= 0 kPa");
  }
};

inline std::vector<SchedulePhase> pressure_schedule(GraspMode mode,
                                                    const ScheduleSettings& s = {}) {
  s.validate();
  switch (mode) {
    case GraspMode::contraction:
      return {{"open", s.contraction_open_kPa}, {"envelop", s.contraction_hold_kPa}};
    case GraspMode::expansion:
      return {{"insert", s.expansion_insert_kPa}, {"expand", s.expansion_grip_kPa}};
    case GraspMode::suction:
      return {{"seal+inflate", s.suction_inflate_kPa}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Empirical holding capacity

/// Per-shape-class contraction capacity. Force rises linearly with vacuum
/// until the walls buckle at the threshold; prestretch_N is the force an
/// oversized object already gets at 0 kPa.
struct CapacityEntry {
  double slope_N_per_kPa = 0.0;
  double plateau_N = 0.0;
  double threshold_kPa = 30.0;
  double prestretch_N = 0.0;

  void validate() const {
    if (!(slope_N_per_kPa >= 0.0) || !(plateau_N >= 0.0) || !(threshold_kPa > 0.0) ||
        !(prestretch_N >= 0.0)) {
      throw DomainError("capacity entry requires slope >= 0, plateau >= 0, threshold > 0, "
                        "prestretch >= 0");
    }
  }
};

using CapacityCalibration = std::map<ShapeClass, CapacityEntry>;

/// Placeholder table. Only the 48 mm cylinder 0 kPa value (~20 N) is a quoted
/// figure; refit the rest from measurements with fit_capacity.
inline CapacityCalibration default_capacity_table() {
  auto entry = [](double slope, double prestretch) {
    return CapacityEntry{slope, prestretch + slope * 30.0, 30.0, prestretch};
  };
  return {
      {ShapeClass::cylinder, entry(0.6, 20.0)}, {ShapeClass::sphere, entry(0.4, 12.0)},
      {ShapeClass::cone, entry(0.3, 8.0)},      {ShapeClass::pyramid, entry(0.3, 8.0)},
      {ShapeClass::cube, entry(0.4, 10.0)},     {ShapeClass::irregular, entry(0.2, 5.0)},
  };
}

/// Holding force (N) at vacuum p_vac <= 0 kPa. Objects wider than the rest
/// aperture also carry the prestretch force.
inline double contraction_capacity(const ObjectDescriptor& obj, double p_vac,
                                   const CapacityCalibration& calib,
                                   double rest_aperture_mm) {
  if (!(p_vac <= 0.0)) throw DomainError("contraction capacity needs p_vac <= 0 kPa");
  const auto it = calib.find(obj.shape_class);
  if (it == calib.end()) {
    throw UncalibratedError("uncalibrated shape class '" +
                            std::string(to_string(obj.shape_class)) + "'");
  }
  const CapacityEntry& c = it->second;
  const double base =
      obj.characteristic_diameter_mm > 2.0 * rest_aperture_mm ? c.prestretch_N : 0.0;
  const double rising = base + c.slope_N_per_kPa * std::min(-p_vac, c.threshold_kPa);
  return std::min(rising, c.plateau_N);
}

struct ExpansionCapacity {
  double slope_N_per_kPa = 0.5;
};

inline double expansion_capacity(double p_grip, const ExpansionCapacity& e) {
  return e.slope_N_per_kPa * std::max(0.0, p_grip);
}

// ---------------------------------------------------------------------------
// Expansion-driven suction

/// Force (N) from an isothermal sealed cavity: P_I V = P_atm V0.
/// kPa * mm^2 = mN.
inline double suction_force_from_volumes(double ambient_kPa, double seal_area_mm2,
                                         double rest_volume_mm3, double volume_mm3) {
  if (!(volume_mm3 > 0.0) || !(rest_volume_mm3 > 0.0)) {
    throw DomainError("suction volumes must be > 0");
  }
  const double interior = ambient_kPa * rest_volume_mm3 / volume_mm3;
  return std::max(0.0, (ambient_kPa - interior) * seal_area_mm2 * 1e-3);
}

/// Sealed interior of volume V(P_C) = pi R_g(P_C)^2 h_eff.
struct SuctionModel {
  double ambient_kPa = kStandardAtmosphere;
  // Defaults reproduce 15 N sealed lift at 0 kPa and 30 N at 20 kPa.
  double seal_area_mm2 = 2082.14;
  double effective_height_mm = 19.456;
  double seal_threshold_kPa = 0.0;
  /// Volume gained by lifting at the force peak, mm^3.
  double peak_lift_volume_mm3 = 2000.0;
  std::function<double(double)> aperture_mm;  // R_g(P_C)

  void validate_parameters() const {
    if (!(ambient_kPa > 0.0) || !(seal_area_mm2 > 0.0) || !(effective_height_mm > 0.0) ||
        !(peak_lift_volume_mm3 >= 0.0)) {
      throw DomainError("suction model parameters must be positive");
    }
  }

  void validate() const {
    validate_parameters();
    if (!aperture_mm) throw DomainError("suction model has no aperture map");
  }

  double volume(double p_chamber) const {
    const double rg = aperture_mm(p_chamber);
    return std::numbers::pi * rg * rg * effective_height_mm;
  }
  double rest_volume() const { return volume(0.0); }
};

inline SuctionModel make_suction_model(const GripperAssembly& a, SuctionModel m = {}) {
  m.aperture_mm = [a](double p) { return aperture_vs_pressure(a, p); };
  return m;
}

inline double suction_force(const SuctionModel& m, double p_chamber,
                            double lift_volume_increase_mm3) {
  m.validate();
  if (p_chamber < m.seal_threshold_kPa) {
    throw DomainError("no seal: chamber pressure " + numerics::format_g(p_chamber) +
                      " kPa below seal threshold " +
                      numerics::format_g(m.seal_threshold_kPa) + " kPa");
  }
  if (lift_volume_increase_mm3 < 0.0) {
    throw DomainError("lift volume increase must be >= 0");
  }
  const double v0 = m.rest_volume();
  const double v = m.volume(p_chamber) + lift_volume_increase_mm3;
  return suction_force_from_volumes(m.ambient_kPa, m.seal_area_mm2, v0, v);
}

// ---------------------------------------------------------------------------
// Plans

struct GraspSettings {
  ScheduleSettings schedule{};
  CapacityCalibration capacity = default_capacity_table();
  ExpansionCapacity expansion{};
  SuctionModel suction{};
};

struct GraspPlan {
  std::optional<GraspMode> mode;
  std::vector<SchedulePhase> schedule;
  double predicted_capacity_N = 0.0;
  bool feasible = false;
  std::string rationale;
};

inline GraspPlan plan_grasp(const ObjectDescriptor& obj, const GripperAssembly& a,
                            const Workspace& ws, const GraspSettings& settings) {
  using numerics::format_g;
  GraspPlan plan;
  const ModeSelection sel = select_mode(obj, a, ws);
  plan.mode = sel.mode;
  plan.rationale = sel.reason;
  if (!sel.mode) return plan;

  plan.schedule = pressure_schedule(*sel.mode, settings.schedule);
  try {
    switch (*sel.mode) {
      case GraspMode::contraction:
        plan.predicted_capacity_N =
            contraction_capacity(obj, settings.schedule.contraction_hold_kPa,
                                 settings.capacity, ws.rest_aperture_mm);
        break;
      case GraspMode::expansion:
        plan.predicted_capacity_N =
            expansion_capacity(settings.schedule.expansion_grip_kPa, settings.expansion);
        break;
      case GraspMode::suction: {
        SuctionModel m = settings.suction;
        if (!m.aperture_mm) m = make_suction_model(a, m);
        plan.predicted_capacity_N = suction_force(m, settings.schedule.suction_inflate_kPa,
                                                  m.peak_lift_volume_mm3);
        break;
      }
    }
  } catch (const UncalibratedError& e) {
    plan.rationale += "; " + std::string(e.what());
    return plan;
  }
  const double weight = obj.weight_N();
  plan.feasible = plan.predicted_capacity_N >= weight;
  plan.rationale += "; capacity " + format_g(plan.predicted_capacity_N) + " N vs weight " +
                    format_g(weight) + " N";
  if (!plan.feasible) plan.rationale += " (exceeds capacity)";
  return plan;
}

}  // namespace softgrip
