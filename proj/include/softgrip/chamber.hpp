#pragma once

// Single-chamber kinematics and statics. One half-chamber wall is an
// annular sector with inner/outer radii (r1, r0) and half angle theta0;
// the inner-surface edge points stay fixed and the sector area is
// preserved. Units: mm, kPa, rad.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "softgrip/errors.hpp"
#include "softgrip/material.hpp"
#include "softgrip/numerics.hpp"

namespace softgrip {

inline constexpr double deg_to_rad(double deg) {
  return deg * std::numbers::pi / 180.0;
}
inline constexpr double rad_to_deg(double rad) {
  return rad * 180.0 / std::numbers::pi;
}

/// Uninflated chamber cross-section. The pin half-distance a = R1 sin(Theta0)
/// is derived, never set.
class ChamberGeometry {
 public:
  static constexpr double kDefaultOuterRadius = 4.56;
  static constexpr double kDefaultInnerRadius = 3.0;
  static constexpr double kDefaultHalfAngleDeg = 57.6;

  ChamberGeometry()
      : ChamberGeometry(kDefaultOuterRadius, kDefaultInnerRadius,
                        deg_to_rad(kDefaultHalfAngleDeg)) {}

  ChamberGeometry(double r_outer_0, double r_inner_0, double half_angle_0)
      : r_outer_0_(r_outer_0), r_inner_0_(r_inner_0), half_angle_0_(half_angle_0) {
    if (!(r_inner_0 > 0.0) || !(r_inner_0 < r_outer_0) || !std::isfinite(r_outer_0)) {
      throw DomainError("chamber geometry requires 0 < R1 < R0 (got R0=" +
                        numerics::format_g(r_outer_0) + " mm, R1=" +
                        numerics::format_g(r_inner_0) + " mm)");
    }
    if (!(half_angle_0 > 0.0) || !(half_angle_0 < std::numbers::pi / 2)) {
      throw DomainError("chamber geometry requires 0 < Theta0 < 90 deg (got " +
                        numerics::format_g(rad_to_deg(half_angle_0)) + " deg)");
    }
    pin_half_distance_ = r_inner_0_ * std::sin(half_angle_0_);
  }

  static ChamberGeometry from_degrees(double r_outer_0, double r_inner_0,
                                      double half_angle_0_deg) {
    return {r_outer_0, r_inner_0, deg_to_rad(half_angle_0_deg)};
  }

  double r_outer_0() const noexcept { return r_outer_0_; }
  double r_inner_0() const noexcept { return r_inner_0_; }
  double half_angle_0() const noexcept { return half_angle_0_; }
  double pin_half_distance() const noexcept { return pin_half_distance_; }

  /// Conserved sector measure (R0^2 - R1^2) * Theta0, mm^2.
  double area_measure() const noexcept {
    return (r_outer_0_ * r_outer_0_ - r_inner_0_ * r_inner_0_) * half_angle_0_;
  }

  friend bool operator==(const ChamberGeometry&, const ChamberGeometry&) = default;

 private:
  double r_outer_0_;
  double r_inner_0_;
  double half_angle_0_;
  double pin_half_distance_;
};

struct DeformedState {
  double r_outer = 0.0;   // r0, mm
  double r_inner = 0.0;   // r1, mm
  double half_angle = 0.0;  // theta0, rad
};

inline DeformedState undeformed(const ChamberGeometry& g) {
  return {g.r_outer_0(), g.r_inner_0(), g.half_angle_0()};
}

inline void check_state(const DeformedState& s) {
  if (!(s.r_inner > 0.0) || !(s.r_inner < s.r_outer) ||
      !(s.half_angle > 0.0) || !(s.half_angle < std::numbers::pi / 2)) {
    throw DomainError("invalid deformed state (r0=" + numerics::format_g(s.r_outer) +
                      ", r1=" + numerics::format_g(s.r_inner) +
                      ", theta0=" + numerics::format_g(s.half_angle) + ")");
  }
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double slack = 0.0) const {
    return x >= lo - slack && x <= hi + slack;
  }
};

/// Search box for the deformed unknowns. The solver brackets on the angle
/// range; the radius ranges are checked and reported.
struct SolverBox {
  Interval r_outer{4.56, 5.0};
  Interval r_inner{3.0, 3.8};
  Interval half_angle{deg_to_rad(57.6), deg_to_rad(80.0)};

  void validate() const {
    for (const auto* iv : {&r_outer, &r_inner, &half_angle}) {
      if (!(iv->lo <= iv->hi)) throw DomainError("solver box range is empty");
    }
    if (!(half_angle.lo > 0.0) || !(half_angle.hi < std::numbers::pi / 2)) {
      throw DomainError("solver box angle range must lie inside (0, 90) deg");
    }
  }

  bool contains(const DeformedState& s, double slack = 1e-9) const {
    return r_outer.contains(s.r_outer, slack) && r_inner.contains(s.r_inner, slack) &&
           half_angle.contains(s.half_angle, slack);
  }
};

// ---------------------------------------------------------------------------
// Kinematics

/// Undeformed radius of the material circle currently at radius r.
inline double reference_radius(const ChamberGeometry& g, const DeformedState& s,
                               double r) {
  const double k = s.half_angle / g.half_angle_0();
  const double r1 = g.r_inner_0();
  return std::sqrt(r1 * r1 + (r * r - s.r_inner * s.r_inner) * k);
}

inline void check_radius(const DeformedState& s, double r) {
  if (!(r >= s.r_inner && r <= s.r_outer)) {
    throw DomainError("radius " + numerics::format_g(r) + " mm outside the wall [" +
                      numerics::format_g(s.r_inner) + ", " +
                      numerics::format_g(s.r_outer) + "]");
  }
}

inline double hoop_stretch(const ChamberGeometry& g, const DeformedState& s, double r) {
  check_radius(s, r);
  const double k = s.half_angle / g.half_angle_0();
  return r * k / reference_radius(g, s, r);
}

inline double radial_stretch(const ChamberGeometry& g, const DeformedState& s, double r) {
  return 1.0 / hoop_stretch(g, s, r);
}

// ---------------------------------------------------------------------------
// Pressure functional

/// Integral of (sigma_tt - sigma_rr)/r over the wall, by adaptive Simpson.
/// Material-agnostic; this is the reference every closed form is checked
/// against.
template <PlaneStrainMaterial M>
numerics::QuadratureResult pressure_quadrature_detailed(const ChamberGeometry& g,
                                                        const DeformedState& s,
                                                        const M& mat,
                                                        double rel_tol = 1e-9) {
  check_state(s);
  const double k = s.half_angle / g.half_angle_0();
  const double r1sq = s.r_inner * s.r_inner;
  const double big_r1sq = g.r_inner_0() * g.r_inner_0();
  auto integrand = [&](double r) {
    const double big_r = std::sqrt(big_r1sq + (r * r - r1sq) * k);
    const double lt = r * k / big_r;
    return mat.stress_difference(lt, 1.0 / lt) / r;
  };
  return numerics::adaptive_simpson(integrand, s.r_inner, s.r_outer, rel_tol);
}

template <PlaneStrainMaterial M>
double pressure_quadrature(const ChamberGeometry& g, const DeformedState& s,
                           const M& mat, double rel_tol = 1e-9) {
  return pressure_quadrature_detailed(g, s, mat, rel_tol).value;
}

enum class PressureForm { rederived, as_printed };

/// Closed-form wall pressure for the neo-Hookean law. `as_printed` keeps the
/// coefficient 1 on the last logarithm (the commonly quoted form); it does not
/// vanish at zero deformation. `rederived` (coefficient 2) agrees with
/// pressure_quadrature.
inline double pressure_closed_form(const ChamberGeometry& g, const DeformedState& s,
                                   const HyperelasticMaterial& mat,
                                   PressureForm form = PressureForm::rederived) {
  check_state(s);
  const double c1 = mat.c1();
  const double big_t = g.half_angle_0();
  const double t = s.half_angle;
  const double big_r0 = g.r_outer_0();
  const double big_r1 = g.r_inner_0();
  const double r0 = s.r_outer;
  const double r1 = s.r_inner;

  const double first = 2.0 * c1 * (t / big_t) * std::log(big_r0 / big_r1);
  const double second = c1 * (big_t / (t * t)) * (big_r1 * big_r1 * big_t - r1 * r1 * t) *
                        (1.0 / (r0 * r0) - 1.0 / (r1 * r1));
  const double log_coeff = form == PressureForm::rederived ? 2.0 : 1.0;
  const double third = log_coeff * c1 * (big_t / t) * std::log(r0 / r1);
  return first + second - third;
}

// ---------------------------------------------------------------------------
// Constraints and the reduced one-unknown problem

inline double pin_residual(const ChamberGeometry& g, const DeformedState& s) {
  return s.r_inner * std::sin(s.half_angle) - g.pin_half_distance();
}

inline double area_residual(const ChamberGeometry& g, const DeformedState& s) {
  return g.area_measure() -
         (s.r_outer * s.r_outer - s.r_inner * s.r_inner) * s.half_angle;
}

/// The state on the constraint manifold with half angle theta0: r1 from the
/// fixed edge points, r0 from area conservation.
inline DeformedState state_from_angle(const ChamberGeometry& g, double theta0) {
  if (!(theta0 > 0.0) || !(theta0 < std::numbers::pi / 2)) {
    throw DomainError("half angle must lie in (0, 90) deg");
  }
  if (theta0 == g.half_angle_0()) return undeformed(g);
  const double r1 = g.pin_half_distance() / std::sin(theta0);
  const double r0 = std::sqrt(r1 * r1 + g.area_measure() / theta0);
  return {r0, r1, theta0};
}

/// Pressure needed to hold the chamber at half angle theta0.
inline double pressure_at_angle(const ChamberGeometry& g, const HyperelasticMaterial& mat,
                                double theta0) {
  return pressure_closed_form(g, state_from_angle(g, theta0), mat);
}

/// Pressures reachable while theta0 stays inside the box's angle range.
inline Interval reachable_pressure(const ChamberGeometry& g, const HyperelasticMaterial& mat,
                                   const SolverBox& box) {
  return {pressure_at_angle(g, mat, box.half_angle.lo),
          pressure_at_angle(g, mat, box.half_angle.hi)};
}

struct SolverOptions {
  double angle_tol = 1e-10;  // rad
  std::uintmax_t max_iter = 200;
};

/// Deformed state at inflation pressure p (kPa, p >= 0). The two
/// constraints are eliminated exactly; the remaining scalar equation
/// P(theta0) = p is bracketed on the box's angle range.
inline DeformedState solve_deformation(const ChamberGeometry& g,
                                       const HyperelasticMaterial& mat, double p,
                                       const SolverBox& box = {},
                                       const SolverOptions& opt = {}) {
  box.validate();
  if (!std::isfinite(p)) throw DomainError("pressure must be finite");
  const Interval reach = reachable_pressure(g, mat, box);
  if (p < 0.0) {
    throw OutOfWorkspace("inflation branch only: p=" + numerics::format_g(p) +
                             " kPa < 0; reachable [" + numerics::format_g(reach.lo) +
                             ", " + numerics::format_g(reach.hi) + "] kPa",
                         reach.lo, reach.hi);
  }
  if (p == 0.0 && box.half_angle.contains(g.half_angle_0())) return undeformed(g);
  const double slack = 1e-12 * std::max(1.0, std::abs(p));
  if (p < reach.lo - slack || p > reach.hi + slack) {
    throw OutOfWorkspace("out of workspace: p=" + numerics::format_g(p) +
                             " kPa outside reachable [" + numerics::format_g(reach.lo) +
                             ", " + numerics::format_g(reach.hi) + "] kPa",
                         reach.lo, reach.hi);
  }
  auto residual = [&](double theta0) { return pressure_at_angle(g, mat, theta0) - p; };
  double lo = box.half_angle.lo;
  double hi = box.half_angle.hi;
  if (p <= reach.lo) return state_from_angle(g, lo);
  if (p >= reach.hi) return state_from_angle(g, hi);
  const auto root = numerics::find_root(residual, lo, hi, opt.angle_tol, opt.max_iter);
  return state_from_angle(g, root.x);
}

/// Interior width of one deformed chamber, D = 2 (r0 - r1 cos theta0).
inline double wall_distance(const DeformedState& s) {
  return 2.0 * (s.r_outer - s.r_inner * std::cos(s.half_angle));
}

}  // namespace softgrip
