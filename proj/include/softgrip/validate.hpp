#pragma once

// Self-check suite run by `softgrip validate`: closed form against
// quadrature, constraint residuals, fixed point, round trips, and the audit
// of the as-printed pressure expression.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "softgrip/chamber.hpp"
#include "softgrip/gripper.hpp"
#include "softgrip/numerics.hpp"

namespace softgrip {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured max deviation (or reported quantity)
  double threshold = 0.0;
  std::string detail;
};

struct DiscrepancyRow {
  double pressure_kPa = 0.0;
  double rederived_kPa = 0.0;
  double as_printed_kPa = 0.0;
  double quadrature_kPa = 0.0;
  double analytic_gap_kPa = 0.0;  // C1 (Theta0/theta0) ln(r0/r1)
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<DiscrepancyRow> discrepancy;
  double as_printed_at_identity_kPa = 0.0;
  std::size_t points_outside_box = 0;
  std::size_t sweep_points = 0;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

/// The gap between the as-printed and the rederived closed forms.
inline double as_printed_gap(const ChamberGeometry& g, const DeformedState& s,
                             const HyperelasticMaterial& mat) {
  return mat.c1() * (g.half_angle_0() / s.half_angle) * std::log(s.r_outer / s.r_inner);
}

/// Arbitrary valid states (not necessarily on the constraint manifold).
inline std::vector<DeformedState> random_states(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> inner(1.0, 5.0);
  std::uniform_real_distribution<double> wall(0.1, 3.0);
  std::uniform_real_distribution<double> angle(0.2, 1.5);
  std::vector<DeformedState> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = inner(rng);
    const double r0 = r1 + wall(rng);
    out.push_back({r0, r1, angle(rng)});
  }
  return out;
}

inline ValidationReport run_validation(const GripperAssembly& a, double p_max = 40.0,
                                       int sweep_points = 41) {
  using numerics::format_g;
  const ChamberGeometry& g = a.geometry;
  const HyperelasticMaterial& mat = a.material;
  ValidationReport rep;

  {
    const DeformedState s = solve_deformation(g, mat, 0.0, a.box, a.solver);
    const DeformedState u = undeformed(g);
    const double dev = std::max({std::abs(s.r_outer - u.r_outer), std::abs(s.r_inner - u.r_inner),
                                 std::abs(s.half_angle - u.half_angle)});
    rep.checks.push_back({"fixed_point", dev <= 1e-9, dev, 1e-9,
                          "solve(0) against the uninflated geometry (mm / rad)"});
  }

  const std::vector<SweepRow> rows = sweep(a, 0.0, p_max > 0.0 ? p_max : 1.0, sweep_points);
  rep.sweep_points = rows.size();
  double max_rel = 0.0;
  double max_pin = 0.0;
  double max_area = 0.0;
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double closed = pressure_closed_form(g, r.state, mat);
    max_rel = std::max(max_rel, std::abs(closed - r.quadrature_check_kPa) /
                                    std::max(1.0, std::abs(r.pressure_kPa)));
    max_pin = std::max(max_pin, std::abs(r.pin_residual));
    max_area = std::max(max_area, std::abs(r.area_residual));
    if (!a.box.contains(r.state)) ++rep.points_outside_box;
    if (i > 0 && !(r.aperture_mm > rows[i - 1].aperture_mm &&
                   r.state.half_angle > rows[i - 1].state.half_angle)) {
      monotone = false;
    }
  }
  rep.checks.push_back({"oracle_equivalence", max_rel < 1e-6, max_rel, 1e-6,
                        "max |rederived - quadrature| / max(1 kPa, |P|) over " +
                            std::to_string(rows.size()) + " points"});
  rep.checks.push_back({"pin_constraint", max_pin < 1e-8, max_pin, 1e-8, "max |r1 sin(theta0) - a| (mm)"});
  rep.checks.push_back({"area_constraint", max_area < 1e-8, max_area, 1e-8,
                        "max |(R0^2-R1^2) Theta0 - (r0^2-r1^2) theta0| (mm^2)"});
  rep.checks.push_back({"monotonicity", monotone, monotone ? 0.0 : 1.0, 0.0,
                        "R_g and theta0 strictly increasing over the sweep"});

  {
    const DeformedState u = undeformed(g);
    rep.as_printed_at_identity_kPa = pressure_closed_form(g, u, mat, PressureForm::as_printed);
    const double symbolic = mat.c1() * std::log(g.r_outer_0() / g.r_inner_0());
    const double dev = std::abs(rep.as_printed_at_identity_kPa - symbolic) / symbolic;
    rep.checks.push_back({"as_printed_identity_value", dev < 1e-9, rep.as_printed_at_identity_kPa,
                          symbolic,
                          "as-printed pressure at zero deformation equals C1 ln(R0/R1) = " +
                              format_g(symbolic) + " kPa (rederived gives " +
                              format_g(pressure_closed_form(g, u, mat)) + ")"});
  }

  {
    double worst = 0.0;
    for (const auto& s : random_states(100, 20240607)) {
      const double gap = pressure_closed_form(g, s, mat, PressureForm::as_printed) -
                         pressure_closed_form(g, s, mat, PressureForm::rederived);
      const double analytic = as_printed_gap(g, s, mat);
      worst = std::max(worst, std::abs(gap - analytic) / std::max(std::abs(analytic), 1e-300));
    }
    rep.checks.push_back({"as_printed_gap_identity", worst < 1e-9, worst, 1e-9,
                          "as_printed - rederived = +C1 (Theta0/theta0) ln(r0/r1) at 100 random states"});
  }

  {
    double worst = 0.0;
    const double top = p_max > 0.0 ? p_max : 1.0;
    for (int i = 0; i < 10; ++i) {
      const double p = top * (i + 1) / 10.0;
      const double back = inverse_pressure(a, aperture_vs_pressure(a, p));
      worst = std::max(worst, std::abs(back - p) / p);
    }
    rep.checks.push_back({"inverse_round_trip", worst < 1e-6, worst, 1e-6,
                          "max relative |inverse(forward(p)) - p| at 10 pressures"});
  }

  {
    const DeformedState s = forward(a, 0.5 * (p_max > 0.0 ? p_max : 1.0)).state;
    const double tol = a.quadrature_tol;
    const double coarse = pressure_quadrature(g, s, mat, tol);
    const double fine = pressure_quadrature(g, s, mat, 0.5 * tol);
    const double change = std::abs(coarse - fine) / std::max(std::abs(fine), 1e-300);
    rep.checks.push_back({"quadrature_convergence", change < tol, change, tol,
                          "relative change when halving the quadrature tolerance"});
  }

  for (double p : {0.0, 10.0, 20.0, 30.0, 40.0}) {
    if (p > p_max) break;
    const DeformedState s = forward(a, p).state;
    rep.discrepancy.push_back({p, pressure_closed_form(g, s, mat),
                               pressure_closed_form(g, s, mat, PressureForm::as_printed),
                               pressure_quadrature(g, s, mat, a.quadrature_tol),
                               as_printed_gap(g, s, mat)});
  }
  return rep;
}

}  // namespace softgrip
