#pragma once

// N identical chambers arranged in a ring. The ring keeps its sector angle
// alpha = 2 pi / N, so the aperture radius follows from one chamber's wall
// distance as R_g = D / alpha.

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "softgrip/chamber.hpp"
#include "softgrip/errors.hpp"
#include "softgrip/material.hpp"
#include "softgrip/numerics.hpp"

namespace softgrip {

struct GripperAssembly {
  int chamber_count = 22;
  ChamberGeometry geometry{};
  HyperelasticMaterial material{};
  SolverBox box{};
  SolverOptions solver{};
  double quadrature_tol = 1e-9;
  /// Aperture radius when fully folded (contraction side), mm. Quoted, not
  /// modeled.
  double folded_aperture_mm = 5.0;
  /// Extra object diameter the uninflated ring admits by stretching, mm.
  double stretch_margin_mm = 8.65;
  /// Radial thickness of the ring wall, used for insertion into openings.
  double wall_thickness_mm = 10.0;

  double sector_angle() const { return 2.0 * std::numbers::pi / chamber_count; }

  void validate() const {
    if (chamber_count < 3) throw DomainError("chamber_count must be >= 3");
    if (!(folded_aperture_mm >= 0.0)) throw DomainError("folded_aperture_mm must be >= 0");
    if (!(stretch_margin_mm >= 0.0)) throw DomainError("stretch_margin_mm must be >= 0");
    if (!(wall_thickness_mm >= 0.0)) throw DomainError("wall_thickness_mm must be >= 0");
    if (!(quadrature_tol > 0.0)) throw DomainError("quadrature tolerance must be > 0");
    if (!(solver.angle_tol > 0.0)) throw DomainError("solver angle tolerance must be > 0");
    box.validate();
  }
};

inline double aperture_radius(double wall_distance_mm, int chamber_count) {
  if (!(wall_distance_mm >= 0.0)) {
    throw DomainError("wall distance must be >= 0 (got " +
                      numerics::format_g(wall_distance_mm) + " mm)");
  }
  if (chamber_count < 3) throw DomainError("chamber_count must be >= 3");
  return wall_distance_mm / (2.0 * std::numbers::pi / chamber_count);
}

inline double aperture_radius(double wall_distance_mm, const GripperAssembly& a) {
  return aperture_radius(wall_distance_mm, a.chamber_count);
}

struct ForwardResult {
  double pressure_kPa = 0.0;
  DeformedState state{};
  double wall_distance_mm = 0.0;
  double aperture_mm = 0.0;
};

inline ForwardResult forward(const GripperAssembly& a, double p) {
  const DeformedState s = solve_deformation(a.geometry, a.material, p, a.box, a.solver);
  const double d = wall_distance(s);
  return {p, s, d, aperture_radius(d, a)};
}

inline double aperture_vs_pressure(const GripperAssembly& a, double p) {
  return forward(a, p).aperture_mm;
}

/// Highest pressure the solver box admits.
inline double max_pressure(const GripperAssembly& a) {
  return reachable_pressure(a.geometry, a.material, a.box).hi;
}

/// Pressure giving aperture radius target_rg, by bracketing the monotone
/// forward map on [0, max_pressure].
inline double inverse_pressure(const GripperAssembly& a, double target_rg,
                               double tol_mm = 1e-9) {
  const double p_hi = max_pressure(a);
  const double rg_lo = aperture_vs_pressure(a, 0.0);
  const double rg_hi = aperture_vs_pressure(a, p_hi);
  if (!(target_rg >= rg_lo && target_rg <= rg_hi)) {
    throw OutOfWorkspace("out of workspace: aperture " + numerics::format_g(target_rg) +
                             " mm outside achievable [" + numerics::format_g(rg_lo) +
                             ", " + numerics::format_g(rg_hi) + "] mm",
                         rg_lo, rg_hi);
  }
  if (target_rg == rg_lo) return 0.0;
  if (target_rg == rg_hi) return p_hi;
  auto f = [&](double p) { return aperture_vs_pressure(a, p) - target_rg; };
  // Pressure resolution far below what tol_mm needs: dR_g/dp is O(0.1 mm/kPa).
  const double p_tol = std::max(1e-13 * p_hi, 1e-3 * tol_mm);
  const auto root = numerics::find_root(f, 0.0, p_hi, p_tol);
  if (std::abs(root.fx) > tol_mm) {
    throw NumericalError("inverse_pressure: residual " + numerics::format_g(root.fx) +
                         " mm exceeds tolerance");
  }
  return root.x;
}

struct Workspace {
  double min_aperture_mm = 0.0;
  double rest_aperture_mm = 0.0;
  double max_aperture_mm = 0.0;
};

inline Workspace workspace(const GripperAssembly& a, double p_max = 40.0) {
  if (!(p_max >= 0.0)) throw DomainError("p_max must be >= 0");
  const double rest = aperture_vs_pressure(a, 0.0);
  const double max = p_max == 0.0 ? rest : aperture_vs_pressure(a, p_max);
  return {a.folded_aperture_mm, rest, max};
}

/// Object diameters graspable by contraction: from the folded aperture up to
/// the rest aperture plus the stretch margin.
inline Interval contraction_diameter_range(const Workspace& ws, const GripperAssembly& a) {
  return {2.0 * ws.min_aperture_mm, 2.0 * ws.rest_aperture_mm + a.stretch_margin_mm};
}

/// Opening diameters graspable by expansion: the folded ring's outer
/// diameter must fit inside, the inflated one must reach the wall.
inline Interval expansion_diameter_range(const Workspace& ws, const GripperAssembly& a) {
  return {2.0 * (ws.min_aperture_mm + a.wall_thickness_mm),
          2.0 * (ws.max_aperture_mm + a.wall_thickness_mm)};
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepRow {
  double pressure_kPa = 0.0;
  DeformedState state{};
  double wall_distance_mm = 0.0;
  double aperture_mm = 0.0;
  double pin_residual = 0.0;
  double area_residual = 0.0;
  double quadrature_check_kPa = 0.0;
};

inline SweepRow sweep_point(const GripperAssembly& a, double p) {
  const ForwardResult fw = forward(a, p);
  return {p,
          fw.state,
          fw.wall_distance_mm,
          fw.aperture_mm,
          pin_residual(a.geometry, fw.state),
          area_residual(a.geometry, fw.state),
          pressure_quadrature(a.geometry, fw.state, a.material, a.quadrature_tol)};
}

inline std::vector<double> linspace(double from, double to, int steps) {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] =
        i == steps - 1 ? to : from + (to - from) * i / (steps - 1);
  }
  return out;
}

/// Evenly spaced sweep from..to inclusive. Points are evaluated on worker
/// threads; rows come back in pressure order.
inline std::vector<SweepRow> sweep(const GripperAssembly& a, double from, double to,
                                   int steps, unsigned threads = 0) {
  if (!(from < to)) throw DomainError("sweep requires from < to");
  if (steps < 2) throw DomainError("sweep requires steps >= 2");
  const std::vector<double> ps = linspace(from, to, steps);
  std::vector<SweepRow> rows(ps.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(ps.size()));
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t) {
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < ps.size(); i += threads) rows[i] = sweep_point(a, ps[i]);
    }));
  }
  for (auto& j : jobs) j.get();  // rethrows the first worker failure
  return rows;
}

inline constexpr const char* kSweepCsvHeader =
    "pressure_kPa,r0_mm,r1_mm,theta0_rad,D_mm,Rg_mm,pin_residual,area_residual,"
    "quadrature_check_kPa";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  using numerics::format_g;
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << format_g(r.pressure_kPa) << ',' << format_g(r.state.r_outer) << ','
       << format_g(r.state.r_inner) << ',' << format_g(r.state.half_angle) << ','
       << format_g(r.wall_distance_mm) << ',' << format_g(r.aperture_mm) << ','
       << format_g(r.pin_residual) << ',' << format_g(r.area_residual) << ','
       << format_g(r.quadrature_check_kPa) << '\n';
  }
}

}  // namespace softgrip
