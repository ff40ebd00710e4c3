#pragma once

// Independent reference solvers used only by tests. Neither uses the
// constraint elimination or the bracketing root finder of the library.

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "softgrip/chamber.hpp"

namespace softgrip::oracle {

struct GridBox {
  Interval r_outer;
  Interval r_inner;
  Interval half_angle;
};

struct GridResult {
  DeformedState best{};
  std::array<double, 3> cell{};  // grid spacing per unknown
  double objective = 0.0;
};

/// Brute-force scan of an n^3 grid. At each node the residuals (pressure,
/// pin, area) and their per-cell changes from neighboring nodes give a local
/// linear model; the objective is the estimated distance to the root in grid
/// cells (max over the three unknowns). No derivative of the model is used.
inline GridResult grid_search(const ChamberGeometry& g, const HyperelasticMaterial& mat, double p,
                              const GridBox& box, int n) {
  using Vec = std::array<double, 3>;
  const double h0 = (box.r_outer.hi - box.r_outer.lo) / (n - 1);
  const double h1 = (box.r_inner.hi - box.r_inner.lo) / (n - 1);
  const double h2 = (box.half_angle.hi - box.half_angle.lo) / (n - 1);
  auto x0 = [&](int i) { return box.r_outer.lo + h0 * i; };
  auto x1 = [&](int j) { return box.r_inner.lo + h1 * j; };
  auto x2 = [&](int k) { return box.half_angle.lo + h2 * k; };

  const std::size_t slab = static_cast<std::size_t>(n) * n;
  auto fill = [&](int i, std::vector<Vec>& out) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const DeformedState s{x0(i), x1(j), x2(k)};
        auto& r = out[static_cast<std::size_t>(j) * n + k];
        if (!(s.r_inner < s.r_outer)) {
          r = {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
          continue;
        }
        r = {pressure_closed_form(g, s, mat) - p, pin_residual(g, s), area_residual(g, s)};
      }
    }
  };
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };

  std::vector<Vec> prev(slab), cur(slab), next(slab);
  fill(0, cur);
  fill(1, next);
  GridResult best;
  best.cell = {h0, h1, h2};
  best.objective = std::numeric_limits<double>::infinity();
  const auto idx = [n](int jj, int kk) { return static_cast<std::size_t>(jj) * n + kk; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vec& c = cur[idx(j, k)];
        if (std::isnan(c[0])) continue;
        // Per-cell change of each residual along each axis (columns).
        const Vec* lo[3] = {i > 0 ? &prev[idx(j, k)] : &c, j > 0 ? &cur[idx(j - 1, k)] : &c,
                            k > 0 ? &cur[idx(j, k - 1)] : &c};
        const Vec* hi[3] = {i < n - 1 ? &next[idx(j, k)] : &c,
                            j < n - 1 ? &cur[idx(j + 1, k)] : &c,
                            k < n - 1 ? &cur[idx(j, k + 1)] : &c};
        const int span[3] = {(i > 0) + (i < n - 1), (j > 0) + (j < n - 1), (k > 0) + (k < n - 1)};
        double jac[3][3];
        bool ok = true;
        for (int ax = 0; ax < 3 && ok; ++ax) {
          if (std::isnan((*lo[ax])[0]) || std::isnan((*hi[ax])[0]) || span[ax] == 0) {
            ok = false;
            break;
          }
          for (int q = 0; q < 3; ++q) jac[q][ax] = ((*hi[ax])[q] - (*lo[ax])[q]) / span[ax];
        }
        if (!ok) continue;
        const double d = det3(jac);
        if (!(std::abs(d) > 0.0)) continue;
        // Cramer's rule: step (in cells) that zeroes the linear model.
        double obj = 0.0;
        for (int ax = 0; ax < 3; ++ax) {
          double m[3][3];
          for (int q = 0; q < 3; ++q) {
            for (int cc = 0; cc < 3; ++cc) m[q][cc] = cc == ax ? c[q] : jac[q][cc];
          }
          obj = std::max(obj, std::abs(det3(m) / d));
        }
        if (obj < best.objective) {
          best.objective = obj;
          best.best = {x0(i), x1(j), x2(k)};
        }
      }
    }
    std::swap(prev, cur);
    std::swap(cur, next);
    if (i + 2 < n) fill(i + 2, next);
  }
  return best;
}

/// Box on the solver box's angle range whose radius ranges are widened down to
/// the values the constraints imply at the upper angle.
inline GridBox constraint_enclosing_box(const ChamberGeometry& g, const SolverBox& box) {
  const DeformedState at_hi = state_from_angle(g, box.half_angle.hi);
  const double pad = 0.05;
  return {{std::min(box.r_outer.lo, at_hi.r_outer) - pad, box.r_outer.hi},
          {std::min(box.r_inner.lo, at_hi.r_inner) - pad, box.r_inner.hi},
          box.half_angle};
}

/// Newton iteration on the full 3x3 residual system with a finite-difference
/// Jacobian, started from the uninflated geometry.
inline DeformedState newton3(const ChamberGeometry& g, const HyperelasticMaterial& mat, double p,
                             int max_iter = 100) {
  auto residual = [&](const std::array<double, 3>& x) {
    const DeformedState s{x[0], x[1], x[2]};
    return std::array<double, 3>{pressure_closed_form(g, s, mat) - p, pin_residual(g, s),
                                 area_residual(g, s)};
  };
  std::array<double, 3> x{g.r_outer_0(), g.r_inner_0(), g.half_angle_0()};
  for (int it = 0; it < max_iter; ++it) {
    const auto f = residual(x);
    if (std::abs(f[0]) < 1e-12 && std::abs(f[1]) < 1e-13 && std::abs(f[2]) < 1e-13) break;
    double jac[3][3];
    for (int c = 0; c < 3; ++c) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[c]));
      auto xp = x;
      auto xm = x;
      xp[c] += h;
      xm[c] -= h;
      const auto fp = residual(xp);
      const auto fm = residual(xm);
      for (int r = 0; r < 3; ++r) jac[r][c] = (fp[r] - fm[r]) / (2 * h);
    }
    // Cramer's rule for the 3x3 step.
    auto det3 = [](double m[3][3]) {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double d = det3(jac);
    std::array<double, 3> step{};
    for (int c = 0; c < 3; ++c) {
      double m[3][3];
      for (int r = 0; r < 3; ++r) {
        for (int cc = 0; cc < 3; ++cc) m[r][cc] = cc == c ? -f[r] : jac[r][cc];
      }
      step[c] = det3(m) / d;
    }
    // Damped so the state stays physical.
    double t = 1.0;
    while (t > 1e-6) {
      const std::array<double, 3> xn{x[0] + t * step[0], x[1] + t * step[1], x[2] + t * step[2]};
      if (xn[1] > 0 && xn[1] < xn[0] && xn[2] > 0 && xn[2] < 1.5707963) {
        x = xn;
        break;
      }
      t *= 0.5;
    }
  }
  return {x[0], x[1], x[2]};
}

}  // namespace softgrip::oracle
