#pragma once

// Generic scalar numerics: bracketed root finding, adaptive Simpson
// quadrature, golden-section search and a small Nelder-Mead simplex.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "softgrip/errors.hpp"

namespace softgrip::numerics {

inline std::string format_g(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  std::uintmax_t iterations = 0;
};

/// Root of a continuous f on [lo, hi]. Requires a sign change (or a zero at
/// an endpoint); otherwise throws NumericalError with the bracket values.
template <class F>
RootResult find_root(F&& f, double lo, double hi, double x_tol,
                     std::uintmax_t max_iter = 200) {
  if (!(lo <= hi)) throw DomainError("find_root: empty bracket");
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, flo, 0};
  if (fhi == 0.0) return {hi, fhi, 0};
  if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) ||
      std::isnan(fhi)) {
    throw NumericalError("find_root: no sign change on [" + format_g(lo) +
                         ", " + format_g(hi) + "], f(lo)=" + format_g(flo) +
                         ", f(hi)=" + format_g(fhi));
  }
  std::uintmax_t iters = max_iter;
  auto stop = [x_tol](double a, double b) { return std::abs(b - a) <= x_tol; };
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop,
                                                  iters);
  if (iters >= max_iter && std::abs(b - a) > x_tol) {
    throw NumericalError("find_root: no convergence after " +
                         std::to_string(iters) + " iterations, bracket [" +
                         format_g(a, 17) + ", " + format_g(b, 17) + "]");
  }
  // Return the endpoint with the smaller residual.
  const double fa = f(a);
  const double fb = f(b);
  if (std::abs(fa) <= std::abs(fb)) return {a, fa, iters};
  return {b, fb, iters};
}

struct QuadratureResult {
  double value = 0.0;
  std::size_t evaluations = 0;
  int max_depth = 0;
};

namespace detail {

template <class F>
struct SimpsonState {
  F& f;
  double eps_floor;
  int depth_limit;
  std::size_t evaluations = 0;
  int deepest = 0;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    deepest = std::max(deepest, depth);
    if (std::abs(delta) <= 15.0 * std::max(eps, eps_floor)) {
      return left + right + delta / 15.0;
    }
    if (depth >= depth_limit || !(a < lm && lm < m && m < rm && rm < b)) {
      throw NumericalError(
          "adaptive_simpson: no convergence on [" + format_g(a, 17) + ", " +
          format_g(b, 17) + "] at depth " + std::to_string(depth) +
          ", local error estimate " + format_g(std::abs(delta) / 15.0) +
          " vs target " + format_g(eps));
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
  }
};

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b] with interval halving.
/// The tolerance is relative to the integral of |f|, estimated on a coarse
/// composite rule first, so an identically zero integrand returns 0.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double rel_tol,
                                  int max_depth = 50) {
  if (!(rel_tol > 0.0)) throw DomainError("adaptive_simpson: tol must be > 0");
  if (a == b) return {};
  constexpr int kPanels = 64;
  const double h = (b - a) / kPanels;
  double scale = 0.0;
  std::size_t n = 0;
  for (int i = 0; i < kPanels; ++i) {
    const double x0 = a + i * h;
    const double x1 = x0 + h;
    const double xm = 0.5 * (x0 + x1);
    scale += h / 6.0 * (std::abs(f(x0)) + 4.0 * std::abs(f(xm)) + std::abs(f(x1)));
    n += 3;
  }
  scale = std::abs(scale);
  if (scale == 0.0) return {0.0, n, 0};

  detail::SimpsonState<std::remove_reference_t<F>> st{
      f, 4.0 * std::numeric_limits<double>::epsilon() * scale, max_depth};
  const double fa = st.eval(a);
  const double fb = st.eval(b);
  const double fm = st.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = st.recurse(a, b, fa, fm, fb, whole, rel_tol * scale, 0);
  return {value, st.evaluations + n, st.deepest};
}

struct MinimizeResult1D {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Golden-section minimization of a unimodal f on [lo, hi]; stops when the
/// bracket is narrower than x_tol.
template <class F>
MinimizeResult1D golden_section(F&& f, double lo, double hi, double x_tol,
                                int max_iter = 500) {
  if (!(lo < hi)) throw DomainError("golden_section: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > x_tol && it < max_iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  // The endpoints themselves may be optimal (bound-constrained minimum).
  MinimizeResult1D best{c, fc, it};
  if (fd < best.fx) best = {d, fd, it};
  for (double x : {lo, hi}) {
    if (std::abs(x - best.x) <= 2.0 * x_tol) {
      const double fx = f(x);
      if (fx < best.fx) best = {x, fx, it};
    }
  }
  return best;
}

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex (standard coefficients 1, 2, 1/2, 1/2). Stops when
/// the spread of function values and the simplex diameter are both below
/// their tolerances.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start,
                             const std::array<double, N>& step,
                             double f_tol = 1e-14, double x_tol = 1e-12,
                             int max_iter = 5000) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts{};
  std::array<double, N + 1> vals{};
  pts[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += step[i];
  }
  for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

  std::array<std::size_t, N + 1> order{};
  SimplexResult<N> out;
  int it = 0;
  for (; it < max_iter; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[N - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        diameter = std::max(diameter, std::abs(pts[i][k] - pts[best][k]));
      }
    }
    if (std::abs(vals[worst] - vals[best]) <= f_tol && diameter <= x_tol) {
      out.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / N;
    }
    auto along = [&](double t) {
      Point p{};
      for (std::size_t k = 0; k < N; ++k) {
        p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      }
      return p;
    };

    const Point reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const Point expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Point contracted = along(outside ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < N; ++k) {
        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      }
      vals[i] = f(pts[i]);
    }
  }
  const auto best_it = std::min_element(vals.begin(), vals.end());
  const auto idx = static_cast<std::size_t>(best_it - vals.begin());
  out.x = pts[idx];
  out.fx = vals[idx];
  out.iterations = it;
  return out;
}

}  // namespace softgrip::numerics
