#pragma once

// Parameter identification from measurement series: material constant from
// pressure/aperture data, suction parameters from peak suction forces,
// capacity tables from peak holding forces, and peak extraction from
// force-displacement traces.

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "softgrip/chamber.hpp"
#include "softgrip/errors.hpp"
#include "softgrip/grasp.hpp"
#include "softgrip/gripper.hpp"
#include "softgrip/numerics.hpp"

namespace softgrip {

enum class SeriesKind { pressure_aperture, force_displacement, suction_force, capacity };

/// Expected CSV header for each kind. Units live in the column names.
inline std::string_view series_header(SeriesKind k) {
  switch (k) {
    case SeriesKind::pressure_aperture: return "pressure_kPa,aperture_mm";
    case SeriesKind::force_displacement: return "displacement_mm,force_N";
    case SeriesKind::suction_force: return "pressure_kPa,force_N";
    case SeriesKind::capacity: return "pressure_kPa,force_N";
  }
  return "";
}

struct MeasurementSeries {
  SeriesKind kind = SeriesKind::pressure_aperture;
  std::vector<std::pair<double, double>> rows;

  std::size_t min_rows() const { return kind == SeriesKind::suction_force ? 2 : 3; }

  void validate() const {
    if (rows.size() < min_rows()) {
      throw CalibrationError("series needs at least " + std::to_string(min_rows()) +
                             " rows, got " + std::to_string(rows.size()));
    }
    for (const auto& [x, y] : rows) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw CalibrationError("series contains non-finite values");
      }
    }
    if (kind == SeriesKind::pressure_aperture) {
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].first > rows[i - 1].first)) {
          throw CalibrationError("pressure_aperture series: pressure must be strictly "
                                 "increasing (row " + std::to_string(i + 1) + ")");
        }
      }
    }
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_number(const std::string& field, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw CalibrationError(where + ": not a number: '" + field + "'");
  }
  if (used != field.size() || !std::isfinite(v)) {
    throw CalibrationError(where + ": not a number: '" + field + "'");
  }
  return v;
}

}  // namespace detail

/// Strict two-column CSV: the exact header for `kind`, then numeric rows.
/// Blank lines are skipped; anything else malformed aborts with its line
/// number.
inline MeasurementSeries parse_series_csv(std::istream& in, SeriesKind kind,
                                          const std::string& source = "<input>") {
  MeasurementSeries s{kind, {}};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!have_header) {
      std::string normalized;
      for (char c : t) {
        if (c != ' ' && c != '\t') normalized.push_back(c);
      }
      if (normalized != series_header(kind)) {
        throw CalibrationError(where + ": expected header '" +
                               std::string(series_header(kind)) + "', got '" + t + "'");
      }
      have_header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(detail::trim(f));
    if (!t.empty() && t.back() == ',') fields.emplace_back();
    if (fields.size() != 2) {
      throw CalibrationError(where + ": expected 2 fields, got " +
                             std::to_string(fields.size()));
    }
    s.rows.emplace_back(detail::parse_number(fields[0], where),
                        detail::parse_number(fields[1], where));
  }
  if (!have_header) throw CalibrationError(source + ": empty file (header required)");
  s.validate();
  return s;
}

/// Kendall rank correlation of y against x (tau-a; ties count as neither).
inline double kendall_tau(const std::vector<std::pair<double, double>>& rows) {
  const std::size_t n = rows.size();
  if (n < 2) return 0.0;
  double score = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = rows[j].first - rows[i].first;
      const double dy = rows[j].second - rows[i].second;
      if (dx * dy > 0) score += 1.0;
      if (dx * dy < 0) score -= 1.0;
    }
  }
  return score / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

struct PointResidual {
  double x = 0.0;
  double measured = 0.0;
  double model = 0.0;
};

struct FitReport {
  std::vector<std::pair<std::string, double>> parameters;
  double residual_norm = 0.0;
  std::vector<PointResidual> per_point;
  bool at_bound = false;
  bool degenerate = false;

  double value(std::string_view name) const {
    for (const auto& [k, v] : parameters) {
      if (k == name) return v;
    }
    throw std::out_of_range("no fitted parameter " + std::string(name));
  }
};

// ---------------------------------------------------------------------------
// Material constant

/// Aperture at pressure p where pressures beyond the box's reach saturate at
/// the box's angle limit. Keeps the fit objective defined for every c1.
inline double saturating_aperture(const GripperAssembly& a, double p) {
  const Interval reach = reachable_pressure(a.geometry, a.material, a.box);
  const double pc = std::clamp(p, 0.0, reach.hi);
  return aperture_vs_pressure(a, pc);
}

struct C1FitOptions {
  Interval bounds{10.0, 1000.0};
  double min_trend_tau = 0.5;
};

inline FitReport fit_c1(const MeasurementSeries& series, const GripperAssembly& base,
                        const C1FitOptions& opt = {}) {
  if (series.kind != SeriesKind::pressure_aperture) {
    throw CalibrationError("fit_c1 needs a pressure_aperture series");
  }
  series.validate();
  const auto in_range = std::count_if(series.rows.begin(), series.rows.end(), [](auto& r) {
    return r.first > 0.0 && r.first <= kPressureLimit;
  });
  if (in_range < 3) {
    throw CalibrationError("fit_c1 needs at least 3 pressures in (0, 40] kPa");
  }
  for (const auto& [p, rg] : series.rows) {
    if (p < 0.0) throw CalibrationError("fit_c1: negative pressure in series");
    if (!(rg > 0.0)) throw CalibrationError("fit_c1: aperture must be positive");
  }
  const double tau = kendall_tau(series.rows);
  if (tau < opt.min_trend_tau) {
    throw CalibrationError("fit_c1: aperture series is not monotone increasing in "
                           "pressure (Kendall tau " + numerics::format_g(tau, 4) +
                           " < " + numerics::format_g(opt.min_trend_tau, 4) + ")");
  }
  if (!(opt.bounds.lo > 0.0 && opt.bounds.lo < opt.bounds.hi)) {
    throw CalibrationError("fit_c1: invalid c1 bounds");
  }

  auto model_at = [&](double c1, double p) {
    GripperAssembly a = base;
    a.material = HyperelasticMaterial(c1);
    return saturating_aperture(a, p);
  };
  auto objective = [&](double log_c1) {
    const double c1 = std::exp(log_c1);
    double ss = 0.0;
    for (const auto& [p, rg] : series.rows) {
      const double r = model_at(c1, p) - rg;
      ss += r * r;
    }
    return ss;
  };
  const auto best = numerics::golden_section(objective, std::log(opt.bounds.lo),
                                             std::log(opt.bounds.hi), 1e-13);
  const double c1 = std::exp(best.x);

  FitReport rep;
  rep.parameters = {{"c1_kPa", c1}};
  rep.residual_norm = std::sqrt(best.fx);
  for (const auto& [p, rg] : series.rows) rep.per_point.push_back({p, rg, model_at(c1, p)});
  rep.at_bound = c1 <= opt.bounds.lo * (1 + 1e-6) || c1 >= opt.bounds.hi * (1 - 1e-6);
  return rep;
}

// ---------------------------------------------------------------------------
// Peak force

/// Maximum force after a centered moving average of odd width `window`
/// (1 = raw). Near the ends the average uses the samples available.
inline double extract_peak_force(const MeasurementSeries& series, int window = 1) {
  if (series.rows.size() < 3) {
    throw CalibrationError("peak extraction needs at least 3 samples");
  }
  if (window < 1 || window % 2 == 0) {
    throw CalibrationError("smoothing window must be a positive odd integer");
  }
  const auto n = static_cast<long>(series.rows.size());
  const long half = window / 2;
  double peak = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < n; ++i) {
    const long lo = std::max(0L, i - half);
    const long hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (long j = lo; j <= hi; ++j) sum += series.rows[static_cast<std::size_t>(j)].second;
    peak = std::max(peak, sum / static_cast<double>(hi - lo + 1));
  }
  return peak;
}

// ---------------------------------------------------------------------------
// Suction parameters

struct SuctionFitOptions {
  Interval area_bounds{1e-3, 1e5};     // mm^2
  Interval height_bounds{1e-2, 1e4};   // mm
  int seed_grid = 25;
};

/// Least-squares fit of (seal area, effective height) to peak suction forces
/// measured at several chamber pressures. `model` supplies the fixed terms
/// (ambient pressure, seal threshold, peak lift volume).
inline FitReport fit_suction(const MeasurementSeries& series, const GripperAssembly& a,
                             const SuctionModel& model = {},
                             const SuctionFitOptions& opt = {}) {
  if (series.kind != SeriesKind::suction_force) {
    throw CalibrationError("fit_suction needs a suction_force series");
  }
  series.validate();
  std::set<double> distinct;
  for (const auto& [p, f] : series.rows) {
    if (p < model.seal_threshold_kPa) {
      throw CalibrationError("fit_suction: pressure " + numerics::format_g(p) +
                             " kPa below the seal threshold");
    }
    if (f < 0.0) throw CalibrationError("fit_suction: negative force");
    distinct.insert(p);
  }
  if (distinct.size() < 2) {
    throw CalibrationError("fit_suction: underdetermined, need at least 2 distinct "
                           "chamber pressures");
  }

  const double rg0 = aperture_vs_pressure(a, 0.0);
  std::vector<double> rg_sq;
  for (const auto& [p, f] : series.rows) {
    const double rg = aperture_vs_pressure(a, p);
    rg_sq.push_back(rg * rg);
  }
  auto predict = [&](double area, double height, std::size_t i) {
    const double v0 = std::numbers::pi * rg0 * rg0 * height;
    const double v = std::numbers::pi * rg_sq[i] * height + model.peak_lift_volume_mm3;
    return suction_force_from_volumes(model.ambient_kPa, area, v0, v);
  };
  const std::array<double, 2> lo{std::log(opt.area_bounds.lo), std::log(opt.height_bounds.lo)};
  const std::array<double, 2> hi{std::log(opt.area_bounds.hi), std::log(opt.height_bounds.hi)};
  auto clamp_pt = [&](std::array<double, 2> x) {
    for (std::size_t k = 0; k < 2; ++k) x[k] = std::clamp(x[k], lo[k], hi[k]);
    return x;
  };
  auto objective = [&](const std::array<double, 2>& x) {
    const auto c = clamp_pt(x);
    const double area = std::exp(c[0]);
    const double height = std::exp(c[1]);
    double ss = 0.0;
    for (std::size_t i = 0; i < series.rows.size(); ++i) {
      const double r = predict(area, height, i) - series.rows[i].second;
      ss += r * r;
    }
    // Mild pull back toward the box so the simplex does not drift outside.
    double out = 0.0;
    for (std::size_t k = 0; k < 2; ++k) out += std::abs(x[k] - c[k]);
    return ss + out;
  };

  // Seed from a log-spaced grid, then refine with two simplex passes.
  std::array<double, 2> seed{};
  double seed_f = std::numeric_limits<double>::infinity();
  const int n = std::max(2, opt.seed_grid);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::array<double, 2> x{lo[0] + (hi[0] - lo[0]) * i / (n - 1),
                                    lo[1] + (hi[1] - lo[1]) * j / (n - 1)};
      const double fx = objective(x);
      if (fx < seed_f) {
        seed_f = fx;
        seed = x;
      }
    }
  }
  const std::array<double, 2> step{(hi[0] - lo[0]) / (n - 1), (hi[1] - lo[1]) / (n - 1)};
  auto nm = numerics::nelder_mead<2>(objective, seed, step, 1e-20, 1e-12, 20000);
  nm = numerics::nelder_mead<2>(objective, nm.x, {0.05, 0.05}, 1e-24, 1e-13, 20000);
  const auto x = clamp_pt(nm.x);
  const double area = std::exp(x[0]);
  const double height = std::exp(x[1]);

  FitReport rep;
  rep.parameters = {{"A_eff_mm2", area}, {"h_eff_mm", height}};
  double ss = 0.0;
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    const double m = predict(area, height, i);
    ss += (m - series.rows[i].second) * (m - series.rows[i].second);
    rep.per_point.push_back({series.rows[i].first, series.rows[i].second, m});
  }
  rep.residual_norm = std::sqrt(ss);
  const double rel = 1e-6;
  rep.at_bound = x[0] <= lo[0] + rel || x[0] >= hi[0] - rel || x[1] <= lo[1] + rel ||
                 x[1] >= hi[1] - rel;
  const bool all_zero = std::all_of(series.rows.begin(), series.rows.end(),
                                    [](auto& r) { return r.second == 0.0; });
  rep.degenerate = all_zero || x[0] <= lo[0] + rel;
  return rep;
}

// ---------------------------------------------------------------------------
// Capacity table entries

/// Capacity entry from (vacuum pressure, peak force) pairs for one shape
/// class. Pressures may be given as negative gauge or as magnitudes.
inline CapacityEntry fit_capacity(const MeasurementSeries& series, double threshold_kPa = 30.0) {
  series.validate();
  if (!(threshold_kPa > 0.0)) throw CalibrationError("threshold must be > 0");
  double base_sum = 0.0;
  int base_n = 0;
  for (const auto& [p, f] : series.rows) {
    if (p == 0.0) {
      base_sum += f;
      ++base_n;
    }
  }
  const double base = base_n ? base_sum / base_n : 0.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double plat_sum = 0.0;
  int plat_n = 0;
  for (const auto& [p, f] : series.rows) {
    const double v = std::abs(p);
    if (v > 0.0 && v < threshold_kPa) {
      sxy += v * (f - base);
      sxx += v * v;
    } else if (v >= threshold_kPa) {
      plat_sum += f;
      ++plat_n;
    }
  }
  CapacityEntry e;
  e.threshold_kPa = threshold_kPa;
  e.prestretch_N = std::max(0.0, base);
  if (sxx > 0.0) {
    e.slope_N_per_kPa = std::max(0.0, sxy / sxx);
  } else if (plat_n > 0) {
    e.slope_N_per_kPa = std::max(0.0, (plat_sum / plat_n - base) / threshold_kPa);
  }
  e.plateau_N = plat_n ? std::max(0.0, plat_sum / plat_n)
                       : e.prestretch_N + e.slope_N_per_kPa * threshold_kPa;
  e.validate();
  return e;
}

}  // namespace softgrip
