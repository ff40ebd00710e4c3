// softgrip: command-line front end for the accordion gripper model.
//
// Exit codes: 0 success, 1 input/config error, 2 infeasible or out of
// workspace.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "softgrip/softgrip.hpp"

namespace {

using namespace softgrip;
using numerics::format_g;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;

Config resolve_config(const std::string& flag_path) {
  if (!flag_path.empty()) return load_config_file(flag_path);
  if (const char* env = std::getenv("GRIPPER_CONFIG"); env && *env) {
    return load_config_file(env);
  }
  return config_from_json(json::object());
}

MeasurementSeries read_series(const std::string& path, SeriesKind kind) {
  std::ifstream in(path);
  if (!in) throw CalibrationError("cannot open data file '" + path + "'");
  return parse_series_csv(in, kind, path);
}

int cmd_solve(const Config& cfg, double pressure, bool as_json, bool as_printed) {
  const GripperAssembly& a = cfg.assembly;
  const ForwardResult fw = forward(a, pressure);
  const DeformedState& s = fw.state;
  const double quad = pressure_quadrature(a.geometry, s, a.material, a.quadrature_tol);
  json out{{"pressure_kPa", sig9(pressure)},
           {"r0_mm", sig9(s.r_outer)},
           {"r1_mm", sig9(s.r_inner)},
           {"theta0_rad", sig9(s.half_angle)},
           {"theta0_deg", sig9(rad_to_deg(s.half_angle))},
           {"D_mm", sig9(fw.wall_distance_mm)},
           {"Rg_mm", sig9(fw.aperture_mm)},
           {"pin_residual", sig9(pin_residual(a.geometry, s))},
           {"area_residual", sig9(area_residual(a.geometry, s))},
           {"quadrature_check_kPa", sig9(quad)},
           {"in_solver_box", a.box.contains(s)}};
  if (as_printed) {
    out["as_printed_kPa"] = sig9(pressure_closed_form(a.geometry, s, a.material,
                                                      PressureForm::as_printed));
  }
  if (as_json) {
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  std::cout << "pressure      " << format_g(pressure) << " kPa\n"
            << "r0            " << format_g(s.r_outer) << " mm\n"
            << "r1            " << format_g(s.r_inner) << " mm\n"
            << "theta0        " << format_g(s.half_angle) << " rad ("
            << format_g(rad_to_deg(s.half_angle)) << " deg)\n"
            << "D             " << format_g(fw.wall_distance_mm) << " mm\n"
            << "R_g           " << format_g(fw.aperture_mm) << " mm\n"
            << "pin residual  " << format_g(pin_residual(a.geometry, s)) << " mm\n"
            << "area residual " << format_g(area_residual(a.geometry, s)) << " mm^2\n"
            << "quadrature    " << format_g(quad) << " kPa\n";
  if (as_printed) {
    std::cout << "as-printed    " << format_g(out["as_printed_kPa"].get<double>()) << " kPa\n";
  }
  if (!a.box.contains(s)) {
    std::cout << "note: state lies outside the configured r0/r1 box ranges\n";
  }
  return kOk;
}

int cmd_sweep(const Config& cfg, double from, double to, int steps, const std::string& out_path) {
  if (!(from < to)) throw DomainError("sweep requires --from < --to");
  if (steps < 2) throw DomainError("sweep requires --steps >= 2");
  const auto rows = sweep(cfg.assembly, from, to, steps);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
    return kOk;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + out_path + "'");
  f << csv.str();
  f.close();
  if (!f) throw ConfigError("write failed for '" + out_path + "'");
  return kOk;
}

int cmd_validate(const Config& cfg, bool as_json) {
  const ValidationReport rep = run_validation(cfg.assembly, cfg.p_max_kPa);
  if (as_json) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", sig9(c.value)},
                        {"threshold", sig9(c.threshold)}, {"detail", c.detail}});
    }
    json table = json::array();
    for (const auto& r : rep.discrepancy) {
      table.push_back({{"pressure_kPa", sig9(r.pressure_kPa)},
                       {"rederived_kPa", sig9(r.rederived_kPa)},
                       {"as_printed_kPa", sig9(r.as_printed_kPa)},
                       {"quadrature_kPa", sig9(r.quadrature_kPa)},
                       {"analytic_gap_kPa", sig9(r.analytic_gap_kPa)}});
    }
    json out{{"checks", checks},
             {"as_printed_at_identity_kPa", sig9(rep.as_printed_at_identity_kPa)},
             {"discrepancy", table},
             {"points_outside_box", rep.points_outside_box},
             {"sweep_points", rep.sweep_points},
             {"all_passed", rep.all_passed()}};
    std::cout << out.dump(2) << '\n';
  } else {
    for (const auto& c : rep.checks) {
      std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  value=" << format_g(c.value)
                << "  threshold=" << format_g(c.threshold) << "  (" << c.detail << ")\n";
    }
    std::cout << "\nas-printed pressure at zero deformation: "
              << format_g(rep.as_printed_at_identity_kPa) << " kPa\n\n"
              << "pressure_kPa  rederived_kPa  as_printed_kPa  quadrature_kPa  gap_kPa\n";
    for (const auto& r : rep.discrepancy) {
      std::cout << format_g(r.pressure_kPa) << "  " << format_g(r.rederived_kPa) << "  "
                << format_g(r.as_printed_kPa) << "  " << format_g(r.quadrature_kPa) << "  "
                << format_g(r.analytic_gap_kPa) << '\n';
    }
    std::cout << "\nnote: " << rep.points_outside_box << " of " << rep.sweep_points
              << " sweep states lie outside the configured r0/r1 box ranges\n";
  }
  return rep.all_passed() ? kOk : kInputError;
}

int cmd_plan(const Config& cfg, const std::string& object_path) {
  const ObjectDescriptor obj = load_object_file(object_path);
  const Workspace ws = workspace(cfg.assembly, cfg.p_max_kPa);
  const GraspPlan plan = plan_grasp(obj, cfg.assembly, ws, cfg.grasp);
  json out = to_json(plan);
  if (!obj.name.empty()) out["object"] = obj.name;
  std::cout << out.dump(2) << '\n';
  return plan.feasible ? kOk : kInfeasible;
}

int cmd_invert(const Config& cfg, double aperture, bool as_json) {
  const double p = inverse_pressure(cfg.assembly, aperture, cfg.inverse_tol_mm);
  if (as_json) {
    std::cout << json{{"target_Rg_mm", sig9(aperture)}, {"pressure_kPa", sig9(p)}}.dump(2) << '\n';
  } else {
    std::cout << "pressure " << format_g(p) << " kPa\n";
  }
  return kOk;
}

int cmd_workspace(const Config& cfg, std::optional<double> p_max, bool as_json) {
  const double top = p_max.value_or(cfg.p_max_kPa);
  const Workspace ws = workspace(cfg.assembly, top);
  const Interval contract = contraction_diameter_range(ws, cfg.assembly);
  const Interval expand = expansion_diameter_range(ws, cfg.assembly);
  if (as_json) {
    std::cout << json{{"p_max_kPa", sig9(top)},
                      {"min_aperture_mm", sig9(ws.min_aperture_mm)},
                      {"rest_aperture_mm", sig9(ws.rest_aperture_mm)},
                      {"max_aperture_mm", sig9(ws.max_aperture_mm)},
                      {"contraction_diameter_mm", {sig9(contract.lo), sig9(contract.hi)}},
                      {"expansion_diameter_mm", {sig9(expand.lo), sig9(expand.hi)}}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "min aperture   " << format_g(ws.min_aperture_mm) << " mm (configured)\n"
              << "rest aperture  " << format_g(ws.rest_aperture_mm) << " mm\n"
              << "max aperture   " << format_g(ws.max_aperture_mm) << " mm at "
              << format_g(top) << " kPa\n"
              << "contraction object diameters [" << format_g(contract.lo) << ", "
              << format_g(contract.hi) << "] mm\n"
              << "expansion opening diameters  [" << format_g(expand.lo) << ", "
              << format_g(expand.hi) << "] mm\n";
  }
  return kOk;
}

int cmd_fit_c1(const Config& cfg, const std::string& data, double lo, double hi) {
  const MeasurementSeries s = read_series(data, SeriesKind::pressure_aperture);
  const FitReport rep = fit_c1(s, cfg.assembly, C1FitOptions{{lo, hi}});
  std::cout << to_json(rep).dump(2) << '\n';
  if (rep.at_bound) std::cerr << "warning: c1 at search bound\n";
  return kOk;
}

int cmd_fit_suction(const Config& cfg, const std::string& data) {
  const MeasurementSeries s = read_series(data, SeriesKind::suction_force);
  const FitReport rep = fit_suction(s, cfg.assembly, cfg.grasp.suction);
  std::cout << to_json(rep).dump(2) << '\n';
  if (rep.degenerate) std::cerr << "warning: degenerate fit (seal area driven to its bound)\n";
  return kOk;
}

int cmd_peak_force(const std::string& data, int window, bool as_json) {
  const MeasurementSeries s = read_series(data, SeriesKind::force_displacement);
  const double peak = extract_peak_force(s, window);
  if (as_json) {
    std::cout << json{{"peak_force_N", sig9(peak)}, {"window", window}}.dump(2) << '\n';
  } else {
    std::cout << "peak force " << format_g(peak) << " N\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accordion soft gripper model: forward/inverse aperture, grasp planning, "
               "calibration"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config (default: $GRIPPER_CONFIG, then built-in)");

  auto* config_cmd = app.add_subcommand("config", "Configuration utilities");
  bool print_default = false;
  config_cmd->add_flag("--print-default", print_default, "Print the built-in default config");

  auto* solve_cmd = app.add_subcommand("solve", "Deformed chamber state and aperture at a pressure");
  double pressure = 0.0;
  bool json_out = false;
  bool as_printed = false;
  solve_cmd->add_option("--pressure", pressure, "Chamber pressure, kPa")->required();
  solve_cmd->add_flag("--json", json_out, "JSON output");
  solve_cmd->add_flag("--as-printed", as_printed,
                      "Also report the as-printed closed-form pressure at the solved state");

  auto* sweep_cmd = app.add_subcommand("sweep", "Pressure sweep to CSV");
  double from = 0.0;
  double to = 40.0;
  int steps = 41;
  std::string out_path;
  sweep_cmd->add_option("--from", from, "Start pressure, kPa")->capture_default_str();
  sweep_cmd->add_option("--to", to, "End pressure, kPa")->capture_default_str();
  sweep_cmd->add_option("--steps", steps, "Number of pressures (>= 2)")->capture_default_str();
  sweep_cmd->add_option("--out", out_path, "Output CSV path (default stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "Run the model self-check suite");
  validate_cmd->add_flag("--json", json_out, "JSON output");

  auto* plan_cmd = app.add_subcommand("plan", "Grasp plan for an object descriptor");
  std::string object_path;
  plan_cmd->add_option("--object", object_path, "object.json")->required();

  auto* invert_cmd = app.add_subcommand("invert", "Pressure for a target aperture radius");
  double aperture = 0.0;
  invert_cmd->add_option("--aperture", aperture, "Target R_g, mm")->required();
  invert_cmd->add_flag("--json", json_out, "JSON output");

  auto* ws_cmd = app.add_subcommand("workspace", "Reachable aperture range");
  std::optional<double> p_max;
  ws_cmd->add_option("--p-max", p_max, "Maximum inflation pressure, kPa");
  ws_cmd->add_flag("--json", json_out, "JSON output");

  auto* fit_c1_cmd = app.add_subcommand("fit-c1", "Fit the material constant to aperture data");
  std::string data_path;
  double c1_lo = 10.0;
  double c1_hi = 1000.0;
  fit_c1_cmd->add_option("--data", data_path, "CSV: pressure_kPa,aperture_mm")->required();
  fit_c1_cmd->add_option("--c1-min", c1_lo, "Lower search bound, kPa")->capture_default_str();
  fit_c1_cmd->add_option("--c1-max", c1_hi, "Upper search bound, kPa")->capture_default_str();

  auto* fit_suction_cmd = app.add_subcommand("fit-suction", "Fit suction seal area and height");
  fit_suction_cmd->add_option("--data", data_path, "CSV: pressure_kPa,force_N")->required();

  auto* peak_cmd = app.add_subcommand("peak-force", "Peak of a force-displacement trace");
  int window = 1;
  peak_cmd->add_option("--data", data_path, "CSV: displacement_mm,force_N")->required();
  peak_cmd->add_option("--window", window, "Moving-average window (odd)")->capture_default_str();
  peak_cmd->add_flag("--json", json_out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (config_cmd->parsed()) {
      if (!print_default) {
        std::cerr << "config: nothing to do (try --print-default)\n";
        return kInputError;
      }
      std::cout << default_config_json().dump(2) << '\n';
      return kOk;
    }
    if (peak_cmd->parsed()) return cmd_peak_force(data_path, window, json_out);

    const Config cfg = resolve_config(config_path);
    if (solve_cmd->parsed()) return cmd_solve(cfg, pressure, json_out, as_printed);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, from, to, steps, out_path);
    if (validate_cmd->parsed()) return cmd_validate(cfg, json_out);
    if (plan_cmd->parsed()) return cmd_plan(cfg, object_path);
    if (invert_cmd->parsed()) return cmd_invert(cfg, aperture, json_out);
    if (ws_cmd->parsed()) return cmd_workspace(cfg, p_max, json_out);
    if (fit_c1_cmd->parsed()) return cmd_fit_c1(cfg, data_path, c1_lo, c1_hi);
    if (fit_suction_cmd->parsed()) return cmd_fit_suction(cfg, data_path);
  } catch (const OutOfWorkspace& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
