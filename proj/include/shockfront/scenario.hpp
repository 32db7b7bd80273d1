#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "shockfront/ansatz.hpp"
#include "shockfront/csv.hpp"
#include "shockfront/errors.hpp"
#include "shockfront/flux.hpp"
#include "shockfront/godunov.hpp"
#include "shockfront/kernels.hpp"
#include "shockfront/numeric.hpp"
#include "shockfront/phase_dynamics.hpp"
#include "shockfront/switches.hpp"
#include "shockfront/weak_residual.hpp"

namespace shockfront {

using nlohmann::json;

struct RunResult {
  std::filesystem::path out_dir;
  std::vector<std::string> files; // everything emitted, manifest last
  std::vector<std::pair<std::string, double>> summary;

  double summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
      if (k == key)
        return v;
    throw std::invalid_argument("RunResult: no summary key '" + key + "'");
  }
};

struct RunOverrides {
  std::optional<std::string> out_dir;
  std::vector<double> eps; // replaces the config eps list when nonempty
  std::optional<int> cells;
};

namespace config {

inline void check_keys(const json& obj, const std::set<std::string>& allowed,
                       const std::string& path) {
  if (!obj.is_object())
    throw config_error(path + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw config_error(path + "." + it.key() + ": unknown key");
}

inline const json& require(const json& obj, const std::string& key,
                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw config_error(path + "." + key + ": missing");
  return *it;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number())
    throw config_error(path + ": expected a number");
  return j.get<double>();
}

inline double number_or(const json& obj, const std::string& key, double dflt,
                        const std::string& path) {
  auto it = obj.find(key);
  return it == obj.end() ? dflt : number(*it, path + "." + key);
}

inline int integer_or(const json& obj, const std::string& key, int dflt,
                      const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end())
    return dflt;
  if (!it->is_number_integer())
    throw config_error(path + "." + key + ": expected an integer");
  return it->get<int>();
}

inline std::string text_or(const json& obj, const std::string& key,
                           const std::string& dflt, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end())
    return dflt;
  if (!it->is_string())
    throw config_error(path + "." + key + ": expected a string");
  return it->get<std::string>();
}

inline std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw config_error(path + ": expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Kernel parse_kernel(const json& j, const std::string& path) {
  check_keys(j, {"family", "width", "radius", "shift", "z", "density"}, path);
  const std::string family = text_or(j, "family", "", path);
  Kernel k = [&] {
    if (family == "gaussian")
      return Kernel::gaussian(number_or(j, "width", 1.0, path));
    if (family == "bump")
      return Kernel::bump(number_or(j, "radius", 1.0, path));
    if (family == "tabulated")
      return Kernel::tabulated(number_list(require(j, "z", path), path + ".z"),
                               number_list(require(j, "density", path),
                                           path + ".density"));
    throw config_error(path + ".family: expected gaussian|bump|tabulated");
  }();
  const double shift = number_or(j, "shift", 0.0, path);
  return shift == 0.0 ? k : k.shifted(shift);
}

inline std::pair<Kernel, Kernel> parse_kernel_pair(const json& j,
                                                   const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw config_error(path + ": expected an array of two kernels");
  return {parse_kernel(j[0], path + "[0]"), parse_kernel(j[1], path + "[1]")};
}

inline FluxFunction parse_flux(const json& j, const std::string& path) {
  if (j.is_string())
    try {
      return FluxFunction::from_label(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw config_error(path + ": " + e.what());
    }
  check_keys(j, {"u", "f"}, path);
  return FluxFunction::tabulated(
      number_list(require(j, "u", path), path + ".u"),
      number_list(require(j, "f", path), path + ".f"));
}

inline TwoShockState parse_state(const json& j, const std::string& path) {
  check_keys(j, {"u0", "e1", "e2", "x1", "x2"}, path);
  TwoShockState s{number(require(j, "u0", path), path + ".u0"),
                  number(require(j, "e1", path), path + ".e1"),
                  number(require(j, "e2", path), path + ".e2"),
                  number_or(j, "x1", 0.0, path),
                  number_or(j, "x2", 1.0, path)};
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw config_error(path + ": " + e.what());
  }
  return s;
}

/// Smooth 1D profiles used for single-shock backgrounds and amplitudes.
inline std::function<double(double)> parse_profile(const json& j,
                                                   const std::string& path) {
  check_keys(j, {"type", "value", "slope", "intercept", "base", "scale",
                 "center", "width"},
             path);
  const std::string type = text_or(j, "type", "", path);
  if (type == "constant") {
    const double v = number(require(j, "value", path), path + ".value");
    return [v](double) { return v; };
  }
  if (type == "linear") {
    const double m = number(require(j, "slope", path), path + ".slope");
    const double b = number_or(j, "intercept", 0.0, path);
    return [m, b](double x) { return m * x + b; };
  }
  if (type == "tanh") {
    const double base = number(require(j, "base", path), path + ".base");
    const double scale = number(require(j, "scale", path), path + ".scale");
    const double center = number_or(j, "center", 0.0, path);
    const double width = number_or(j, "width", 1.0, path);
    return [base, scale, center, width](double x) {
      return base + scale * std::tanh((x - center) / width);
    };
  }
  throw config_error(path + ".type: expected constant|linear|tanh");
}

/// Table kind selection: "auto" picks the closed-form path for the
/// quadratic flux, the flux-driven path otherwise.
inline SwitchTable::Kind parse_path(const json& obj, const FluxFunction& f,
                                    const std::string& path) {
  const std::string p = text_or(obj, "path", "auto", path);
  if (p == "hopf") {
    if (f.label() != "u2")
      throw config_error(path + ".path: hopf path requires the u2 flux");
    return SwitchTable::Kind::hopf;
  }
  if (p == "general")
    return SwitchTable::Kind::general;
  if (p == "auto")
    return f.label() == "u2" ? SwitchTable::Kind::hopf
                             : SwitchTable::Kind::general;
  throw config_error(path + ".path: expected auto|hopf|general");
}

} // namespace config

namespace detail {

inline SwitchTable make_table(SwitchTable::Kind kind, const FluxFunction& f,
                              const TwoShockState& s, const Kernel& k1,
                              const Kernel& k2, double rho_max = 0.0,
                              int n = 4097) {
  if (kind == SwitchTable::Kind::hopf)
    return build_switch_table_hopf(k1, k2, rho_max, n);
  return build_switch_table(f, s.u0, s.e1, s.e2, k1, k2, rho_max, n);
}

inline MergeEvent merge_for(SwitchTable::Kind kind, const FluxFunction& f,
                            const TwoShockState& s) {
  return kind == SwitchTable::Kind::hopf ? hopf::merge_point(s)
                                         : merge_point(f, s);
}

inline std::pair<double, double> limits_for(SwitchTable::Kind kind,
                                            const FluxFunction& f,
                                            const TwoShockState& s, double t) {
  return kind == SwitchTable::Kind::hopf ? hopf::limit_phases(s, t)
                                         : limit_phases(f, s, t);
}

/// Domain wide enough that the constant far fields reach the boundary for
/// the whole horizon (copy boundaries are then exact).
inline std::pair<double, double> oracle_domain(const MergeEvent& ev,
                                               const TwoShockState& s,
                                               double t_end) {
  const double lo =
      std::min({s.x1_0, s.x1_0 + ev.speed1 * t_end, s.x2_0 + ev.speed2 * t_end,
                ev.x_star + ev.post_speed * t_end});
  const double hi =
      std::max({s.x2_0, s.x1_0 + ev.speed1 * t_end, s.x2_0 + ev.speed2 * t_end,
                ev.x_star + ev.post_speed * t_end});
  const double margin = 1.0 + 0.1 * (hi - lo);
  return {lo - margin, hi + margin};
}

inline void write_summary(const std::filesystem::path& dir,
                          const std::vector<std::pair<std::string, double>>& kv,
                          std::vector<std::string>& files) {
  CsvWriter csv(dir / "summary.csv");
  csv.header({"key", "value"});
  for (const auto& [k, v] : kv)
    csv.text_row({k, format_number(v)});
  files.push_back("summary.csv");
}

inline void write_oracle_snapshot(const GridSolution& g, double t,
                                  const std::filesystem::path& path) {
  CsvWriter csv(path);
  csv.comment("flux = " + g.flux_label);
  csv.comment("n_cells = " + std::to_string(g.n_cells) +
              ", cfl = " + format_compact(g.cfl));
  csv.comment("t = " + format_compact(t));
  csv.header({"x_center", "u"});
  const auto centers = g.centers();
  const auto& u = g.at_time(t);
  for (std::size_t i = 0; i < u.size(); ++i)
    csv.row({centers[i], u[i]});
}

inline void write_manifest(const std::filesystem::path& dir,
                           const std::string& name,
                           std::vector<std::string>& files) {
  json m;
  m["scenario"] = name;
  m["files"] = json::array();
  for (const auto& f : files) {
    json entry;
    entry["name"] = f;
    entry["bytes"] = static_cast<std::uint64_t>(
        std::filesystem::file_size(dir / f));
    entry["fnv1a64"] = hex64(fnv1a64_file(dir / f));
    m["files"].push_back(entry);
  }
  std::ofstream out(dir / "manifest.json");
  out << m.dump(2) << "\n";
  files.push_back("manifest.json");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scenario runners
// ---------------------------------------------------------------------------

inline RunResult run_two_shock(const json& cfg,
                               const std::filesystem::path& dir,
                               const RunOverrides& ov) {
  config::check_keys(cfg, {"schema_version", "kind", "flux", "state", "kernels",
                           "numerics", "output"},
                     "config");
  const FluxFunction flux =
      config::parse_flux(config::require(cfg, "flux", "config"), "config.flux");
  const TwoShockState state = config::parse_state(
      config::require(cfg, "state", "config"), "config.state");
  const auto [k1, k2] = config::parse_kernel_pair(
      config::require(cfg, "kernels", "config"), "config.kernels");
  const json num = cfg.value("numerics", json::object());
  config::check_keys(num, {"eps", "tau_max", "tau_step", "t_max", "t_samples",
                           "path", "table_n"},
                     "config.numerics");
  const double tau_max = config::number_or(num, "tau_max", 50.0, "config.numerics");
  const double tau_step = config::number_or(num, "tau_step", 0.01, "config.numerics");
  const int table_n = config::integer_or(num, "table_n", 4097, "config.numerics");
  std::vector<double> eps = ov.eps;
  if (eps.empty())
    eps = num.contains("eps")
              ? config::number_list(num["eps"], "config.numerics.eps")
              : std::vector<double>{0.1, 0.05};
  const SwitchTable::Kind kind = config::parse_path(num, flux, "config.numerics");

  const SwitchTable table = detail::make_table(kind, flux, state, k1, k2, 0.0, table_n);
  const PhaseSet phases = build_phase_set(flux, state, table, tau_max, tau_step);
  const MergeEvent& ev = phases.merge();
  const double t_max =
      config::number_or(num, "t_max", 2.0 * ev.t_star, "config.numerics");
  const int t_samples = config::integer_or(num, "t_samples", 201, "config.numerics");

  RunResult res;
  res.out_dir = dir;

  {
    CsvWriter csv(dir / "rho.csv");
    csv.comment("fast-variable solution d rho/d tau = F(rho), rho(tau_max) = tau_max");
    csv.comment("flux = " + flux.label());
    csv.header({"tau", "rho", "F"});
    const auto& rho = phases.rho();
    for (std::size_t i = 0; i < rho.tau_grid().size(); i += 10)
      csv.row({rho.tau_grid()[i], rho.rho_values()[i],
               rho.rhs(rho.rho_values()[i])});
    res.files.push_back("rho.csv");
  }
  {
    CsvWriter csv(dir / "perturbations.csv");
    csv.comment("phase perturbations of the fast variable");
    csv.header({"tau", "phi11", "phi21"});
    const auto& rho = phases.rho();
    for (std::size_t i = 0; i < rho.tau_grid().size(); i += 10)
      csv.row({rho.tau_grid()[i], phases.phi11_values()[i],
               phases.phi21_values()[i]});
    res.files.push_back("perturbations.csv");
  }
  for (double e : eps) {
    const std::string name = "trajectories_eps" + format_compact(e) + ".csv";
    CsvWriter csv(dir / name);
    csv.comment("front trajectories at eps = " + format_compact(e) +
                " against the piecewise-linear limit");
    csv.header({"t", "phi1", "phi2", "phi1_limit", "phi2_limit"});
    for (int i = 0; i < t_samples; ++i) {
      const double t = t_max * static_cast<double>(i) / (t_samples - 1);
      const auto [p1, p2] = phases.full_phase(t, e);
      const auto [l1, l2] = detail::limits_for(kind, flux, state, t);
      csv.row({t, p1, p2, l1, l2});
    }
    res.files.push_back(name);
  }

  const auto& rho = phases.rho();
  res.summary = {{"t_star", ev.t_star},
                 {"x_star", ev.x_star},
                 {"speed1", ev.speed1},
                 {"speed2", ev.speed2},
                 {"post_speed", ev.post_speed},
                 {"rho0", rho.rho0()},
                 {"rho_residual_at_minus_tau_max",
                  std::abs(rho.rho_values().front() - rho.rho0())},
                 {"phi11_limit", phases.phi11_limit()},
                 {"phi21_limit", phases.phi21_limit()}};
  detail::write_summary(dir, res.summary, res.files);
  return res;
}

inline RunResult run_rho_profile(const json& cfg,
                                 const std::filesystem::path& dir,
                                 const RunOverrides&) {
  config::check_keys(cfg, {"schema_version", "kind", "flux", "state", "kernels",
                           "numerics", "output"},
                     "config");
  const FluxFunction flux =
      config::parse_flux(config::require(cfg, "flux", "config"), "config.flux");
  const TwoShockState state = config::parse_state(
      config::require(cfg, "state", "config"), "config.state");
  const auto [k1, k2] = config::parse_kernel_pair(
      config::require(cfg, "kernels", "config"), "config.kernels");
  const json num = cfg.value("numerics", json::object());
  config::check_keys(num, {"tau_max", "tau_step", "path", "table_n"},
                     "config.numerics");
  const double tau_max = config::number_or(num, "tau_max", 50.0, "config.numerics");
  const double tau_step = config::number_or(num, "tau_step", 0.01, "config.numerics");
  const int table_n = config::integer_or(num, "table_n", 4097, "config.numerics");
  const SwitchTable::Kind kind = config::parse_path(num, flux, "config.numerics");

  const SwitchTable table =
      detail::make_table(kind, flux, state, k1, k2, 0.0, table_n);
  const RhoSolution rho = solve_rho(table, state, flux, tau_max, tau_step);

  RunResult res;
  res.out_dir = dir;
  {
    CsvWriter csv(dir / "rho.csv");
    csv.comment("fast-variable solution and right-hand side");
    csv.header({"tau", "rho", "F"});
    for (std::size_t i = 0; i < rho.tau_grid().size(); i += 5)
      csv.row({rho.tau_grid()[i], rho.rho_values()[i],
               rho.rhs(rho.rho_values()[i])});
    res.files.push_back("rho.csv");
  }

  // Exponential-decay fit on the clean stretch of the tail.
  std::vector<double> lt, lv;
  for (std::size_t i = 0; i < rho.tau_grid().size(); ++i) {
    const double d = std::abs(rho.rho_values()[i] - rho.rho0());
    if (rho.tau_grid()[i] <= -5.0 && d > 1e-12 && d < 1e-3) {
      lt.push_back(rho.tau_grid()[i]);
      lv.push_back(std::log(d));
    }
  }
  const double rate = lt.size() >= 8 ? fitted_slope(lt, lv) : 0.0;

  res.summary = {{"rho0", rho.rho0()},
                 {"rho_residual_at_minus_tau_max",
                  std::abs(rho.rho_values().front() - rho.rho0())},
                 {"F_prime_at_rho0", rho.rhs_prime(rho.rho0())},
                 {"fitted_decay_rate", rate}};
  detail::write_summary(dir, res.summary, res.files);
  return res;
}

inline RunResult run_switch_table(const json& cfg,
                                  const std::filesystem::path& dir,
                                  const RunOverrides&) {
  config::check_keys(cfg, {"schema_version", "kind", "flux", "state", "kernels",
                           "numerics", "output"},
                     "config");
  const auto [k1, k2] = config::parse_kernel_pair(
      config::require(cfg, "kernels", "config"), "config.kernels");
  const json num = cfg.value("numerics", json::object());
  config::check_keys(num, {"rho_max", "n", "path"}, "config.numerics");
  const double rho_max = config::number_or(num, "rho_max", 0.0, "config.numerics");
  const int n = config::integer_or(num, "n", 1025, "config.numerics");

  FluxFunction flux = FluxFunction::quadratic();
  TwoShockState state{0.0, 1.0, 1.0, 0.0, 1.0};
  if (cfg.contains("flux"))
    flux = config::parse_flux(cfg["flux"], "config.flux");
  if (cfg.contains("state"))
    state = config::parse_state(cfg["state"], "config.state");
  const SwitchTable::Kind kind = config::parse_path(num, flux, "config.numerics");

  const SwitchTable table =
      detail::make_table(kind, flux, state, k1, k2, rho_max, n);

  RunResult res;
  res.out_dir = dir;
  {
    CsvWriter csv(dir / "switch_table.csv");
    csv.comment("interaction switches; sum_residual = b1 + b2 - saturation");
    csv.comment("flux = " + flux.label());
    csv.header({"rho", "b1", "b2", "sum_residual"});
    const double sat = table.saturation_hi();
    for (double rho : table.rho_grid()) {
      const double b1 = table.exact(rho);
      const double b2 =
          kind == SwitchTable::Kind::hopf
              ? b2_hopf(k1, k2, rho)
              : b2_general(flux, state.u0, state.e1, state.e2, k1, k2, rho);
      csv.row({rho, b1, b2, b1 + b2 - sat});
    }
    res.files.push_back("switch_table.csv");
  }
  const double half_root =
      solve_switch_root(table, 0.5 * (table.saturation_lo() +
                                      table.saturation_hi()));
  res.summary = {{"saturation", table.saturation_hi()},
                 {"rho_max", table.rho_max()},
                 {"rho_at_half_saturation", half_root}};
  detail::write_summary(dir, res.summary, res.files);
  return res;
}

inline RunResult run_residual_sweep(const json& cfg,
                                    const std::filesystem::path& dir,
                                    const RunOverrides& ov) {
  config::check_keys(cfg, {"schema_version", "kind", "flux", "state", "kernels",
                           "numerics", "output"},
                     "config");
  const FluxFunction flux =
      config::parse_flux(config::require(cfg, "flux", "config"), "config.flux");
  const TwoShockState state = config::parse_state(
      config::require(cfg, "state", "config"), "config.state");
  const auto [k1, k2] = config::parse_kernel_pair(
      config::require(cfg, "kernels", "config"), "config.kernels");
  const json num = cfg.value("numerics", json::object());
  config::check_keys(num, {"eps", "tau_max", "tau_step", "path", "t_values",
                           "tf_centers", "tf_radii", "tf_radius", "table_n"},
                     "config.numerics");
  std::vector<double> eps = ov.eps;
  if (eps.empty())
    eps = num.contains("eps")
              ? config::number_list(num["eps"], "config.numerics.eps")
              : std::vector<double>{0.1, 0.05, 0.025, 0.0125};
  const double tau_max = config::number_or(num, "tau_max", 50.0, "config.numerics");
  const double tau_step = config::number_or(num, "tau_step", 0.01, "config.numerics");
  const int table_n = config::integer_or(num, "table_n", 4097, "config.numerics");
  const SwitchTable::Kind kind = config::parse_path(num, flux, "config.numerics");

  const SwitchTable table =
      detail::make_table(kind, flux, state, k1, k2, 0.0, table_n);
  const PhaseSet phases = build_phase_set(flux, state, table, tau_max, tau_step);
  const double t_star = phases.merge().t_star;

  std::vector<double> t_grid;
  if (num.contains("t_values"))
    t_grid = config::number_list(num["t_values"], "config.numerics.t_values");
  else
    for (int i = 1; i <= 9; ++i)
      t_grid.push_back(t_star * 0.2 * i);

  const double span = std::max({std::abs(phases.merge().x_star - state.x1_0),
                                std::abs(phases.merge().x_star - state.x2_0),
                                1.0});
  std::vector<double> centers;
  if (num.contains("tf_centers"))
    centers = config::number_list(num["tf_centers"], "config.numerics.tf_centers");
  else
    for (double m : {-1.0, -0.5, 0.0, 0.5, 1.0})
      centers.push_back(phases.merge().x_star + 0.8 * span * m);
  std::vector<double> radii;
  if (num.contains("tf_radii")) {
    radii = config::number_list(num["tf_radii"], "config.numerics.tf_radii");
    if (radii.size() != centers.size())
      throw config_error("config.numerics.tf_radii: length must match tf_centers");
  } else {
    radii.assign(centers.size(),
                 config::number_or(num, "tf_radius", 0.6 * span,
                                   "config.numerics"));
  }
  std::vector<BumpTestFunction> tfs;
  for (std::size_t i = 0; i < centers.size(); ++i)
    tfs.emplace_back(centers[i], radii[i]);

  const ResidualReport rep =
      epsilon_sweep(flux, k1, k2, phases, t_grid, tfs, eps);

  RunResult res;
  res.out_dir = dir;
  {
    CsvWriter csv(dir / "residual.csv");
    csv.comment("equation residual <d_t u*, tf> - <f(u*), tf'>");
    csv.header({"eps", "t", "tf_index", "residual", "fully_resolved"});
    for (const auto& row : rep.rows)
      csv.row({row.eps, row.t, static_cast<double>(row.tf_index), row.value,
               row.fully_resolved ? 1.0 : 0.0});
    res.files.push_back("residual.csv");
  }
  {
    CsvWriter csv(dir / "orders.csv");
    csv.comment("per-time fitted order of the residual norm in eps");
    csv.header({"t", "order", "uniformity"});
    for (std::size_t i = 0; i < rep.t_values.size(); ++i)
      csv.row({rep.t_values[i], rep.order_per_t[i], rep.uniformity[i]});
    res.files.push_back("orders.csv");
  }
  res.summary = {{"fitted_order", rep.fitted_order},
                 {"uniformity_gap", rep.uniformity_gap},
                 {"uniformity_ratio", rep.uniformity_ratio},
                 {"t_star", t_star}};
  detail::write_summary(dir, res.summary, res.files);
  return res;
}

inline RunResult run_oracle_compare(const json& cfg,
                                    const std::filesystem::path& dir,
                                    const RunOverrides& ov) {
  config::check_keys(cfg, {"schema_version", "kind", "flux", "state", "kernels",
                           "numerics", "output"},
                     "config");
  const FluxFunction flux =
      config::parse_flux(config::require(cfg, "flux", "config"), "config.flux");
  const TwoShockState state = config::parse_state(
      config::require(cfg, "state", "config"), "config.state");
  const auto [k1, k2] = config::parse_kernel_pair(
      config::require(cfg, "kernels", "config"), "config.kernels");
  const json num = cfg.value("numerics", json::object());
  config::check_keys(num, {"eps", "cells", "cfl", "times", "path", "tau_max",
                           "tau_step", "table_n"},
                     "config.numerics");
  const double eps_value = !ov.eps.empty()
                               ? ov.eps.front()
                               : config::number_or(num, "eps", 0.02, "config.numerics");
  const int cells = ov.cells.value_or(
      config::integer_or(num, "cells", 4096, "config.numerics"));
  const double cfl = config::number_or(num, "cfl", 0.9, "config.numerics");
  const double tau_max = config::number_or(num, "tau_max", 50.0, "config.numerics");
  const double tau_step = config::number_or(num, "tau_step", 0.01, "config.numerics");
  const int table_n = config::integer_or(num, "table_n", 4097, "config.numerics");
  const SwitchTable::Kind kind = config::parse_path(num, flux, "config.numerics");

  const SwitchTable table =
      detail::make_table(kind, flux, state, k1, k2, 0.0, table_n);
  const PhaseSet phases = build_phase_set(flux, state, table, tau_max, tau_step);
  const MergeEvent& ev = phases.merge();

  std::vector<double> times;
  if (num.contains("times"))
    times = config::number_list(num["times"], "config.numerics.times");
  else
    times = {0.5 * ev.t_star, ev.t_star, 1.5 * ev.t_star, 2.0 * ev.t_star};
  std::sort(times.begin(), times.end());

  const auto [lo, hi] = detail::oracle_domain(ev, state, times.back());
  const LimitSolution limit(flux, state);
  const GridSolution oracle = godunov_solve(
      flux, [&](double x) { return limit(x, 0.0); }, lo, hi, cells, times, cfl);
  const SmoothAnsatz ansatz(flux, k1, k2, phases, eps_value);

  RunResult res;
  res.out_dir = dir;
  {
    CsvWriter csv(dir / "fields.csv");
    csv.comment("smoothed ansatz vs singular limit vs entropy reference");
    csv.comment("eps = " + format_number(eps_value) +
                ", cells = " + std::to_string(cells));
    csv.header({"x", "t", "u_ansatz", "u_limit", "u_oracle"});
    const auto centers = oracle.centers();
    for (double t : times) {
      const auto& u = oracle.at_time(t);
      for (std::size_t i = 0; i < centers.size(); ++i)
        csv.row({centers[i], t, ansatz(centers[i], t), limit(centers[i], t),
                 u[i]});
    }
    res.files.push_back("fields.csv");
  }

  for (double t : times) {
    const std::string name = "oracle_t" + format_compact(t) + ".csv";
    detail::write_oracle_snapshot(oracle, t, dir / name);
    res.files.push_back(name);
  }

  double max_err = 0.0;
  {
    CsvWriter csv(dir / "positions.csv");
    csv.comment("extracted reference shock positions vs limit trajectories");
    csv.header({"t", "phi1_limit", "phi2_limit", "n_extracted", "pos_error"});
    const double threshold = 0.5 * std::min(state.e1, state.e2);
    for (double t : times) {
      const auto [p1, p2] = limit.fronts(t);
      const auto pos = extract_shock_positions(oracle, t, threshold);
      double err = std::numeric_limits<double>::infinity();
      if (!pos.empty()) {
        err = 0.0;
        for (double p : {p1, p2}) {
          double best = std::numeric_limits<double>::infinity();
          for (double q : pos)
            best = std::min(best, std::abs(q - p));
          err = std::max(err, best);
        }
      }
      max_err = std::max(max_err, err);
      csv.row({t, p1, p2, static_cast<double>(pos.size()), err});
    }
    res.files.push_back("positions.csv");
  }

  res.summary = {{"t_star", ev.t_star},
                 {"x_star", ev.x_star},
                 {"max_position_error", max_err},
                 {"two_dx", 2.0 * oracle.dx()},
                 {"l1_final", l1_distance(oracle, limit, times.back())},
                 {"mass_balance_defect", oracle.mass_balance_defect}};
  detail::write_summary(dir, res.summary, res.files);
  return res;
}

inline RunResult run_single_shock(const json& cfg,
                                  const std::filesystem::path& dir,
                                  const RunOverrides& ov) {
  config::check_keys(cfg, {"schema_version", "kind", "flux", "state",
                           "numerics", "output"},
                     "config");
  const FluxFunction flux =
      config::parse_flux(config::require(cfg, "flux", "config"), "config.flux");
  const json st = config::require(cfg, "state", "config");
  config::check_keys(st, {"background", "amplitude", "x0"}, "config.state");
  SingleShockState state;
  state.background = config::parse_profile(
      config::require(st, "background", "config.state"), "config.state.background");
  state.amplitude = config::parse_profile(
      config::require(st, "amplitude", "config.state"), "config.state.amplitude");
  state.front_x0 = config::number_or(st, "x0", 0.0, "config.state");

  const json num = cfg.value("numerics", json::object());
  config::check_keys(num, {"t_max", "t_samples", "x_min", "x_max", "x_samples",
                           "cells", "cfl", "compare_oracle"},
                     "config.numerics");
  const double t_max = config::number_or(num, "t_max", 1.0, "config.numerics");
  const int t_samples = config::integer_or(num, "t_samples", 51, "config.numerics");
  const double x_min = config::number_or(num, "x_min", state.front_x0 - 6.0,
                                         "config.numerics");
  const double x_max = config::number_or(num, "x_max", state.front_x0 + 6.0,
                                         "config.numerics");
  const int x_samples = config::integer_or(num, "x_samples", 401, "config.numerics");
  const int cells = ov.cells.value_or(
      config::integer_or(num, "cells", 4096, "config.numerics"));
  const double cfl = config::number_or(num, "cfl", 0.9, "config.numerics");
  const bool compare = num.value("compare_oracle", true);

  const std::vector<double> t_grid = linspace(0.0, t_max, t_samples);
  const std::vector<double> x_grid = linspace(x_min, x_max, x_samples);
  const SingleShockSolution sol = single_shock_solve(flux, state, t_grid, x_grid);

  RunResult res;
  res.out_dir = dir;

  std::optional<GridSolution> oracle;
  if (compare) {
    auto initial = [&](double x) {
      return state.background(x) + (x < state.front_x0 ? state.amplitude(x) : 0.0);
    };
    oracle = godunov_solve(flux, initial, x_min, x_max, cells, t_grid, cfl);
  }

  double max_front_err = 0.0;
  {
    CsvWriter csv(dir / "front.csv");
    csv.comment("front trajectory from the jump condition over characteristics");
    csv.header({"t", "phi", "phi_oracle"});
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      double oracle_pos = std::numeric_limits<double>::quiet_NaN();
      if (oracle) {
        const double e_here = state.amplitude(sol.front()[i]);
        const auto pos = extract_shock_positions(*oracle, t_grid[i],
                                                 0.5 * std::abs(e_here));
        double best = std::numeric_limits<double>::infinity();
        for (double p : pos)
          if (std::abs(p - sol.front()[i]) < best) {
            best = std::abs(p - sol.front()[i]);
            oracle_pos = p;
          }
        if (pos.empty())
          best = std::numeric_limits<double>::infinity();
        else
          max_front_err = std::max(max_front_err, best);
      }
      csv.row({t_grid[i], sol.front()[i], oracle_pos});
    }
    res.files.push_back("front.csv");
  }
  {
    CsvWriter csv(dir / "field.csv");
    csv.comment("field at the final time");
    csv.header({"x", "u"});
    for (double x : x_grid)
      csv.row({x, sol.field(x, t_max)});
    res.files.push_back("field.csv");
  }
  if (oracle) {
    detail::write_oracle_snapshot(*oracle, t_max, dir / "oracle_final.csv");
    res.files.push_back("oracle_final.csv");
  }

  res.summary = {{"existence_bound", existence_time_bound(flux, state, x_grid)},
                 {"front_final", sol.front().back()},
                 {"max_front_error", max_front_err}};
  if (oracle)
    res.summary.emplace_back("two_dx", 2.0 * oracle->dx());
  detail::write_summary(dir, res.summary, res.files);
  return res;
}

inline RunResult run_naive_w(const json& cfg, const std::filesystem::path& dir,
                             const RunOverrides& ov) {
  config::check_keys(cfg, {"schema_version", "kind", "a", "numerics", "output"},
                     "config");
  const double a = config::number(config::require(cfg, "a", "config"), "config.a");
  const json num = cfg.value("numerics", json::object());
  config::check_keys(num, {"t_samples", "cells", "cfl", "compare_time"},
                     "config.numerics");
  const int t_samples = config::integer_or(num, "t_samples", 201, "config.numerics");
  const int cells = ov.cells.value_or(
      config::integer_or(num, "cells", 4096, "config.numerics"));
  const double cfl = config::number_or(num, "cfl", 0.9, "config.numerics");

  NaiveScenario w(a);
  const double compare_time = config::number_or(
      num, "compare_time", 1.0 + 0.5 / a + 0.25, "config.numerics");

  RunResult res;
  res.out_dir = dir;
  {
    CsvWriter csv(dir / "w_trajectory.csv");
    csv.comment("nonmonotone jump trajectory of the naive construction");
    csv.comment("a = " + format_number(a));
    csv.header({"t", "phi", "phi_dot"});
    const double t_hi = 0.999 * w.collapse_time();
    for (int i = 0; i < t_samples; ++i) {
      const double t = t_hi * static_cast<double>(i) / (t_samples - 1);
      csv.row({t, w.phi(t), w.phi_dot(t)});
    }
    res.files.push_back("w_trajectory.csv");
  }

  // Entropy reference for the merged two-shock data; the pasted
  // continuation stays an O(1) distance away from it however fine the grid.
  NaiveContinuation naive(a);
  const FluxFunction flux = FluxFunction::quadratic();
  const TwoShockState state{-1.0, 1.0, 1.0, -1.0, 1.0};
  const LimitSolution limit(flux, state);
  auto initial = [&](double x) { return limit(x, 0.0); };

  auto l1_at = [&](int n) {
    const GridSolution g = godunov_solve(flux, initial, -4.0, 4.0, n,
                                         {compare_time}, cfl);
    return l1_distance(
        g, [&](double x) { return naive(x, compare_time); }, compare_time);
  };
  const double l1_coarse = l1_at(cells / 2);
  const double l1_fine = l1_at(cells);

  {
    CsvWriter csv(dir / "continuation.csv");
    csv.comment("naive continuation profile at the comparison time");
    csv.header({"x", "u_naive", "u_entropy"});
    for (int i = 0; i <= 400; ++i) {
      const double x = -4.0 + 8.0 * i / 400.0;
      csv.row({x, naive(x, compare_time), limit(x, compare_time)});
    }
    res.files.push_back("continuation.csv");
  }

  res.summary = {{"a", a},
                 {"phi_dot_0", w.phi_dot(0.0)},
                 {"collapse_time", w.collapse_time()},
                 {"compare_time", compare_time},
                 {"l1_coarse", l1_coarse},
                 {"l1_fine", l1_fine},
                 {"l1_ratio", l1_coarse > 0.0 ? l1_fine / l1_coarse : 0.0}};
  detail::write_summary(dir, res.summary, res.files);
  return res;
}

// ---------------------------------------------------------------------------
// Dispatch, bundled gallery
// ---------------------------------------------------------------------------

inline RunResult run_scenario(const json& cfg,
                              const std::filesystem::path& out_dir,
                              const RunOverrides& ov = {},
                              const std::string& name = "scenario") {
  if (!cfg.is_object())
    throw config_error("config: expected a JSON object");
  const int version = config::integer_or(cfg, "schema_version", 0, "config");
  if (version != 1)
    throw config_error("config.schema_version: expected 1");
  const std::string kind = config::text_or(cfg, "kind", "", "config");

  std::filesystem::create_directories(out_dir);
  RunResult res;
  if (kind == "two_shock_interaction")
    res = run_two_shock(cfg, out_dir, ov);
  else if (kind == "rho_profile")
    res = run_rho_profile(cfg, out_dir, ov);
  else if (kind == "switch_table")
    res = run_switch_table(cfg, out_dir, ov);
  else if (kind == "residual_sweep")
    res = run_residual_sweep(cfg, out_dir, ov);
  else if (kind == "oracle_compare")
    res = run_oracle_compare(cfg, out_dir, ov);
  else if (kind == "single_shock")
    res = run_single_shock(cfg, out_dir, ov);
  else if (kind == "naive_W")
    res = run_naive_w(cfg, out_dir, ov);
  else
    throw config_error("config.kind: unknown scenario kind '" + kind + "'");
  detail::write_manifest(out_dir, name, res.files);
  return res;
}

struct BundledScenario {
  std::string name;
  std::string description;
  std::string config_text;
};

inline const std::vector<BundledScenario>& bundled_scenarios() {
  static const std::vector<BundledScenario> list = {
      {"merge_stationary",
       "two unit shocks on background -1 merging at t*=1 into a stationary front",
       R"({
  "schema_version": 1,
  "kind": "two_shock_interaction",
  "flux": "u2",
  "state": {"u0": -1.0, "e1": 1.0, "e2": 1.0, "x1": -1.0, "x2": 1.0},
  "kernels": [{"family": "gaussian", "width": 1.0},
              {"family": "gaussian", "width": 1.0}],
  "numerics": {"eps": [0.1, 0.05], "t_max": 2.0}
})"},
      {"hopf_unit",
       "unit-amplitude interaction on zero background (t*=0.5, x*=1.5)",
       R"({
  "schema_version": 1,
  "kind": "two_shock_interaction",
  "flux": "u2",
  "state": {"u0": 0.0, "e1": 1.0, "e2": 1.0, "x1": 0.0, "x2": 1.0},
  "kernels": [{"family": "gaussian", "width": 1.0},
              {"family": "gaussian", "width": 1.0}],
  "numerics": {"eps": [0.1, 0.05], "t_max": 1.0}
})"},
      {"general_flux_u4",
       "quartic-flux interaction driven by the flux-general switch calculus",
       R"({
  "schema_version": 1,
  "kind": "two_shock_interaction",
  "flux": "u4",
  "state": {"u0": 0.0, "e1": 1.0, "e2": 1.0, "x1": 0.0, "x2": 1.0},
  "kernels": [{"family": "gaussian", "width": 1.0},
              {"family": "gaussian", "width": 1.0}],
  "numerics": {"eps": [0.05, 0.025], "path": "general", "table_n": 1025}
})"},
      {"rho_profile_sym",
       "fast-variable profile for a symmetric kernel pair (rho0 = 0)",
       R"({
  "schema_version": 1,
  "kind": "rho_profile",
  "flux": "u2",
  "state": {"u0": 0.0, "e1": 1.0, "e2": 1.0, "x1": 0.0, "x2": 1.0},
  "kernels": [{"family": "gaussian", "width": 1.0},
              {"family": "gaussian", "width": 1.0}],
  "numerics": {"tau_max": 50.0, "tau_step": 0.01}
})"},
      {"switch_demo",
       "switch-function table for a gaussian/bump pair under the quartic flux",
       R"({
  "schema_version": 1,
  "kind": "switch_table",
  "flux": "u4",
  "state": {"u0": 0.0, "e1": 1.0, "e2": 1.0, "x1": 0.0, "x2": 1.0},
  "kernels": [{"family": "gaussian", "width": 1.0},
              {"family": "bump", "radius": 1.0}],
  "numerics": {"n": 257, "path": "general"}
})"},
      {"residual_uniformity",
       "eps-decay of the weak residual on a 9-point time grid straddling t*",
       R"({
  "schema_version": 1,
  "kind": "residual_sweep",
  "flux": "u2",
  "state": {"u0": 0.0, "e1": 1.0, "e2": 1.0, "x1": 0.0, "x2": 1.0},
  "kernels": [{"family": "gaussian", "width": 1.0},
              {"family": "gaussian", "width": 1.0}],
  "numerics": {"eps": [0.1, 0.05, 0.025, 0.0125],
               "tf_centers": [0.65, 1.15, 1.55, 1.9, 2.3],
               "tf_radii": [1.1, 1.1, 1.1, 2.0, 2.0]}
})"},
      {"naive_w_a2",
       "nonmonotone naive continuation (a = 2) against the entropy reference",
       R"({
  "schema_version": 1,
  "kind": "naive_W",
  "a": 2.0,
  "numerics": {"cells": 4096}
})"},
      {"single_shock_tanh",
       "single front over a tanh amplitude ramp, checked against the reference solver",
       R"({
  "schema_version": 1,
  "kind": "single_shock",
  "flux": "u2",
  "state": {"background": {"type": "constant", "value": 0.0},
            "amplitude": {"type": "tanh", "base": 1.0, "scale": 0.1},
            "x0": 0.0},
  "numerics": {"t_max": 1.0, "x_min": -6.0, "x_max": 8.0, "cells": 4096}
})"},
      {"compare_hopf_unit",
       "smoothed ansatz and limit fronts against the entropy reference",
       R"({
  "schema_version": 1,
  "kind": "oracle_compare",
  "flux": "u2",
  "state": {"u0": 0.0, "e1": 1.0, "e2": 1.0, "x1": 0.0, "x2": 1.0},
  "kernels": [{"family": "gaussian", "width": 1.0},
              {"family": "gaussian", "width": 1.0}],
  "numerics": {"eps": 0.02, "cells": 4096}
})"}};
  return list;
}

inline const BundledScenario* find_bundled(const std::string& name) {
  for (const auto& s : bundled_scenarios())
    if (s.name == name)
      return &s;
  return nullptr;
}

} // namespace shockfront
