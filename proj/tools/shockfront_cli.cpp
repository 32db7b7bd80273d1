// Scenario runner for the shockfront library: reproduces the bundled
// interaction gallery and runs user configs deterministically.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "shockfront/scenario.hpp"

namespace fs = std::filesystem;
using shockfront::config_error;
using shockfront::json;
using shockfront::numeric_error;
using shockfront::RunOverrides;
using shockfront::RunResult;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct LoadedConfig {
  json config;
  std::string name;
};

LoadedConfig load_config(const std::string& ref) {
  if (const auto* bundled = shockfront::find_bundled(ref))
    return {json::parse(bundled->config_text), bundled->name};
  const fs::path path(ref);
  if (!fs::exists(path))
    throw config_error("config: '" + ref +
                       "' is neither a bundled scenario nor a readable file");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return {json::parse(buf.str()), path.stem().string()};
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config: JSON parse failure: ") + e.what());
  }
}

void print_summary(const RunResult& res) {
  std::printf("summary:\n");
  for (const auto& [k, v] : res.summary)
    std::printf("  %-32s %s\n", k.c_str(), shockfront::format_number(v).c_str());
  std::printf("artifacts in %s:\n", res.out_dir.string().c_str());
  for (const auto& f : res.files)
    std::printf("  %s\n", f.c_str());
}

json kernel_spec_from_flag(const std::string& spec, const std::string& flag) {
  std::string family = spec;
  double param = 1.0, shift = 0.0;
  const auto c1 = spec.find(':');
  if (c1 != std::string::npos) {
    family = spec.substr(0, c1);
    const auto rest = spec.substr(c1 + 1);
    const auto c2 = rest.find(':');
    try {
      if (c2 == std::string::npos) {
        param = std::stod(rest);
      } else {
        param = std::stod(rest.substr(0, c2));
        shift = std::stod(rest.substr(c2 + 1));
      }
    } catch (const std::exception&) {
      throw config_error(flag + ": expected family:parameter[:shift]");
    }
  }
  json j;
  j["family"] = family;
  if (family == "gaussian")
    j["width"] = param;
  else if (family == "bump")
    j["radius"] = param;
  else
    throw config_error(flag + ": expected gaussian|bump");
  if (shift != 0.0)
    j["shift"] = shift;
  return j;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"shock-wave interaction via mollified fronts"};
  app.require_subcommand(1);

  std::string config_ref;
  std::string out_dir;
  std::vector<double> eps_override;
  int cells_override = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", out_dir, "output directory");
    sub->add_option("--eps", eps_override,
                    "override the eps list (repeatable)");
    sub->add_option("--cells", cells_override,
                    "override the reference-solver cell count");
  };

  auto* run_cmd =
      app.add_subcommand("run", "run a bundled scenario or a config file");
  run_cmd->add_option("config", config_ref, "bundled name or config path")
      ->required();
  add_common(run_cmd);

  auto* list_cmd = app.add_subcommand("list", "list bundled scenarios");

  auto* compare_cmd = app.add_subcommand(
      "compare", "compare the ansatz and limit fronts against the reference "
                 "solver for a two-shock config");
  compare_cmd->add_option("config", config_ref, "bundled name or config path")
      ->required();
  add_common(compare_cmd);

  std::string st_flux = "u2", st_k1 = "gaussian:1.0", st_k2 = "gaussian:1.0";
  std::string st_path = "auto";
  double st_u0 = 0.0, st_e1 = 1.0, st_e2 = 1.0, st_rho_max = 0.0;
  int st_n = 1025;
  auto* table_cmd =
      app.add_subcommand("switch-table", "emit an interaction-switch table");
  table_cmd->add_option("--flux", st_flux, "flux label (u2|u2_half|u4|exp)");
  table_cmd->add_option("--u0", st_u0, "background state");
  table_cmd->add_option("--e1", st_e1, "lagging amplitude");
  table_cmd->add_option("--e2", st_e2, "advanced amplitude");
  table_cmd->add_option("--kernel1", st_k1, "family:parameter[:shift]");
  table_cmd->add_option("--kernel2", st_k2, "family:parameter[:shift]");
  table_cmd->add_option("--rho-max", st_rho_max,
                        "table half-range (0 = saturate automatically)");
  table_cmd->add_option("--n", st_n, "number of table nodes (>= 64)");
  table_cmd->add_option("--path", st_path, "auto|hopf|general");
  table_cmd->add_option("--out-dir", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& s : shockfront::bundled_scenarios())
        std::printf("%-20s %s\n", s.name.c_str(), s.description.c_str());
      return kExitOk;
    }

    RunOverrides ov;
    if (!out_dir.empty())
      ov.out_dir = out_dir;
    ov.eps = eps_override;
    if (cells_override > 0)
      ov.cells = cells_override;

    if (table_cmd->parsed()) {
      json cfg;
      cfg["schema_version"] = 1;
      cfg["kind"] = "switch_table";
      cfg["flux"] = st_flux;
      cfg["state"] = {{"u0", st_u0}, {"e1", st_e1}, {"e2", st_e2},
                      {"x1", 0.0},   {"x2", 1.0}};
      cfg["kernels"] = json::array({kernel_spec_from_flag(st_k1, "--kernel1"),
                                    kernel_spec_from_flag(st_k2, "--kernel2")});
      cfg["numerics"] = {{"rho_max", st_rho_max}, {"n", st_n}, {"path", st_path}};
      const fs::path dir = out_dir.empty() ? fs::path("out/switch_table")
                                           : fs::path(out_dir);
      print_summary(shockfront::run_scenario(cfg, dir, ov, "switch_table"));
      return kExitOk;
    }

    LoadedConfig loaded = load_config(config_ref);

    if (compare_cmd->parsed()) {
      const std::string kind = loaded.config.value("kind", "");
      if (kind == "two_shock_interaction") {
        json cfg;
        cfg["schema_version"] = 1;
        cfg["kind"] = "oracle_compare";
        cfg["flux"] = loaded.config.at("flux");
        cfg["state"] = loaded.config.at("state");
        cfg["kernels"] = loaded.config.at("kernels");
        json num = json::object();
        if (loaded.config.contains("numerics")) {
          const json& src = loaded.config["numerics"];
          for (const std::string key : {"path", "tau_max", "tau_step", "table_n"})
            if (src.contains(key))
              num[key] = src[key];
        }
        cfg["numerics"] = num;
        loaded.config = cfg;
        loaded.name += "_compare";
      } else if (kind != "oracle_compare") {
        throw config_error("compare: config must be a two_shock_interaction "
                           "or oracle_compare scenario");
      }
    }

    fs::path dir;
    if (ov.out_dir) {
      dir = *ov.out_dir;
    } else {
      dir = fs::path("out") / loaded.name;
      if (loaded.config.contains("output")) {
        shockfront::config::check_keys(loaded.config["output"], {"dir"},
                                       "config.output");
        if (loaded.config["output"].contains("dir"))
          dir = loaded.config["output"]["dir"].get<std::string>();
      }
    }
    print_summary(
        shockfront::run_scenario(loaded.config, dir, ov, loaded.name));
    return kExitOk;
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
}
