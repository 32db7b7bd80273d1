#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "shockfront/scenario.hpp"

using namespace shockfront;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "shockfront_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json bundled_config(const std::string& name) {
  const auto* s = find_bundled(name);
  REQUIRE(s != nullptr);
  return json::parse(s->config_text);
}

std::map<std::string, std::string> manifest_digests(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  REQUIRE(in.good());
  json m = json::parse(in);
  std::map<std::string, std::string> out;
  for (const auto& f : m.at("files"))
    out[f.at("name").get<std::string>()] = f.at("fnv1a64").get<std::string>();
  return out;
}

} // namespace

TEST_CASE("config validation") {
  json cfg = bundled_config("hopf_unit");

  SECTION("unknown top-level key") {
    cfg["surprise"] = 1;
    CHECK_THROWS_WITH(run_scenario(cfg, temp_dir("bad1")),
                      Catch::Contains("surprise"));
  }
  SECTION("unknown nested key carries its path") {
    cfg["state"]["w0"] = 1.0;
    CHECK_THROWS_WITH(run_scenario(cfg, temp_dir("bad2")),
                      Catch::Contains("config.state.w0"));
  }
  SECTION("schema version is enforced") {
    cfg["schema_version"] = 7;
    CHECK_THROWS_AS(run_scenario(cfg, temp_dir("bad3")), config_error);
  }
  SECTION("missing required block") {
    cfg.erase("flux");
    CHECK_THROWS_AS(run_scenario(cfg, temp_dir("bad4")), config_error);
  }
  SECTION("unknown kind") {
    cfg["kind"] = "spectral";
    CHECK_THROWS_AS(run_scenario(cfg, temp_dir("bad5")), config_error);
  }
  SECTION("invalid state values become config errors with a path") {
    cfg["state"]["e1"] = -1.0;
    CHECK_THROWS_WITH(run_scenario(cfg, temp_dir("bad6")),
                      Catch::Contains("config.state"));
  }
  SECTION("hopf path demands the quadratic flux") {
    cfg["flux"] = "u4";
    cfg["numerics"]["path"] = "hopf";
    CHECK_THROWS_AS(run_scenario(cfg, temp_dir("bad7")), config_error);
  }
}

TEST_CASE("bundled gallery is present and well formed") {
  for (const std::string name :
       {"merge_stationary", "hopf_unit", "general_flux_u4", "rho_profile_sym",
        "switch_demo", "residual_uniformity", "naive_w_a2",
        "single_shock_tanh", "compare_hopf_unit"}) {
    const auto* s = find_bundled(name);
    REQUIRE(s != nullptr);
    CHECK_FALSE(s->description.empty());
    CHECK_NOTHROW(json::parse(s->config_text));
  }
  CHECK(find_bundled("no_such_thing") == nullptr);
}

TEST_CASE("bundled configs match the shipped fixture files") {
  const fs::path dir = fs::path(SHOCKFRONT_SOURCE_DIR) / "scenarios";
  REQUIRE(fs::exists(dir));
  for (const auto& s : bundled_scenarios()) {
    const fs::path file = dir / (s.name + ".json");
    REQUIRE(fs::exists(file));
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(json::parse(text) == json::parse(s.config_text));
  }
}

TEST_CASE("stationary merge scenario reproduces the kinematics") {
  const fs::path dir = temp_dir("merge");
  json cfg = bundled_config("merge_stationary");
  cfg["numerics"]["t_samples"] = 41; // keep the artifact small
  const RunResult res = run_scenario(cfg, dir, {}, "merge_stationary");

  CHECK(res.summary_value("t_star") == Approx(1.0).margin(1e-12));
  CHECK(res.summary_value("x_star") == Approx(0.0).margin(1e-12));
  CHECK(res.summary_value("post_speed") == Approx(0.0).margin(1e-12));
  for (const std::string f :
       {"rho.csv", "perturbations.csv", "trajectories_eps0.1.csv",
        "trajectories_eps0.05.csv", "summary.csv", "manifest.json"})
    CHECK(fs::exists(dir / f));
}

TEST_CASE("unit interaction scenario summary") {
  const fs::path dir = temp_dir("unit");
  json cfg = bundled_config("hopf_unit");
  cfg["numerics"]["t_samples"] = 21;
  const RunResult res = run_scenario(cfg, dir, {}, "hopf_unit");
  CHECK(res.summary_value("t_star") == Approx(0.5).margin(1e-12));
  CHECK(res.summary_value("x_star") == Approx(1.5).margin(1e-12));
  CHECK(res.summary_value("post_speed") == Approx(2.0).margin(1e-12));
  CHECK(res.summary_value("rho_residual_at_minus_tau_max") < 1e-8);
}

TEST_CASE("reruns are digest identical") {
  json cfg = bundled_config("switch_demo");
  const fs::path d1 = temp_dir("digest_a");
  const fs::path d2 = temp_dir("digest_b");
  run_scenario(cfg, d1, {}, "switch_demo");
  run_scenario(cfg, d2, {}, "switch_demo");
  const auto m1 = manifest_digests(d1);
  const auto m2 = manifest_digests(d2);
  REQUIRE_FALSE(m1.empty());
  CHECK(m1 == m2);
}

TEST_CASE("switch table artifact respects the sum identity") {
  const fs::path dir = temp_dir("switch");
  json cfg = bundled_config("switch_demo");
  const RunResult res = run_scenario(cfg, dir, {}, "switch_demo");
  CHECK(res.summary_value("saturation") == Approx(14.0).margin(1e-9));

  std::ifstream in(dir / "switch_table.csv");
  REQUIRE(in.good());
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'r')
      continue;
    // rho,b1,b2,sum_residual
    const auto last_comma = line.rfind(',');
    REQUIRE(last_comma != std::string::npos);
    const double residual = std::stod(line.substr(last_comma + 1));
    CHECK(std::abs(residual) < 1e-8);
    ++rows;
  }
  CHECK(rows == 257);
}

TEST_CASE("eps override replaces the config list") {
  const fs::path dir = temp_dir("override");
  json cfg = bundled_config("hopf_unit");
  cfg["numerics"]["t_samples"] = 11;
  RunOverrides ov;
  ov.eps = {0.2};
  run_scenario(cfg, dir, ov, "hopf_unit");
  CHECK(fs::exists(dir / "trajectories_eps0.2.csv"));
  CHECK_FALSE(fs::exists(dir / "trajectories_eps0.1.csv"));
}

TEST_CASE("rho profile scenario") {
  const fs::path dir = temp_dir("rho");
  const RunResult res =
      run_scenario(bundled_config("rho_profile_sym"), dir, {}, "rho_profile_sym");
  CHECK(std::abs(res.summary_value("rho0")) < 1e-9);
  CHECK(res.summary_value("rho_residual_at_minus_tau_max") < 1e-8);
  const double rate = res.summary_value("fitted_decay_rate");
  const double expected = res.summary_value("F_prime_at_rho0");
  CHECK(std::abs(rate - expected) / expected < 0.05);
}

TEST_CASE("naive continuation scenario summary") {
  const fs::path dir = temp_dir("naive");
  json cfg = bundled_config("naive_w_a2");
  cfg["numerics"]["cells"] = 512;
  const RunResult res = run_scenario(cfg, dir, {}, "naive_w_a2");
  CHECK(res.summary_value("phi_dot_0") == Approx(1.0).margin(1e-6));
  CHECK(res.summary_value("l1_fine") > 0.5);
  CHECK(res.summary_value("l1_ratio") > 0.8);
  CHECK(res.summary_value("collapse_time") > 0.0);
  CHECK(fs::exists(dir / "w_trajectory.csv"));
  CHECK(fs::exists(dir / "continuation.csv"));
}

TEST_CASE("tabulated custom flux feeds the kinematics") {
  // quartic samples stand in for a user-supplied flux table; the merge
  // kinematics only evaluate the flux at the three states
  json u = json::array();
  json f = json::array();
  for (int i = 0; i <= 160; ++i) {
    const double v = -0.2 + 2.6 * i / 160.0;
    u.push_back(v);
    f.push_back(v * v * v * v);
  }
  json flux_spec;
  flux_spec["u"] = u;
  flux_spec["f"] = f;
  const FluxFunction tab =
      config::parse_flux(flux_spec, "config.flux");

  const FluxFunction exact = FluxFunction::quartic();
  const TwoShockState state{0.0, 1.0, 1.0, 0.0, 1.0};
  const MergeEvent got = merge_point(tab, state);
  const MergeEvent want = merge_point(exact, state);
  CHECK(got.t_star == Approx(want.t_star).margin(1e-4));
  CHECK(got.x_star == Approx(want.x_star).margin(1e-3));
  CHECK(got.post_speed == Approx(want.post_speed).margin(1e-3));
  const auto a = limit_phases(tab, state, 0.1);
  const auto b = limit_phases(exact, state, 0.1);
  CHECK(a.first == Approx(b.first).margin(1e-3));
  CHECK(a.second == Approx(b.second).margin(1e-3));
}

TEST_CASE("numeric failures surface as numeric errors") {
  json cfg = bundled_config("switch_demo");
  cfg["numerics"]["rho_max"] = 0.5; // cannot saturate the switch
  CHECK_THROWS_AS(run_scenario(cfg, temp_dir("numfail"), {}, "switch_demo"),
                  numeric_error);
}

TEST_CASE("single shock scenario summary") {
  const fs::path dir = temp_dir("single");
  json cfg = bundled_config("single_shock_tanh");
  cfg["numerics"]["cells"] = 1024;
  cfg["numerics"]["t_samples"] = 11;
  const RunResult res = run_scenario(cfg, dir, {}, "single_shock_tanh");
  CHECK(res.summary_value("max_front_error") <= res.summary_value("two_dx"));
  CHECK(fs::exists(dir / "front.csv"));
  CHECK(fs::exists(dir / "field.csv"));
}
