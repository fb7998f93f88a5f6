#include "config.hpp"
#include "eval_commands.hpp"
#include "experiments.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace finsler;
using namespace finsler::cli;

TEST_CASE("parsing helpers") {
  CHECK(parse_double(" 0.25 ") == 0.25);
  CHECK_THROWS_AS(parse_double("0.2x"), Error);
  const Vec v = parse_vec("1,-2.5,3e-1");
  REQUIRE(v.size() == 3);
  CHECK(v(1) == -2.5);
}

TEST_CASE("metric, measure and test-function construction") {
  CHECK(build_metric({{"family", "funk"}, {"n", "2"}}).family() == Family::Funk);
  CHECK(build_metric({{"family", "minkowski-randers"}, {"t", "0.3"}}).parameter_t() == 0.3);
  CHECK(build_metric({{"family", "randers"}, {"A", "2,0,0,1"}, {"b", "0.1,0"}}).dim() == 2);
  CHECK(build_metric({{"family", "navigation"}, {"base", "funk"}, {"n", "2"}, {"wind", "rotation"}, {"omega", "0.3"}})
            .family() == Family::Navigation);
  CHECK_THROWS_AS(build_metric({{"family", "hyperbolic"}}), Error);
  CHECK(build_measure({{"measure", "ht"}}).kind() == MeasureKind::HolmesThompson);
  CHECK_THROWS_AS(build_measure({{"measure", "haar"}}), Error);
  CHECK(build_test_function({{"test", "funk-power"}, {"alpha", "0.3"}}, 2, 2, 3).kind() ==
        TestFunction::Kind::FunkPower);
}

TEST_CASE("INI config and overrides") {
  const std::string path = "test_cli_config.ini";
  std::ofstream(path) << "[numeric]\nquad_tol = 1e-7\n[minkowski-hpw]\nt = 0,0.3\nroot_tol = 1e-13\n";
  ExperimentConfig cfg = load_config(path, "minkowski-hpw");
  CHECK(cfg.numeric.quad_tol == 1e-7);
  CHECK(cfg.numeric.root_tol == 1e-13);
  CHECK(cfg.get_list("t", {}).size() == 2);
  apply_override(cfg, "t=0.6");
  apply_override(cfg, "ode_step=2e-3");
  CHECK(cfg.get_list("t", {}) == std::vector<double>{0.6});
  CHECK(cfg.numeric.ode_step == 2e-3);
  CHECK_THROWS_AS(apply_override(cfg, "novalue"), Error);
  CHECK_THROWS_AS(apply_override(cfg, "quad_tol=-1"), Error);
  std::remove(path.c_str());
}

TEST_CASE("eval commands print one JSON object") {
  std::ostringstream os;
  run_eval("metric", {{"family", "funk"}, {"n", "3"}, {"x", "0.5,0,0"}, {"y", "1,0,0"}}, os);
  CHECK(os.str() == "{\"F\":2.0}\n");
  for (const auto& name : eval_command_names()) {
    CAPTURE(name);
    std::ostringstream o;
    ParamMap p = {{"family", "minkowski-randers"}, {"t", "0.3"}};
    if (name == "navigate") p = {{"family", "fish-tank"}};
    run_eval(name, p, o);
    const auto j = nlohmann::json::parse(o.str());
    CHECK(j.is_object());
  }
  std::ostringstream o;
  CHECK_THROWS_AS(run_eval("volume", {}, o), Error);
}

TEST_CASE("experiments: names, rejection and determinism") {
  CHECK(experiment_names().size() == 9);
  ExperimentConfig bad;
  bad.name = "nope";
  try {
    run_experiment(bad);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("reversibility-sweep") != std::string::npos);
  }
  ExperimentConfig cfg;
  cfg.name = "reversibility-sweep";
  const std::string a = run_experiment(cfg).dump();
  const std::string b = run_experiment(cfg).dump();
  CHECK(a == b);
  CHECK(nlohmann::json::parse(a)["passed"] == true);
}
