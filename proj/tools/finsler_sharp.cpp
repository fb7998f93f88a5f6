#include "eval_commands.hpp"
#include "experiments.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace finsler;
using namespace finsler::cli;

namespace {

ParamMap parse_flags(const std::vector<std::string>& args) {
  ParamMap out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) fail(ErrorCode::Parse, "expected --key value, got '" + a + "'");
    const std::string body = a.substr(2);
    if (const auto eq = body.find('='); eq != std::string::npos) {
      out[body.substr(0, eq)] = body.substr(eq + 1);
    } else {
      if (i + 1 >= args.size()) fail(ErrorCode::Parse, "missing value for " + a);
      out[body] = args[++i];
    }
  }
  return out;
}

int run(const std::string& name, const std::string& config, const std::string& out_dir,
        const std::vector<std::string>& overrides) {
  ExperimentConfig cfg;
  if (!config.empty()) {
    cfg = load_config(config, name);
  } else {
    cfg.name = name;
  }
  cfg.out_dir = out_dir;
  for (const auto& s : overrides) apply_override(cfg, s);
  const Report rep = run_experiment(cfg);

  fs::create_directories(out_dir);
  const fs::path json_path = fs::path(out_dir) / (name + ".json");
  const fs::path csv_path = fs::path(out_dir) / (name + "-curves.csv");
  std::ofstream(json_path) << rep.dump() << "\n";
  std::ofstream(csv_path) << rep.curves().to_string();

  const auto bad = rep.failures();
  std::cout << name << ": " << rep.checks().size() - bad.size() << "/" << rep.checks().size() << " checks passed\n";
  for (const Check* c : bad)
    std::cout << "  FAIL " << c->name << ": value " << format_double(c->value) << " " << c->relation << " expected "
              << format_double(c->expected) << " tol " << format_double(c->tolerance) << "\n";
  std::cout << "wrote " << json_path.string() << " and " << csv_path.string() << "\n";
  return bad.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical Finsler geometry and sharp uncertainty experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a named experiment and write <out>/<name>.json and <name>-curves.csv");
  std::string experiment, config, out_dir = "results";
  std::vector<std::string> overrides;
  run_cmd->add_option("experiment", experiment, "Experiment name")->required();
  run_cmd->add_option("--config", config, "INI file with [numeric] and per-experiment sections");
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--set", overrides, "Override key=value (repeatable)");

  auto* list_cmd = app.add_subcommand("list", "List experiments and eval subcommands");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate one quantity and print a JSON object");
  std::string command;
  eval_cmd->add_option("command", command, "metric, dual, tensor, geodesic, distance, reversibility, curvature, "
                                           "scurvature, density, ldistortion, ball, functional, navigate")
      ->required();
  eval_cmd->allow_extras();
  eval_cmd->prefix_command(false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list_cmd) {
      std::cout << "experiments:";
      for (const auto& n : experiment_names()) std::cout << " " << n;
      std::cout << "\neval:";
      for (const auto& n : eval_command_names()) std::cout << " " << n;
      std::cout << "\n";
      return 0;
    }
    if (*run_cmd) return run(experiment, config, out_dir, overrides);
    run_eval(command, parse_flags(eval_cmd->remaining()), std::cout);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
