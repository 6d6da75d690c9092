// Command-line front end: constants | certify | solve | verify | run.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "semilinear/errors.hpp"
#include "semilinear/runner.hpp"

using namespace semilinear;
using nlohmann::json;

namespace {

void emit(const json& doc, const std::string& out_dir, const std::string& file) {
  std::cout << doc.dump(2) << "\n";
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::ofstream(std::filesystem::path(out_dir) / file) << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Picard-iteration solver for semilinear equations  Delta u + g(x,u,Du) = 0  on R^n"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool exploratory = false;
  double scale = 1.0;
  int n = 3;
  double k = 0.0;

  auto* constants = app.add_subcommand("constants", "print the constants C_k, Q_k, ... as JSON");
  constants->add_option("--n", n, "dimension (>= 3)");
  constants->add_option("--k", k, "decay exponent in (0, n-2)");
  constants->add_option("--config", config_path, "take n and k from a run config");

  auto add_common = [&](CLI::App* sub, bool solves) {
    sub->add_option("--config", config_path, "run config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--resolution-scale", scale, "refine the grid uniformly by this factor")
        ->check(CLI::PositiveNumber);
    if (solves) sub->add_flag("--exploratory", exploratory, "solve even if the certificate fails");
  };
  auto* certify = app.add_subcommand("certify", "check the existence certificate");
  add_common(certify, false);
  auto* solve_cmd = app.add_subcommand("solve", "certify and run the Picard iteration");
  add_common(solve_cmd, true);
  auto* verify = app.add_subcommand("verify", "run the configured checks on <out>/solution.csv");
  add_common(verify, false);
  verify->get_option("--out")->required();
  auto* run_cmd = app.add_subcommand("run", "certify, solve and verify");
  add_common(run_cmd, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*constants) {
      if (!config_path.empty()) {
        const RunConfig cfg = load_config(config_path);
        n = cfg.n;
        k = cfg.k;
      }
      std::cout << to_json(lemma_f_constants(k, n)).dump(2) << "\n";
      return exit_ok;
    }
    const RunConfig base = load_config(config_path);
    const RunConfig cfg = scale == 1.0 ? base : scale_resolution(base, scale);
    if (*certify) {
      const Certificate c = check_existence(make_expr(cfg), cfg.k, cfg.n, cfg.epsilon, make_grid(cfg));
      emit(to_json(c), out_dir, "certificate.json");
      return c.satisfied ? exit_ok : exit_failure;
    }
    if (*verify) {
      const GridPtr grid = make_grid(cfg);
      const std::filesystem::path dir(out_dir);
      std::ifstream in(dir / "solution.csv");
      if (!in) throw UsageError("cannot read " + (dir / "solution.csv").string());
      const Field u = read_csv(in, grid, cfg.k);
      bool passed = true;
      const json checks = run_checks(cfg, u, make_expr(cfg), {}, passed);
      json report = json::object();
      if (std::ifstream existing(dir / "report.json"); existing) report = json::parse(existing);
      report["verification"] = checks;
      std::ofstream(dir / "report.json") << report.dump(2) << "\n";
      std::cout << checks.dump(2) << "\n";
      return passed ? exit_ok : exit_failure;
    }
    RunConfig pipeline = base;
    if (*solve_cmd) pipeline.checks.clear();
    RunOptions opts;
    opts.out_dir = out_dir;
    opts.exploratory = exploratory;
    opts.resolution_scale = scale;
    const RunResult r = run(pipeline, opts);
    std::cout << r.report.dump(2) << "\n";
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failure;
  }
}
