#include "semilinear/runner.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>

#include "semilinear/errors.hpp"
#include "semilinear/weighted_spaces.hpp"

namespace semilinear {

using nlohmann::json;

namespace {

// JSON has no infinity; write it as a string so the value is not lost.
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json matrix(const Matrix3& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back({row[0], row[1], row[2]});
  return a;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

json to_json(const LemmaFConstants& c) {
  return {{"n", c.n},         {"k", c.k},           {"omega_n", num(c.omega_n)},
          {"L_k", num(c.L_k)}, {"M_k", num(c.M_k)}, {"Ltilde_k", num(c.Ltilde_k)},
          {"Mtilde_k", num(c.Mtilde_k)}, {"C_k", num(c.C_k)}, {"Q_k", num(c.Q_k)}};
}

json to_json(const JacobianBound& b) {
  return {{"epsilon", num(b.epsilon)}, {"value", num(b.value)}, {"provenance", to_string(b.provenance)},
          {"method", b.method}};
}

json to_json(const Certificate& c) {
  return {{"n", c.n},
          {"k", c.k},
          {"epsilon", num(c.epsilon)},
          {"epsilon_auto", c.epsilon_auto},
          {"constants", to_json(c.constants)},
          {"g0_norm", {{"value", num(c.g0.value)}, {"closed_form", c.g0.closed_form}}},
          {"G_eps", to_json(c.G_eps)},
          {"condition_G_eps_below_Q_k", c.G_eps.value < c.constants.Q_k},
          {"condition_g0_below_eps_Q_k", c.g0.value <= c.epsilon * c.constants.Q_k},
          {"satisfied", c.satisfied},
          {"predicted_ball", num(c.predicted_ball)},
          {"rigor", to_string(c.rigor)},
          {"warnings", c.warnings}};
}

json to_json(const SolveReport& r) {
  json assessed = json::array();
  for (bool b : r.ratio_assessed) assessed.push_back(b);
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"fk_norms", nums(r.fk_norms)},
          {"distances", nums(r.distances)},
          {"ratios", nums(r.ratios)},
          {"ratio_assessed", assessed},
          {"kept_iterates", r.iterate_index},
          {"violations", r.violations}};
}

json to_json(const ResidualReport& r) {
  return {{"weighted_sup", num(r.sup)}, {"nodes", r.evaluated}};
}

json to_json(const PositivityVerdict& v) {
  return {{"passed", v.passed}, {"strict", v.strict}, {"min_value", num(v.min_value)}, {"argmin", v.location}};
}

json to_json(const RadialSymmetryVerdict& v) {
  return {{"passed", v.passed},
          {"tol", v.tol},
          {"max_angular_variation", num(v.max_angular_variation)},
          {"worst_shell_radius", v.worst_shell_radius}};
}

json to_json(const OrthogonalVerdict& v) {
  return {{"passed", v.passed},
          {"mode", v.mode == SymmetryMode::symmetric ? "symmetric" : "antisymmetric"},
          {"tol", v.tol},
          {"value_deviation", num(v.value_deviation)},
          {"gradient_deviation", num(v.gradient_deviation)},
          {"compared", v.compared},
          {"skipped", v.skipped}};
}

json to_json(const DecayVerdict& v) {
  return {{"verdict", v.verdict},
          {"limit_estimate", num(v.limit_estimate)},
          {"max", num(v.max_value)},
          {"rule", "non-increasing over the last 5 shells and s(R_max) <= 0.2 max s"}};
}

void write_decay_csv(std::ostream& os, const DecayVerdict& v) {
  os << "r,s\n";
  char buf[64];
  for (std::size_t i = 0; i < v.radius.size(); ++i) {
    auto end = std::to_chars(buf, buf + sizeof buf, v.radius[i]).ptr;
    os.write(buf, end - buf);
    os << ',';
    end = std::to_chars(buf, buf + sizeof buf, v.tail_profile[i]).ptr;
    os.write(buf, end - buf);
    os << '\n';
  }
}

json run_checks(const RunConfig& config, const Field& u, const Expr& g, const std::vector<Field>& iterates,
                bool& all_passed) {
  all_passed = true;
  json out = json::array();
  for (const auto& c : config.checks) {
    json entry;
    bool passed = true;
    switch (c.kind) {
      case CheckKind::residual: {
        const auto r = pde_residual(u, g, config.k);
        passed = r.sup <= c.max_residual;
        entry = to_json(r);
        entry["max"] = c.max_residual;
        break;
      }
      case CheckKind::positivity: {
        const auto v = check_positivity(u, c.strict);
        passed = v.passed;
        entry = to_json(v);
        entry["assumption"] = "the nonvanishing hypothesis on g near (z,p) = (0,0) is not machine-checked";
        break;
      }
      case CheckKind::radial: {
        const auto v = check_radial_symmetry(u, c.tol);
        passed = v.passed;
        entry = to_json(v);
        break;
      }
      case CheckKind::orthogonal: {
        const auto v = check_orthogonal_symmetry(u, c.T, c.mode, c.tol);
        passed = v.passed;
        entry = to_json(v);
        entry["T"] = matrix(c.T);
        json per_iterate = json::array();
        for (const auto& it : iterates) {
          const auto w = check_orthogonal_symmetry(it, c.T, c.mode, c.tol);
          passed = passed && w.passed;
          per_iterate.push_back({{"passed", w.passed}, {"value_deviation", num(w.value_deviation)},
                                 {"gradient_deviation", num(w.gradient_deviation)}});
        }
        entry["iterates"] = per_iterate;
        break;
      }
      case CheckKind::decay: {
        const auto v = check_decay(u, config.k);
        passed = !c.expect_improved || *c.expect_improved == v.improved;
        entry = to_json(v);
        if (c.expect_improved) entry["expected"] = *c.expect_improved ? "improved decay" : "bounded decay only";
        break;
      }
    }
    entry["check"] = to_string(c.kind);
    entry["passed"] = passed;
    all_passed = all_passed && passed;
    out.push_back(entry);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunResult run(const RunConfig& input, const RunOptions& options) {
  const RunConfig config =
      options.resolution_scale == 1.0 ? input : scale_resolution(input, options.resolution_scale);
  RunResult result;
  json& report = result.report;
  report["timestamp"] = options.timestamp ? *options.timestamp : utc_timestamp();
  report["errors"] = json::array();
  json params = json::object();
  for (const auto& [name, value] : config.params) params[name] = value ? json(*value) : json(nullptr);
  report["config"] = {{"n", config.n},
                      {"k", config.k},
                      {"g", config.g},
                      {"grid",
                       config.grid.mode == GridMode::radial
                           ? json{{"mode", "radial"}, {"R_max", config.grid.r_max}, {"M", config.grid.intervals},
                                  {"grading", config.grid.grading}}
                           : json{{"mode", "cartesian3d"}, {"R_max", config.grid.r_max}, {"h", config.grid.spacing}}},
                      {"params", params},
                      {"tol", config.tol},
                      {"max_iter", config.max_iter},
                      {"exploratory", options.exploratory},
                      {"resolution_scale", options.resolution_scale}};

  bool ok = true;
  bool certified = false;
  auto fail = [&](const std::string& stage, const std::exception& e) {
    report["errors"].push_back({{"stage", stage}, {"message", e.what()}});
    ok = false;
  };

  try {
    const GridPtr grid = make_grid(config);
    const Expr g = make_expr(config);
    const Certificate cert = check_existence(g, config.k, config.n, config.epsilon, grid);
    report["certificate"] = to_json(cert);
    certified = cert.satisfied;
    if (!cert.satisfied && !options.exploratory) {
      report["errors"].push_back(
          {{"stage", "certify"}, {"message", "certificate not satisfied; rerun with --exploratory to solve anyway"}});
      ok = false;
    } else {
      if (!cert.satisfied) report["exploratory"] = "certificate not satisfied; results carry no existence guarantee";
      SolveOptions so;
      so.tol = config.tol;
      so.max_iter = config.max_iter;
      so.keep_all_iterates = config.keep_iterates;
      const NewtonianPotential potential(grid);
      try {
        const SolveReport sr = solve(g, potential, config.k, cert, so);
        report["solve"] = to_json(sr);
        const Field& u = sr.solution();
        report["solve"]["fixed_point_residual"] = num(fixed_point_residual(u, g, config.k, potential));
        report["solve"]["final_fk_norm"] = num(norm_F(u, config.k));
        ok = ok && sr.converged && sr.violations.empty();
        if (!sr.converged) {
          report["errors"].push_back({{"stage", "solve"}, {"message", "no convergence within max_iter"}});
        }
        bool checks_ok = true;
        std::vector<Field> iterates;
        if (config.keep_iterates) iterates = sr.iterates;
        report["checks"] = run_checks(config, u, g, iterates, checks_ok);
        ok = ok && checks_ok;
        result.solution = u;
      } catch (const DivergenceError& e) {
        report["errors"].push_back(
            {{"stage", "solve"}, {"message", e.what()}, {"iteration", e.iteration()}});
        ok = false;
      }
    }
  } catch (const ParseError& e) {
    fail("parse", e);
  } catch (const std::exception& e) {
    fail("pipeline", e);
  }

  result.exit_code = !ok ? exit_failure : certified ? exit_ok : exit_exploratory;
  report["exit_code"] = result.exit_code;

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    write_text(options.out_dir / "report.json", report.dump(2) + "\n");
    if (result.solution) {
      std::ofstream sol(options.out_dir / "solution.csv");
      write_csv(sol, *result.solution);
      std::ofstream dec(options.out_dir / "decay.csv");
      write_decay_csv(dec, check_decay(*result.solution, config.k));
    }
  }
  return result;
}

}  // namespace semilinear
