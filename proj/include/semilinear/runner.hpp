#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semilinear/certificate.hpp"
#include "semilinear/config.hpp"
#include "semilinear/picard.hpp"
#include "semilinear/verification.hpp"

namespace semilinear {

nlohmann::json to_json(const LemmaFConstants& c);
nlohmann::json to_json(const JacobianBound& b);
nlohmann::json to_json(const Certificate& c);
/// Without the kept fields (they go to CSV).
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const PositivityVerdict& v);
nlohmann::json to_json(const RadialSymmetryVerdict& v);
nlohmann::json to_json(const OrthogonalVerdict& v);
nlohmann::json to_json(const DecayVerdict& v);

/// Runs the configured checks on `u`. Orthogonal checks are repeated on every
/// field in `iterates`. Sets all_passed.
nlohmann::json run_checks(const RunConfig& config, const Field& u, const Expr& g,
                          const std::vector<Field>& iterates, bool& all_passed);

/// Per-shell s(r) as "r,s" CSV.
void write_decay_csv(std::ostream& os, const DecayVerdict& v);

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_exploratory = 2 };

struct RunOptions {
  std::filesystem::path out_dir;  ///< empty: write nothing
  bool exploratory = false;       ///< solve even when the certificate fails
  double resolution_scale = 1.0;
  /// Fixed timestamp for reproducible output; current UTC time when absent.
  std::optional<std::string> timestamp;
};

struct RunResult {
  int exit_code = exit_failure;
  nlohmann::json report;
  std::optional<Field> solution;
};

/// Full pipeline certify -> solve -> verify. Writes report.json, solution.csv
/// and decay.csv into out_dir. Module errors end up in report["errors"].
/// Exit code 0: certified, converged and every check passed; 2: the same
/// on an uncertified exploratory run; 1 otherwise.
RunResult run(const RunConfig& config, const RunOptions& options);

std::string utc_timestamp();

}  // namespace semilinear
