#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semilinear/expr.hpp"
#include "semilinear/grid.hpp"
#include "semilinear/verification.hpp"

namespace semilinear {

enum class CheckKind { residual, positivity, radial, orthogonal, decay };
const char* to_string(CheckKind kind);

struct CheckConfig {
  CheckKind kind = CheckKind::residual;
  double tol = 0.02;            ///< radial, orthogonal
  double max_residual = 1e-3;   ///< residual
  bool strict = false;          ///< positivity
  Matrix3 T{};                  ///< orthogonal
  SymmetryMode mode = SymmetryMode::symmetric;
  std::optional<bool> expect_improved;  ///< decay: informational when absent
};

struct GridConfig {
  GridMode mode = GridMode::radial;
  double r_max = 0.0;
  int intervals = 0;    ///< radial M
  double spacing = 0.0; ///< cartesian h
  double grading = 2.0;
};

struct RunConfig {
  int n = 3;
  double k = 0.0;
  GridConfig grid;
  std::string g;
  std::map<std::string, std::optional<double>> params;
  std::optional<double> epsilon;  ///< absent means "auto"
  double tol = 1e-8;
  int max_iter = 60;
  bool keep_iterates = false;
  std::vector<CheckConfig> checks;
};

/// Validates and converts a parsed JSON document. Throws ConfigError with the
/// path of the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

GridPtr make_grid(const RunConfig& config);
/// Parses config.g with config.params (throws ParseError) and checks it
/// against the grid mode (throws UsageError).
Expr make_expr(const RunConfig& config);

/// Refines the grid uniformly: radial M -> factor*M, cartesian h -> h/factor.
RunConfig scale_resolution(RunConfig config, double factor);

}  // namespace semilinear
