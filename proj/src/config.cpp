#include "semilinear/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "semilinear/errors.hpp"

namespace semilinear {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "/" + key, "missing required field");
  return obj.at(key);
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& path) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(path + "/" + key, "unknown field");
  }
}

GridConfig parse_grid(const json& v, int n, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  GridConfig g;
  const std::string mode = string(require(v, "mode", path), path + "/mode");
  g.r_max = number(require(v, "R_max", path), path + "/R_max");
  if (!(g.r_max > 1.0)) throw ConfigError(path + "/R_max", "must exceed 1");
  if (mode == "radial") {
    reject_unknown(v, {"mode", "R_max", "M", "grading"}, path);
    g.mode = GridMode::radial;
    g.intervals = integer(require(v, "M", path), path + "/M");
    if (g.intervals < 64) throw ConfigError(path + "/M", "radial grids need M >= 64");
    if (v.contains("grading")) {
      g.grading = number(v.at("grading"), path + "/grading");
      if (!(g.grading >= 1.0)) throw ConfigError(path + "/grading", "must be at least 1");
    }
  } else if (mode == "cartesian3d") {
    reject_unknown(v, {"mode", "R_max", "h"}, path);
    if (n != 3) throw ConfigError(path + "/mode", "cartesian3d requires n = 3");
    g.mode = GridMode::cartesian3d;
    g.spacing = number(require(v, "h", path), path + "/h");
    if (!(g.spacing > 0.0)) throw ConfigError(path + "/h", "must be positive");
    const double ratio = g.r_max / g.spacing;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
      throw ConfigError(path + "/h", "R_max must be an integer multiple of h");
    }
    if (2 * std::lround(ratio) + 1 < 33) throw ConfigError(path + "/h", "cartesian grids need at least 33 points per axis");
  } else {
    throw ConfigError(path + "/mode", "expected \"radial\" or \"cartesian3d\", got \"" + mode + "\"");
  }
  return g;
}

Matrix3 parse_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(path, "expected a 3x3 array");
  Matrix3 m{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string row = path + "/" + std::to_string(i);
    if (!v[i].is_array() || v[i].size() != 3) throw ConfigError(row, "expected an array of 3 numbers");
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = number(v[i][j], row + "/" + std::to_string(j));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += m[i][c] * m[j][c];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-12) throw ConfigError(path, "matrix is not orthogonal");
    }
  }
  return m;
}

CheckConfig parse_check(const json& v, const RunConfig& cfg, const std::string& path) {
  std::string name;
  const json empty = json::object();
  const json* opts = &empty;
  if (v.is_string()) {
    name = v.get<std::string>();
  } else if (v.is_object()) {
    name = string(require(v, "name", path), path + "/name");
    opts = &v;
  } else {
    throw ConfigError(path, "expected a check name or an object with \"name\"");
  }
  CheckConfig c;
  auto tol = [&] {
    if (opts->contains("tol")) {
      c.tol = number(opts->at("tol"), path + "/tol");
      if (!(c.tol >= 0.0)) throw ConfigError(path + "/tol", "must be nonnegative");
    }
  };
  if (name == "residual") {
    c.kind = CheckKind::residual;
    reject_unknown(*opts, {"name", "max"}, path);
    if (opts->contains("max")) c.max_residual = number(opts->at("max"), path + "/max");
  } else if (name == "positivity") {
    c.kind = CheckKind::positivity;
    reject_unknown(*opts, {"name", "strict"}, path);
    if (opts->contains("strict")) {
      if (!opts->at("strict").is_boolean()) throw ConfigError(path + "/strict", "expected a boolean");
      c.strict = opts->at("strict").get<bool>();
    }
  } else if (name == "radial") {
    c.kind = CheckKind::radial;
    reject_unknown(*opts, {"name", "tol"}, path);
    if (cfg.grid.mode != GridMode::cartesian3d) throw ConfigError(path, "radial symmetry check needs a cartesian3d grid");
    tol();
  } else if (name == "orthogonal") {
    c.kind = CheckKind::orthogonal;
    reject_unknown(*opts, {"name", "T", "mode", "tol"}, path);
    if (cfg.grid.mode != GridMode::cartesian3d) throw ConfigError(path, "orthogonal check needs a cartesian3d grid");
    c.T = parse_matrix(require(*opts, "T", path), path + "/T");
    if (opts->contains("mode")) {
      const std::string mode = string(opts->at("mode"), path + "/mode");
      if (mode == "symmetric") {
        c.mode = SymmetryMode::symmetric;
      } else if (mode == "antisymmetric") {
        c.mode = SymmetryMode::antisymmetric;
      } else {
        throw ConfigError(path + "/mode", "expected \"symmetric\" or \"antisymmetric\"");
      }
    }
    tol();
  } else if (name == "decay") {
    c.kind = CheckKind::decay;
    reject_unknown(*opts, {"name", "expect"}, path);
    if (opts->contains("expect")) {
      const std::string e = string(opts->at("expect"), path + "/expect");
      if (e == "improved") {
        c.expect_improved = true;
      } else if (e == "bounded") {
        c.expect_improved = false;
      } else {
        throw ConfigError(path + "/expect", "expected \"improved\" or \"bounded\"");
      }
    }
  } else {
    throw ConfigError(path + "/name",
                      "unknown check \"" + name + "\" (known: residual, positivity, radial, orthogonal, decay)");
  }
  return c;
}

}  // namespace

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::residual: return "residual";
    case CheckKind::positivity: return "positivity";
    case CheckKind::radial: return "radial";
    case CheckKind::orthogonal: return "orthogonal";
    case CheckKind::decay: return "decay";
  }
  return "?";
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  reject_unknown(doc, {"n", "k", "grid", "g", "params", "epsilon", "tol", "max_iter", "checks", "keep_iterates"}, "");
  RunConfig cfg;
  cfg.n = integer(require(doc, "n", ""), "/n");
  if (cfg.n < 3) throw ConfigError("/n", "dimension must be at least 3");
  cfg.k = number(require(doc, "k", ""), "/k");
  if (!(cfg.k > 0.0 && cfg.k < cfg.n - 2)) {
    std::ostringstream s;
    s << "decay exponent must satisfy 0<k<n-2 (n = " << cfg.n << ", k = " << cfg.k << ")";
    throw ConfigError("/k", s.str());
  }
  cfg.grid = parse_grid(require(doc, "grid", ""), cfg.n, "/grid");
  cfg.g = string(require(doc, "g", ""), "/g");
  if (doc.contains("params")) {
    const json& p = doc.at("params");
    if (!p.is_object()) throw ConfigError("/params", "expected an object");
    for (const auto& [name, value] : p.items()) {
      if (value.is_null()) {
        cfg.params[name] = std::nullopt;
      } else {
        cfg.params[name] = number(value, "/params/" + name);
      }
    }
  }
  if (doc.contains("epsilon")) {
    const json& e = doc.at("epsilon");
    if (e.is_string()) {
      if (e.get<std::string>() != "auto") throw ConfigError("/epsilon", "expected \"auto\" or a number");
    } else {
      cfg.epsilon = number(e, "/epsilon");
      if (!(*cfg.epsilon > 0.0)) throw ConfigError("/epsilon", "must be positive");
    }
  }
  if (doc.contains("tol")) {
    cfg.tol = number(doc.at("tol"), "/tol");
    if (!(cfg.tol > 0.0)) throw ConfigError("/tol", "must be positive");
  }
  if (doc.contains("max_iter")) {
    cfg.max_iter = integer(doc.at("max_iter"), "/max_iter");
    if (cfg.max_iter < 1) throw ConfigError("/max_iter", "must be at least 1");
  }
  if (doc.contains("keep_iterates")) {
    if (!doc.at("keep_iterates").is_boolean()) throw ConfigError("/keep_iterates", "expected a boolean");
    cfg.keep_iterates = doc.at("keep_iterates").get<bool>();
  }
  if (doc.contains("checks")) {
    const json& c = doc.at("checks");
    if (!c.is_array()) throw ConfigError("/checks", "expected an array");
    for (std::size_t i = 0; i < c.size(); ++i) cfg.checks.push_back(parse_check(c[i], cfg, "/checks/" + std::to_string(i)));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

GridPtr make_grid(const RunConfig& config) {
  const auto& g = config.grid;
  if (g.mode == GridMode::radial) return Grid::radial(config.n, g.r_max, g.intervals, g.grading);
  return Grid::cartesian(g.r_max, g.spacing);
}

Expr make_expr(const RunConfig& config) {
  ParseOptions opts;
  opts.params = config.params;
  opts.dimension = config.grid.mode == GridMode::radial ? config.n : 3;
  Expr e = parse(config.g, opts);
  if (config.grid.mode == GridMode::radial && (depends_on(e, VarKind::x) || depends_on(e, VarKind::p))) {
    throw UsageError("radial grids accept nonlinearities of r, z and q only (found x_i or p_i)");
  }
  return e;
}

RunConfig scale_resolution(RunConfig config, double factor) {
  if (!(factor > 0.0)) throw UsageError("resolution scale must be positive");
  auto& g = config.grid;
  if (g.mode == GridMode::radial) {
    const double m = g.intervals * factor;
    if (std::abs(m - std::round(m)) > 1e-9 * m) throw UsageError("resolution scale must give an integer M");
    g.intervals = static_cast<int>(std::lround(m));
  } else {
    const double cells = g.r_max / g.spacing * factor;
    if (std::abs(cells - std::round(cells)) > 1e-9 * cells) {
      throw UsageError("resolution scale must keep R_max an integer multiple of h");
    }
    g.spacing = g.r_max / std::round(cells);
  }
  return config;
}

}  // namespace semilinear
