#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semilinear/constants.hpp"
#include "semilinear/expr.hpp"
#include "semilinear/grid.hpp"
#include "semilinear/nonlinearity.hpp"

namespace semilinear {

enum class Rigor { analytic, heuristic };
const char* to_string(Rigor r);

/// Outcome of the existence test
///   G_eps < Q_k   and   ||g(., 0, 0)||_{E_{k+2}} <= eps Q_k,
/// which guarantees a unique solution with ||u||_{F_k} <= eps.
struct Certificate {
  int n = 3;
  double k = 0.0;
  double epsilon = 0.0;
  bool epsilon_auto = false;
  LemmaFConstants constants;
  ZeroNorm g0;
  JacobianBound G_eps;
  bool satisfied = false;
  double predicted_ball = 0.0;  ///< the guaranteed bound on ||u||_{F_k}
  Rigor rigor = Rigor::heuristic;
  std::vector<std::string> warnings;
};

/// Builds the certificate. With no epsilon, eps = 2 C_k ||g(., 0, 0)||_{E_{k+2}}
/// (so the second condition holds with equality). Throws DomainError for k
/// outside (0, n-2) or g(., 0, 0) outside E_{k+2}; UsageError when the grid
/// does not match n.
Certificate check_existence(const Expr& g, double k, int n, std::optional<double> epsilon, GridPtr grid);

}  // namespace semilinear
