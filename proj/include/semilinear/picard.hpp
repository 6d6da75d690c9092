#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semilinear/certificate.hpp"
#include "semilinear/field.hpp"
#include "semilinear/newtonian_potential.hpp"

namespace semilinear {

struct SolveOptions {
  double tol = 1e-8;   ///< stop once ||u_m - u_{m-1}||_{F_k} <= tol
  int max_iter = 60;
  bool keep_all_iterates = false;
  /// Upper bound on d_{m+1}/d_m enforced when the certificate holds
  /// (1/2 in exact arithmetic, plus discretization slack).
  double ratio_limit = 0.6;
  /// Start iterate; zero when absent.
  std::optional<Field> initial;
};

struct SolveReport {
  std::vector<Field> iterates;          ///< kept iterates (u_1 and the last at least)
  std::vector<int> iterate_index;       ///< m of each kept iterate
  std::vector<double> fk_norms;         ///< ||u_m||_{F_k}, m = 1..iterations
  std::vector<double> distances;        ///< d_m = ||u_m - u_{m-1}||_{F_k}
  std::vector<double> ratios;           ///< d_{m+1} / d_m
  std::vector<bool> ratio_assessed;     ///< false where d_m is at rounding level
  bool converged = false;
  int iterations = 0;
  Certificate certificate;
  /// Breaches of the contraction or ball bound on a certified run.
  std::vector<std::string> violations;

  const Field& solution() const { return iterates.back(); }
};

/// Picard iteration u_m = B(u_{m-1}). Throws DivergenceError (with the
/// iteration index) when an iterate stops being finite.
SolveReport solve(const Expr& g, GridPtr grid, double k, const Certificate& certificate,
                  const SolveOptions& options = {});
/// Same, reusing an existing potential operator for the grid.
SolveReport solve(const Expr& g, const NewtonianPotential& potential, double k, const Certificate& certificate,
                  const SolveOptions& options = {});

/// ||u - B(u)||_{F_k}.
double fixed_point_residual(const Field& u, const Expr& g, double k);
double fixed_point_residual(const Field& u, const Expr& g, double k, const NewtonianPotential& potential);

}  // namespace semilinear
