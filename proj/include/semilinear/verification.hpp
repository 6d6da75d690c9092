#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "semilinear/expr.hpp"
#include "semilinear/field.hpp"

namespace semilinear {

/// Weighted residual (1+|x|)^{k+2} |Delta u + g(x, u, Du)| on interior nodes.
/// Radial grids use the nonuniform three-point u'' plus (n-1) u'/r with the
/// stored u' (and n u''(0) at the origin); cartesian grids use the 7-point
/// Laplacian on nodes with all six neighbours.
struct ResidualReport {
  double sup = 0.0;
  std::vector<double> profile;  ///< per node, 0 where not evaluated
  std::size_t evaluated = 0;
};
ResidualReport pde_residual(const Field& u, const Expr& g, double k);

struct PositivityVerdict {
  bool passed = false;
  bool strict = false;
  double min_value = 0.0;
  std::size_t node = 0;         ///< argmin
  std::vector<double> location; ///< coordinates of the argmin
};
PositivityVerdict check_positivity(const Field& u, bool strict);

struct RadialSymmetryVerdict {
  bool passed = false;
  double tol = 0.0;
  double max_angular_variation = 0.0;
  double worst_shell_radius = 0.0;
};
/// Cartesian fields only: max over shells of width h of
/// (max - min) / max(1, |shell mean|), taken after removing the shell's
/// least-squares linear trend in |x|.
RadialSymmetryVerdict check_radial_symmetry(const Field& u, double tol);

using Matrix3 = std::array<std::array<double, 3>, 3>;
enum class SymmetryMode { symmetric, antisymmetric };

struct OrthogonalVerdict {
  bool passed = false;
  SymmetryMode mode = SymmetryMode::symmetric;
  double tol = 0.0;
  double value_deviation = 0.0;     ///< max |u(x) -+ u(Tx)| / sup |u|
  double gradient_deviation = 0.0;  ///< max ||Du(x)| - |Du(Tx)|| / sup |Du|
  std::size_t compared = 0;
  std::size_t skipped = 0;          ///< images outside the lattice ball
};
/// Compares u(x) with +-u(Tx), interpolating trilinearly at Tx. Deviations are
/// relative to the field's sup. Throws UsageError if T is not orthogonal
/// within 1e-12 or the field is radial.
OrthogonalVerdict check_orthogonal_symmetry(const Field& u, const Matrix3& T, SymmetryMode mode, double tol);

struct AntisymmetryInPVerdict {
  bool passed = false;
  double max_g0 = 0.0;        ///< max |g(x, 0, 0)| over nodes
  bool solver_zero = false;   ///< B(0) vanishes identically
};
/// Observable consequence of antisymmetry in p: g(., 0, 0) = 0 on the grid,
/// hence the iteration from u_0 = 0 stays at 0 after one step.
AntisymmetryInPVerdict check_antisymmetric_in_p(const Expr& g, GridPtr grid, double k);

struct DecayVerdict {
  std::vector<double> radius;
  std::vector<double> tail_profile;  ///< s(r) = max over the shell of (1+|x|)^k (|u| + |Du|)
  double limit_estimate = 0.0;       ///< s at the outermost shell
  double max_value = 0.0;
  bool improved = false;
  std::string verdict;               ///< "improved decay" or "bounded decay only"
};
/// Improved decay when s is non-increasing over the last five shells and
/// s(R_max) <= 0.2 max s.
DecayVerdict check_decay(const Field& u, double k);

}  // namespace semilinear
