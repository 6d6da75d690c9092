#pragma once

#include <functional>
#include <vector>

#include "semilinear/expr.hpp"
#include "semilinear/field.hpp"

namespace semilinear {

/// ||u||_{E_k}: max over nodes of (1+|x|)^k |u(x)|, extended by the tail
/// model. A tail decaying slower than k with a nonzero boundary value gives +inf.
double norm_E(const Field& field, double k);

/// ||u||_{F_k}: as norm_E with |u| + |Du| in place of |u|.
double norm_F(const Field& field, double k);

/// Radially symmetric profile for sampling. Without a derivative, the
/// gradient is taken by finite differences.
struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Pointwise samples of an expression of x (r and x_i only). Gradients come
/// from symbolic differentiation. Radial grids reject x_i.
Field sample(const Expr& expr, GridPtr grid, double decay);
Field sample(const RadialProfile& profile, GridPtr grid, double decay);

/// Same samples with gradients replaced by second-order finite differences
/// (one-sided at the ends of the radial grid and at the edge of the lattice ball).
Field fd_gradient(const Field& field);

/// Linear interpolation of a radial field's values at radius r (r <= R_max).
double interpolate_radial(const Field& field, double r);

/// Spherical shells used by shell-wise diagnostics: radial grids give one
/// shell per node, cartesian grids bin nodes by floor(|x|/h).
struct Shells {
  std::vector<double> radius;                 ///< representative radius per shell
  std::vector<std::vector<std::size_t>> nodes;
};
Shells make_shells(const Grid& grid);

}  // namespace semilinear
