#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semilinear/expr.hpp"
#include "semilinear/grid.hpp"

namespace semilinear {

/// Rejects expressions the grid cannot represent: radial grids take r, z and
/// q only; cartesian grids take components up to 3. Throws UsageError.
void validate_for_grid(const Expr& g, const Grid& grid);

/// a * (1+r)^(-m), recognized syntactically (products, quotients and
/// negation of constants, (1+r) and (1+r)^c).
struct PowerProfile {
  double a = 0.0;
  double m = 0.0;
};
std::optional<PowerProfile> match_power_profile(const Expr& e);

/// Estimated decay exponent of an expression of x: the slope of log|e|
/// against log(1+r) between R/2 and R, maximizing |e| over a few directions.
/// +inf when e vanishes at R.
double estimate_decay(const Expr& e, const Grid& grid);

struct ZeroNorm {
  double value = 0.0;
  bool closed_form = false;  ///< exact rather than a grid maximum
};

/// ||g(., 0, 0)||_{E_{k+2}}. Throws DomainError when g(., 0, 0) decays slower
/// than (1+r)^{-(k+2)}.
ZeroNorm g_at_zero_norm(const Expr& g, double k, GridPtr grid);

/// Terms of the family sum_i c_i V_i(x) exp(z) + sum_j c_j W_j(x) exp(q) + F(x).
struct ExponentialTerm {
  enum class Kind { exp_z, exp_q, source } kind = Kind::source;
  double coefficient = 1.0;
  Expr profile;  ///< product of the x-dependent factors (constant 1 if none)
};
std::optional<std::vector<ExponentialTerm>> match_exponential_family(const Expr& g);

enum class Provenance { analytic, sampled };
const char* to_string(Provenance p);

/// Bound for G_eps = sup_{0 < ||w||_{F_k} <= eps} ||D_{(z,p)} g(., w, Dw)||_{E_2}.
struct JacobianBound {
  double epsilon = 0.0;
  double value = 0.0;
  Provenance provenance = Provenance::sampled;
  std::string method;
};

/// Analytic for a zero Jacobian and for the exponential family with
/// closed-form profile norms: (sum |c| ||V||_{E_{k+2}}) e^eps. Otherwise the
/// maximum of (1+|x|)^2 |D_{(z,p)} g| over grid nodes and a probe family,
/// which can only under-estimate the supremum.
JacobianBound sup_jacobian_bound(const Expr& g, double epsilon, double k, GridPtr grid);

}  // namespace semilinear
