#pragma once

namespace semilinear {

/// Constants of the weighted Newtonian-potential estimate
///   ||N(f)||_{F_k} <= C_k ||f||_{E_{k+2}},   0 < k < n-2,
/// and the smallness threshold Q_k = 1/(2 C_k) derived from it.
struct LemmaFConstants {
  int n = 3;
  double k = 0.0;
  double omega_n = 0.0;  ///< surface area of the unit sphere in R^n
  double L_k = 0.0;      ///< gradient, homogeneous weight
  double M_k = 0.0;      ///< gradient, inhomogeneous weight
  double Ltilde_k = 0.0; ///< value, homogeneous weight
  double Mtilde_k = 0.0; ///< value, inhomogeneous weight
  double C_k = 0.0;
  double Q_k = 0.0;
};

/// Gamma function on x > 0. Throws DomainError otherwise.
double gamma(double x);

/// Surface area of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

/// c_gamma = pi^{-gamma/2} Gamma(gamma/2).
double riesz_c(double gamma_exp);

/// C(alpha, beta, n) such that
///   int |y|^{alpha-n} |x-y|^{beta-n} dy = C(alpha, beta, n) |x|^{alpha+beta-n}.
/// Requires 0 < alpha, beta and alpha + beta < n.
double riesz_composition_constant(double alpha, double beta, int n);

/// (1/omega_n) int_{R^n} |y|^{-alpha} (1+|y|)^{-beta} dy, i.e.
/// int_0^inf r^{n-1-alpha} (1+r)^{-beta} dr, by numerical quadrature.
/// Requires alpha, beta > 0 and 0 < n - alpha < beta.
double weighted_kernel_integral(double kernel_exp, double weight_exp, int n);

/// All constants of the F_k estimate for decay exponent k in (0, n-2).
/// Throws DomainError when k is out of range or a constant is not finite.
LemmaFConstants lemma_f_constants(double k, int n);

}  // namespace semilinear
