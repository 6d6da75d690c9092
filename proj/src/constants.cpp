#include "semilinear/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "semilinear/errors.hpp"

namespace semilinear {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_finite_positive(double v, const char* name, double k, int n) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw DomainError(std::string(name) + " diverges for k=" + fmt(k) + ", n=" +
                      std::to_string(n) + " (constants blow up as k -> 0+ or k -> n-2)");
  }
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive, got " + fmt(x));
  return std::tgamma(x);
}

double unit_sphere_area(int n) {
  if (n < 1) throw DomainError("unit_sphere_area: dimension must be >= 1");
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / gamma(half);
}

double riesz_c(double gamma_exp) {
  if (!(gamma_exp > 0.0)) throw DomainError("riesz_c: exponent must be positive, got " + fmt(gamma_exp));
  return std::pow(std::numbers::pi, -0.5 * gamma_exp) * gamma(0.5 * gamma_exp);
}

double riesz_composition_constant(double alpha, double beta, int n) {
  if (!(alpha > 0.0)) throw DomainError("riesz_composition_constant: requires 0 < alpha");
  if (!(beta > 0.0)) throw DomainError("riesz_composition_constant: requires 0 < beta");
  if (!(alpha < n)) throw DomainError("riesz_composition_constant: requires alpha < n");
  if (!(beta < n)) throw DomainError("riesz_composition_constant: requires beta < n");
  if (!(alpha + beta < n)) throw DomainError("riesz_composition_constant: requires alpha + beta < n");
  const double num = riesz_c(alpha) * riesz_c(beta) * riesz_c(n - alpha - beta);
  const double den = riesz_c(alpha + beta) * riesz_c(n - alpha) * riesz_c(n - beta);
  return num / den;
}

double weighted_kernel_integral(double kernel_exp, double weight_exp, int n) {
  const double a = kernel_exp;
  const double b = weight_exp;
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("weighted_kernel_integral: requires alpha > 0 and beta > 0");
  if (!(n - a > 0.0)) throw DomainError("weighted_kernel_integral: |y|^-alpha not locally integrable (n - alpha <= 0)");
  if (!(n - a < b)) throw DomainError("weighted_kernel_integral: integral diverges at infinity (beta <= n - alpha)");

  // int_0^inf r^p (1+r)^-b dr with p = n-1-a > -1; split at r = 1 and map the
  // tail through r = t/(1-t), t in [1/2, 1).
  const double p = n - 1.0 - a;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double tol = 1e-13;

  auto inner = [&](double r) { return std::pow(r, p) * std::pow(1.0 + r, -b); };
  // With r = t/(1-t): dr = dt/(1-t)^2, 1+r = 1/(1-t).
  auto tail = [&](double t, double one_minus_t) {
    if (one_minus_t <= 0.0) return 0.0;
    const double r = t / one_minus_t;
    return std::pow(r, p) * std::pow(one_minus_t, b - 2.0);
  };

  double err = 0.0;
  const double head = integrator.integrate(inner, 0.0, 1.0, tol, &err);
  // Two-argument form: tc = 1 - t exactly on the right half of the interval.
  const double rest = integrator.integrate(
      [&](double t, double tc) { return tail(t, tc > 0.0 ? tc : 1.0 - t); }, 0.5, 1.0, tol, &err);
  return head + rest;
}

LemmaFConstants lemma_f_constants(double k, int n) {
  if (n < 3) throw DomainError("lemma_f_constants: requires n >= 3");
  if (!(k > 0.0 && k < n - 2.0)) {
    throw DomainError("lemma_f_constants: decay exponent must satisfy 0<k<n-2, got k=" + fmt(k) +
                      ", n=" + std::to_string(n));
  }
  LemmaFConstants c;
  c.n = n;
  c.k = k;
  c.omega_n = unit_sphere_area(n);
  c.L_k = riesz_composition_constant(n - k - 2.0, 1.0, n) / c.omega_n;
  c.M_k = 1.0 / (k + 1.0);
  c.Ltilde_k = riesz_composition_constant(n - 2.0 - k, 2.0, n) / ((n - 2.0) * c.omega_n);
  c.Mtilde_k = 1.0 / ((n - 2.0) * k * (k + 1.0));
  require_finite_positive(c.L_k, "L_k", k, n);
  require_finite_positive(c.M_k, "M_k", k, n);
  require_finite_positive(c.Ltilde_k, "Ltilde_k", k, n);
  require_finite_positive(c.Mtilde_k, "Mtilde_k", k, n);
  c.C_k = std::pow(2.0, k + 2.0) * (c.M_k + c.L_k + c.Mtilde_k + c.Ltilde_k);
  require_finite_positive(c.C_k, "C_k", k, n);
  c.Q_k = 1.0 / (2.0 * c.C_k);
  return c;
}

}  // namespace semilinear
