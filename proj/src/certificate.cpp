#include "semilinear/certificate.hpp"

#include <cmath>
#include <string>

#include "semilinear/errors.hpp"

namespace semilinear {

const char* to_string(Rigor r) { return r == Rigor::analytic ? "analytic" : "heuristic"; }

Certificate check_existence(const Expr& g, double k, int n, std::optional<double> epsilon, GridPtr grid) {
  if (grid->is_radial() ? grid->dimension() != n : n != 3) {
    throw UsageError("grid dimension " + std::to_string(grid->dimension()) + " does not match n = " +
                     std::to_string(n));
  }
  if (epsilon && !(*epsilon >= 0.0 && std::isfinite(*epsilon))) {
    throw UsageError("epsilon must be a finite nonnegative number");
  }
  Certificate c;
  c.n = n;
  c.k = k;
  c.constants = lemma_f_constants(k, n);
  c.g0 = g_at_zero_norm(g, k, grid);
  c.epsilon_auto = !epsilon.has_value();
  c.epsilon = epsilon ? *epsilon : 2.0 * c.constants.C_k * c.g0.value;
  c.G_eps = sup_jacobian_bound(g, c.epsilon, k, grid);
  c.satisfied = c.G_eps.value < c.constants.Q_k && c.g0.value <= c.epsilon * c.constants.Q_k;
  c.predicted_ball = c.epsilon;
  c.rigor = c.G_eps.provenance == Provenance::analytic && c.g0.closed_form ? Rigor::analytic : Rigor::heuristic;

  if (c.rigor == Rigor::heuristic) {
    c.warnings.push_back("HEURISTIC CERTIFICATE: " + std::string(c.g0.closed_form ? "" : "g(.,0,0) norm is a grid maximum; ") +
                         "G_eps is " + c.G_eps.method + "; the true supremum may be larger");
  }
  if (c.G_eps.provenance == Provenance::sampled) {
    c.warnings.push_back("continuous differentiability of g away from (z,p) = (0,0) was checked at probe points only");
  }
  if (c.epsilon == 0.0) {
    c.warnings.push_back("epsilon = 0: g(.,0,0) vanishes, the certified solution is u = 0 and G_eps is its limit at w = 0");
  }
  return c;
}

}  // namespace semilinear
