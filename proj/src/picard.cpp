#include "semilinear/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "semilinear/errors.hpp"
#include "semilinear/weighted_spaces.hpp"

namespace semilinear {

SolveReport solve(const Expr& g, GridPtr grid, double k, const Certificate& certificate,
                  const SolveOptions& options) {
  const NewtonianPotential potential(std::move(grid));
  return solve(g, potential, k, certificate, options);
}

SolveReport solve(const Expr& g, const NewtonianPotential& potential, double k, const Certificate& certificate,
                  const SolveOptions& options) {
  if (options.max_iter < 1) throw UsageError("max_iter must be at least 1");
  if (!(options.tol >= 0.0)) throw UsageError("tol must be nonnegative");
  const GridPtr& grid = potential.grid();
  validate_for_grid(g, *grid);

  SolveReport report;
  report.certificate = certificate;
  Field prev = options.initial ? options.initial->with_decay(k) : Field::zero(grid, k);
  if (prev.grid_ptr() != grid) throw UsageError("initial iterate lives on another grid");

  for (int m = 1; m <= options.max_iter; ++m) {
    std::optional<Field> next;
    try {
      next.emplace(potential.apply_B(g, prev));
    } catch (const DomainError& e) {
      throw DivergenceError(e.what(), m);
    }
    const double norm = norm_F(*next, k);
    const double d = norm_F(*next - prev, k);
    if (!std::isfinite(norm) || !std::isfinite(d)) throw DivergenceError("iterate norm is not finite", m);
    report.fk_norms.push_back(norm);
    report.distances.push_back(d);
    report.iterations = m;
    if (m == 1 || options.keep_all_iterates) {
      report.iterates.push_back(*next);
      report.iterate_index.push_back(m);
    }
    prev = std::move(*next);
    if (d <= options.tol) {
      report.converged = true;
      break;
    }
  }
  if (report.iterate_index.back() != report.iterations) {
    report.iterates.push_back(prev);
    report.iterate_index.push_back(report.iterations);
  }

  const auto& d = report.distances;
  for (std::size_t m = 0; m + 1 < d.size(); ++m) {
    const double floor = 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, report.fk_norms[m]);
    const bool assessed = d[m] > floor && d[m + 1] > floor;
    report.ratios.push_back(d[m] > 0.0 ? d[m + 1] / d[m] : 0.0);
    report.ratio_assessed.push_back(assessed);
  }

  if (certificate.satisfied) {
    for (std::size_t m = 0; m < report.ratios.size(); ++m) {
      if (report.ratio_assessed[m] && report.ratios[m] > options.ratio_limit) {
        std::ostringstream s;
        s << "contraction ratio d_" << m + 2 << "/d_" << m + 1 << " = " << report.ratios[m] << " exceeds "
          << options.ratio_limit;
        report.violations.push_back(s.str());
      }
    }
    for (std::size_t m = 0; m < report.fk_norms.size(); ++m) {
      if (report.fk_norms[m] > certificate.epsilon) {
        std::ostringstream s;
        s << "||u_" << m + 1 << "||_F = " << report.fk_norms[m] << " exceeds epsilon = " << certificate.epsilon;
        report.violations.push_back(s.str());
      }
    }
  }
  return report;
}

double fixed_point_residual(const Field& u, const Expr& g, double k, const NewtonianPotential& potential) {
  const Field v = u.with_decay(k);
  return norm_F(v - potential.apply_B(g, v), k);
}

double fixed_point_residual(const Field& u, const Expr& g, double k) {
  return fixed_point_residual(u, g, k, NewtonianPotential(u.grid_ptr(), 0));
}

}  // namespace semilinear
