#include "semilinear/nonlinearity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "semilinear/errors.hpp"
#include "semilinear/weighted_spaces.hpp"

namespace semilinear {

namespace {

struct Factor {
  Expr e;
  int power;  // +1 numerator, -1 denominator
};

void collect_factors(const Expr& e, int power, double& coefficient, std::vector<Factor>& out) {
  switch (e.op()) {
    case Op::mul:
      collect_factors(e.lhs(), power, coefficient, out);
      collect_factors(e.rhs(), power, coefficient, out);
      return;
    case Op::div:
      collect_factors(e.lhs(), power, coefficient, out);
      collect_factors(e.rhs(), -power, coefficient, out);
      return;
    case Op::neg:
      coefficient = -coefficient;
      collect_factors(e.lhs(), power, coefficient, out);
      return;
    default:
      if (e.is_constant()) {
        coefficient *= power > 0 ? e.constant_value() : 1.0 / e.constant_value();
      } else {
        out.push_back({e, power});
      }
  }
}

void collect_terms(const Expr& e, double sign, std::vector<std::pair<double, Expr>>& out) {
  switch (e.op()) {
    case Op::add:
      collect_terms(e.lhs(), sign, out);
      collect_terms(e.rhs(), sign, out);
      return;
    case Op::sub:
      collect_terms(e.lhs(), sign, out);
      collect_terms(e.rhs(), -sign, out);
      return;
    case Op::neg:
      collect_terms(e.lhs(), -sign, out);
      return;
    default:
      out.emplace_back(sign, e);
  }
}

bool is_variable(const Expr& e, VarKind kind) { return e.op() == Op::variable && e.variable().kind == kind; }

bool is_one_plus_r(const Expr& e) {
  if (e.op() != Op::add) return false;
  const Expr a = e.lhs(), b = e.rhs();
  auto one = [](const Expr& x) { return x.is_constant() && x.constant_value() == 1.0; };
  return (one(a) && is_variable(b, VarKind::r)) || (is_variable(a, VarKind::r) && one(b));
}

Expr rebuild_product(const std::vector<Factor>& factors) {
  Expr num = Expr::constant(1.0);
  Expr den = Expr::constant(1.0);
  for (const auto& f : factors) {
    if (f.power > 0) {
      num = Expr::binary(Op::mul, num, f.e);
    } else {
      den = Expr::binary(Op::mul, den, f.e);
    }
  }
  return simplify(Expr::binary(Op::div, num, den));
}

std::vector<std::vector<double>> probe_directions(const Grid& grid) {
  const int n = grid.dimension();
  std::vector<std::vector<double>> dirs;
  auto unit = [n](int i, double s) {
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    d[static_cast<std::size_t>(i)] = s;
    return d;
  };
  if (grid.is_radial()) return {unit(0, 1.0)};
  for (int i = 0; i < 3; ++i) {
    dirs.push_back(unit(i, 1.0));
    dirs.push_back(unit(i, -1.0));
  }
  const double c = 1.0 / std::sqrt(3.0);
  for (int s = 0; s < 8; ++s) {
    dirs.push_back({(s & 1) ? -c : c, (s & 2) ? -c : c, (s & 4) ? -c : c});
  }
  return dirs;
}

double profile_norm_sampled(const Expr& profile, double k, const GridPtr& grid) {
  const double decay = estimate_decay(profile, *grid);
  if (decay < k + 2.0 - 1e-2) return std::numeric_limits<double>::infinity();
  return norm_E(sample(profile, grid, k + 2.0), k + 2.0);
}

JacobianBound sampled_bound(const Expr& g, double epsilon, double k, const Grid& grid) {
  const int n = grid.dimension();
  const ZpJacobian jac(g, n);
  JacobianBound out{epsilon, 0.0, Provenance::sampled, ""};
  const std::size_t limit = 20000;
  const std::size_t stride = std::max<std::size_t>(1, (grid.size() + limit - 1) / limit);
  const std::array<double, 4> cs{0.25, 0.5, 0.75, 1.0};
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  std::size_t skipped = 0, evaluated = 0;
  auto score = [&](std::span<const double> x, double z, double w) {
    try {
      out.value = std::max(out.value, w * jac(x, z, p).norm());
      ++evaluated;
    } catch (const DomainError&) {
      ++skipped;
    }
  };
  for (std::size_t i = 0; i < grid.size(); i += stride) {
    const auto x = grid.point(i);
    const double r = grid.radius(i);
    const double w = (1.0 + r) * (1.0 + r);
    const double rho = epsilon * std::pow(1.0 + r, -k);
    std::vector<double> xhat(static_cast<std::size_t>(n), 0.0);
    if (grid.is_radial()) {
      xhat[0] = 1.0;
    } else if (r > 0.0) {
      for (int c = 0; c < 3; ++c) xhat[c] = x[c] / r;
    }
    // w_c = +-c eps (1+r)^{-k} / (1+k), so that ||w_c||_{F_k} = c eps.
    for (double c : cs) {
      for (double s : {1.0, -1.0}) {
        const double z = s * c * rho / (1.0 + k);
        const double dr = -s * c * k * rho / ((1.0 + k) * (1.0 + r));
        for (int d = 0; d < n; ++d) p[d] = dr * xhat[d];
        score(x, z, w);
      }
    }
    // Points of the sphere |(z,p)| = eps (1+r)^{-k}.
    std::vector<std::vector<double>> dirs;
    if (grid.is_radial()) {
      dirs.push_back(xhat);
    } else {
      if (r > 0.0) dirs.push_back(xhat);
      for (int c = 0; c < 3; ++c) {
        std::vector<double> e(3, 0.0);
        e[c] = 1.0;
        dirs.push_back(e);
      }
    }
    for (int j = 0; j < 16; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / 16.0;
      const double z = rho * std::cos(theta);
      for (const auto& dir : dirs) {
        for (int d = 0; d < n; ++d) p[d] = rho * std::sin(theta) * dir[d];
        score(x, z, w);
      }
    }
  }
  std::ostringstream m;
  m << "sampled lower estimate over " << evaluated << " probes";
  if (skipped) m << " (" << skipped << " non-differentiable probes skipped)";
  out.method = m.str();
  return out;
}

}  // namespace

void validate_for_grid(const Expr& g, const Grid& grid) {
  if (grid.is_radial()) {
    if (depends_on(g, VarKind::x) || depends_on(g, VarKind::p)) {
      throw UsageError("radial grids accept nonlinearities of r, z and q only (found x_i or p_i)");
    }
    return;
  }
  if (max_component(g, VarKind::x) > 3 || max_component(g, VarKind::p) > 3) {
    throw UsageError("cartesian grids are three-dimensional (component index above 3)");
  }
}

std::optional<PowerProfile> match_power_profile(const Expr& e) {
  double a = 1.0;
  std::vector<Factor> factors;
  collect_factors(simplify(e), 1, a, factors);
  double m = 0.0;
  for (const auto& f : factors) {
    if (is_one_plus_r(f.e)) {
      m -= f.power;
    } else if (f.e.op() == Op::pow && is_one_plus_r(f.e.lhs()) && f.e.rhs().is_constant()) {
      m -= f.power * f.e.rhs().constant_value();
    } else {
      return std::nullopt;
    }
  }
  if (!std::isfinite(a)) return std::nullopt;
  return PowerProfile{a, m};
}

double estimate_decay(const Expr& e, const Grid& grid) {
  const double outer = grid.r_max(), inner = 0.5 * grid.r_max();
  double big = 0.0, small = 0.0;
  for (const auto& dir : probe_directions(grid)) {
    std::vector<double> x(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i) x[i] = inner * dir[i];
    big = std::max(big, std::abs(eval(e, x, 0.0, {})));
    for (std::size_t i = 0; i < dir.size(); ++i) x[i] = outer * dir[i];
    small = std::max(small, std::abs(eval(e, x, 0.0, {})));
  }
  if (small == 0.0) return std::numeric_limits<double>::infinity();
  if (big == 0.0) return 0.0;
  return std::log(big / small) / std::log((1.0 + outer) / (1.0 + inner));
}

ZeroNorm g_at_zero_norm(const Expr& g, double k, GridPtr grid) {
  validate_for_grid(g, *grid);
  const Expr g0 = at_zero_state(g);
  auto too_slow = [k](double m) {
    std::ostringstream s;
    s << "g(x,0,0) is not in E_{k+2}: it decays like (1+|x|)^-" << m << ", slower than (1+|x|)^-" << k + 2.0;
    return DomainError(s.str());
  };
  if (g0.is_constant()) {
    if (g0.constant_value() == 0.0) return {0.0, true};
    throw too_slow(0.0);
  }
  if (const auto pp = match_power_profile(g0)) {
    if (pp->a == 0.0) return {0.0, true};
    if (pp->m < k + 2.0) throw too_slow(pp->m);
    return {std::abs(pp->a), true};
  }
  const double decay = estimate_decay(g0, *grid);
  if (decay < k + 2.0 - 1e-2) throw too_slow(decay);
  return {norm_E(sample(g0, grid, k + 2.0), k + 2.0), false};
}

std::optional<std::vector<ExponentialTerm>> match_exponential_family(const Expr& g) {
  std::vector<std::pair<double, Expr>> terms;
  collect_terms(simplify(g), 1.0, terms);
  std::vector<ExponentialTerm> out;
  for (const auto& [sign, term] : terms) {
    double c = sign;
    std::vector<Factor> factors;
    collect_factors(term, 1, c, factors);
    ExponentialTerm t;
    std::vector<Factor> profile;
    for (const auto& f : factors) {
      if (f.e.op() == Op::exp && f.power == 1 &&
          (is_variable(f.e.lhs(), VarKind::z) || is_variable(f.e.lhs(), VarKind::q))) {
        if (t.kind != ExponentialTerm::Kind::source) return std::nullopt;
        t.kind = is_variable(f.e.lhs(), VarKind::z) ? ExponentialTerm::Kind::exp_z : ExponentialTerm::Kind::exp_q;
      } else if (depends_on_state(f.e)) {
        return std::nullopt;
      } else {
        profile.push_back(f);
      }
    }
    t.coefficient = c;
    t.profile = rebuild_product(profile);
    out.push_back(t);
  }
  return out;
}

const char* to_string(Provenance p) { return p == Provenance::analytic ? "analytic" : "sampled"; }

JacobianBound sup_jacobian_bound(const Expr& g, double epsilon, double k, GridPtr grid) {
  if (!(epsilon >= 0.0)) throw UsageError("sup_jacobian_bound: epsilon must be nonnegative");
  validate_for_grid(g, *grid);
  if (ZpJacobian(g, grid->dimension()).is_zero()) {
    return {epsilon, 0.0, Provenance::analytic, "Jacobian vanishes identically"};
  }
  if (const auto family = match_exponential_family(g)) {
    double sum = 0.0;
    bool closed = true;
    for (const auto& t : *family) {
      if (t.kind == ExponentialTerm::Kind::source || t.coefficient == 0.0) continue;
      const auto pp = match_power_profile(t.profile);
      if (pp && pp->m >= k + 2.0) {
        sum += std::abs(t.coefficient * pp->a);
      } else {
        closed = false;
        sum += std::abs(t.coefficient) * profile_norm_sampled(t.profile, k, grid);
      }
    }
    const double value = sum * std::exp(epsilon);
    if (closed) return {epsilon, value, Provenance::analytic, "exponential family, closed-form profile norms"};
    return {epsilon, value, Provenance::sampled, "exponential family, profile norms sampled on the grid"};
  }
  return sampled_bound(g, epsilon, k, *grid);
}

}  // namespace semilinear
