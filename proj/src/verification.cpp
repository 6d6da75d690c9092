#include "semilinear/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semilinear/errors.hpp"
#include "semilinear/newtonian_potential.hpp"
#include "semilinear/weighted_spaces.hpp"

namespace semilinear {

namespace {

double residual_at(const Expr& g, const Field& u, std::size_t i, double laplacian, std::vector<double>& p) {
  const auto du = u.gradient(i);
  std::fill(p.begin(), p.end(), 0.0);
  std::copy(du.begin(), du.end(), p.begin());
  return laplacian + eval(g, u.grid().point(i), u.value(i), p);
}

void require_cartesian(const Field& u, const char* what) {
  if (u.grid().is_radial()) throw UsageError(std::string(what) + " requires a cartesian field");
}

struct Sample {
  bool ok = false;
  double value = 0.0;
  std::array<double, 3> grad{};
};

// Trilinear interpolation of values and gradients at y; fails when a corner
// of the enclosing cell is outside the lattice ball.
Sample trilinear(const Field& u, const std::array<double, 3>& y) {
  const Grid& grid = u.grid();
  const double h = grid.spacing();
  std::array<int, 3> base{};
  std::array<double, 3> t{};
  for (int c = 0; c < 3; ++c) {
    double s = y[c] / h + grid.half_width();
    const double nearest = std::round(s);
    if (std::abs(s - nearest) < 1e-9) s = nearest;
    base[c] = static_cast<int>(std::floor(s));
    t[c] = s - base[c];
    if (t[c] == 0.0 && base[c] == grid.points_per_axis() - 1) {
      base[c] -= 1;
      t[c] = 1.0;
    }
  }
  Sample out;
  for (int corner = 0; corner < 8; ++corner) {
    double w = 1.0;
    std::array<int, 3> idx{};
    for (int c = 0; c < 3; ++c) {
      const int bit = (corner >> c) & 1;
      idx[c] = base[c] + bit;
      w *= bit ? t[c] : 1.0 - t[c];
    }
    if (w == 0.0) continue;
    const auto node = grid.node_at(idx[0], idx[1], idx[2]);
    if (!node) return {};
    out.value += w * u.value(*node);
    const auto g = u.gradient(*node);
    for (int c = 0; c < 3; ++c) out.grad[c] += w * g[c];
  }
  out.ok = true;
  return out;
}

}  // namespace

ResidualReport pde_residual(const Field& u, const Expr& g, double k) {
  const Grid& grid = u.grid();
  ResidualReport out;
  out.profile.assign(u.size(), 0.0);
  std::vector<double> p(static_cast<std::size_t>(grid.dimension()), 0.0);
  auto record = [&](std::size_t i, double res) {
    const double w = std::pow(1.0 + grid.radius(i), k + 2.0) * std::abs(res);
    out.profile[i] = w;
    out.sup = std::max(out.sup, w);
    ++out.evaluated;
  };
  if (grid.is_radial()) {
    const auto r = grid.radii();
    if (r.size() < 4) throw UsageError("pde_residual: grid too coarse for second differences");
    const int n = grid.dimension();
    record(0, residual_at(g, u, 0, n * 2.0 * (u.value(1) - u.value(0)) / (r[1] * r[1]), p));
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
      const double hm = r[i] - r[i - 1], hp = r[i + 1] - r[i];
      const double upp =
          2.0 * ((u.value(i + 1) - u.value(i)) / hp - (u.value(i) - u.value(i - 1)) / hm) / (hp + hm);
      record(i, residual_at(g, u, i, upp + (n - 1) * u.gradient(i)[0] / r[i], p));
    }
    return out;
  }
  const double h2 = grid.spacing() * grid.spacing();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (grid.on_boundary(i)) continue;
    const auto idx = grid.lattice_index(i);
    double sum = -6.0 * u.value(i);
    for (int d = 0; d < 3; ++d) {
      for (int s : {-1, 1}) {
        auto j = idx;
        j[d] += s;
        sum += u.value(*grid.node_at(j[0], j[1], j[2]));
      }
    }
    record(i, residual_at(g, u, i, sum / h2, p));
  }
  if (out.evaluated == 0) throw UsageError("pde_residual: grid has no interior nodes");
  return out;
}

PositivityVerdict check_positivity(const Field& u, bool strict) {
  PositivityVerdict v;
  v.strict = strict;
  const auto values = u.values();
  const auto it = std::min_element(values.begin(), values.end());
  v.node = static_cast<std::size_t>(it - values.begin());
  v.min_value = *it;
  v.location = u.grid().point(v.node);
  v.passed = strict ? v.min_value > 0.0 : v.min_value >= 0.0;
  return v;
}

RadialSymmetryVerdict check_radial_symmetry(const Field& u, double tol) {
  require_cartesian(u, "check_radial_symmetry");
  RadialSymmetryVerdict v;
  v.tol = tol;
  const Shells shells = make_shells(u.grid());
  for (std::size_t s = 0; s < shells.nodes.size(); ++s) {
    const auto& nodes = shells.nodes[s];
    const double count = static_cast<double>(nodes.size());
    double rbar = 0.0, mean = 0.0;
    for (auto i : nodes) {
      rbar += u.grid().radius(i);
      mean += u.value(i);
    }
    rbar /= count;
    mean /= count;
    // A shell of width h spans a range of radii; remove the least-squares
    // linear trend in |x| so that a radial profile does not count as variation.
    double sxx = 0.0, sxy = 0.0;
    for (auto i : nodes) {
      const double dr = u.grid().radius(i) - rbar;
      sxx += dr * dr;
      sxy += dr * (u.value(i) - mean);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (auto i : nodes) {
      const double e = u.value(i) - mean - slope * (u.grid().radius(i) - rbar);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    const double var = (hi - lo) / std::max(1.0, std::abs(mean));
    if (var > v.max_angular_variation) {
      v.max_angular_variation = var;
      v.worst_shell_radius = shells.radius[s];
    }
  }
  v.passed = v.max_angular_variation <= tol;
  return v;
}

OrthogonalVerdict check_orthogonal_symmetry(const Field& u, const Matrix3& T, SymmetryMode mode, double tol) {
  require_cartesian(u, "check_orthogonal_symmetry");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += T[i][c] * T[j][c];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-12) throw UsageError("check_orthogonal_symmetry: T is not orthogonal");
    }
  }
  OrthogonalVerdict v;
  v.mode = mode;
  v.tol = tol;
  const Grid& grid = u.grid();
  const double sign = mode == SymmetryMode::symmetric ? 1.0 : -1.0;
  double sup_u = 0.0, sup_du = 0.0, dev_u = 0.0, dev_du = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sup_u = std::max(sup_u, std::abs(u.value(i)));
    sup_du = std::max(sup_du, u.grad_norm(i));
    const auto x = grid.point(i);
    std::array<double, 3> y{};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) y[r] += T[r][c] * x[c];
    }
    const Sample s = trilinear(u, y);
    if (!s.ok) {
      ++v.skipped;
      continue;
    }
    ++v.compared;
    dev_u = std::max(dev_u, std::abs(u.value(i) - sign * s.value));
    const double gy = std::sqrt(s.grad[0] * s.grad[0] + s.grad[1] * s.grad[1] + s.grad[2] * s.grad[2]);
    dev_du = std::max(dev_du, std::abs(u.grad_norm(i) - gy));
  }
  v.value_deviation = sup_u > 0.0 ? dev_u / sup_u : 0.0;
  v.gradient_deviation = sup_du > 0.0 ? dev_du / sup_du : 0.0;
  v.passed = v.compared > 0 && v.value_deviation <= tol && v.gradient_deviation <= tol;
  return v;
}

AntisymmetryInPVerdict check_antisymmetric_in_p(const Expr& g, GridPtr grid, double k) {
  AntisymmetryInPVerdict v;
  const Field zero = Field::zero(grid, k);
  const Field g0 = evaluate_nonlinearity(g, zero, k + 2.0);
  for (double x : g0.values()) v.max_g0 = std::max(v.max_g0, std::abs(x));
  if (v.max_g0 == 0.0) {
    const Field u1 = NewtonianPotential(grid, 0).apply_B(g, zero);
    v.solver_zero = std::all_of(u1.values().begin(), u1.values().end(), [](double x) { return x == 0.0; }) &&
                    std::all_of(u1.grad_data().begin(), u1.grad_data().end(), [](double x) { return x == 0.0; });
  }
  v.passed = v.max_g0 == 0.0 && v.solver_zero;
  return v;
}

DecayVerdict check_decay(const Field& u, double k) {
  const Grid& grid = u.grid();
  const Shells shells = make_shells(grid);
  DecayVerdict v;
  v.radius = shells.radius;
  for (const auto& nodes : shells.nodes) {
    double s = 0.0;
    for (auto i : nodes) {
      s = std::max(s, std::pow(1.0 + grid.radius(i), k) * (std::abs(u.value(i)) + u.grad_norm(i)));
    }
    v.tail_profile.push_back(s);
  }
  v.limit_estimate = v.tail_profile.back();
  v.max_value = *std::max_element(v.tail_profile.begin(), v.tail_profile.end());
  const std::size_t count = v.tail_profile.size();
  const std::size_t first = count >= 5 ? count - 5 : 0;
  bool monotone = true;
  for (std::size_t i = first + 1; i < count; ++i) monotone = monotone && v.tail_profile[i] <= v.tail_profile[i - 1];
  v.improved = monotone && v.limit_estimate <= 0.2 * v.max_value;
  v.verdict = v.improved ? "improved decay" : "bounded decay only";
  return v;
}

}  // namespace semilinear
