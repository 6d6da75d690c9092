#include "semilinear/weighted_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semilinear/errors.hpp"

namespace semilinear {

namespace {

template <class Magnitude>
double weighted_sup(const Field& f, double k, Magnitude mag) {
  const Grid& g = f.grid();
  double sup = 0.0;
  bool slow_tail = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double m = mag(i);
    sup = std::max(sup, std::pow(1.0 + g.radius(i), k) * m);
    // Beyond R_max the weighted envelope is m (1+R)^k ((1+R)/(1+r))^(decay-k),
    // maximal at R_max unless decay < k.
    if (g.on_boundary(i) && m > 0.0 && f.decay() < k) slow_tail = true;
  }
  return slow_tail ? std::numeric_limits<double>::infinity() : sup;
}

// Three-point derivative weights at x0 for nodes (x0, x1, x2) in any order.
void three_point_weights(double x0, double a, double b, double c, double w[3]) {
  w[0] = ((x0 - b) + (x0 - c)) / ((a - b) * (a - c));
  w[1] = ((x0 - a) + (x0 - c)) / ((b - a) * (b - c));
  w[2] = ((x0 - a) + (x0 - b)) / ((c - a) * (c - b));
}

}  // namespace

double norm_E(const Field& field, double k) {
  return weighted_sup(field, k, [&](std::size_t i) { return std::abs(field.value(i)); });
}

double norm_F(const Field& field, double k) {
  return weighted_sup(field, k, [&](std::size_t i) { return std::abs(field.value(i)) + field.grad_norm(i); });
}

Field sample(const Expr& expr, GridPtr grid, double decay) {
  if (depends_on_state(expr)) throw UsageError("sample: expression must depend on x only (found z, p or q)");
  if (grid->is_radial() && depends_on(expr, VarKind::x)) {
    throw UsageError("sample: radial grids accept expressions of r only");
  }
  const int n = grid->dimension();
  if (max_component(expr, VarKind::x) > n) throw UsageError("sample: component index exceeds the dimension");
  const SpatialGradient grad(expr, n);
  std::vector<double> values(grid->size());
  std::vector<double> g(grid->size() * static_cast<std::size_t>(grid->gradient_components()));
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto x = grid->point(i);
    values[i] = eval(expr, x, 0.0, {});
    if (grid->is_radial()) {
      g[i] = grad.radial(grid->radius(i));
    } else {
      const auto d = grad(x);
      std::copy(d.begin(), d.end(), g.begin() + 3 * static_cast<std::ptrdiff_t>(i));
    }
  }
  return Field(std::move(grid), std::move(values), std::move(g), decay);
}

Field sample(const RadialProfile& profile, GridPtr grid, double decay) {
  if (!profile.value) throw UsageError("sample: profile has no value function");
  std::vector<double> values(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) values[i] = profile.value(grid->radius(i));
  const std::size_t nc = static_cast<std::size_t>(grid->gradient_components());
  if (!profile.derivative) {
    Field raw(grid, std::move(values), std::vector<double>(grid->size() * nc, 0.0), decay);
    return fd_gradient(raw);
  }
  std::vector<double> g(grid->size() * nc, 0.0);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double r = grid->radius(i);
    const double d = profile.derivative(r);
    if (grid->is_radial()) {
      g[i] = d;
    } else if (r > 0.0) {
      const auto x = grid->point(i);
      for (int c = 0; c < 3; ++c) g[3 * i + c] = d * x[c] / r;
    }
  }
  return Field(std::move(grid), std::move(values), std::move(g), decay);
}

Field fd_gradient(const Field& field) {
  const Grid& grid = field.grid();
  const auto u = field.values();
  std::vector<double> g(field.grad_data().size(), 0.0);
  if (grid.is_radial()) {
    const auto r = grid.radii();
    const std::size_t m = r.size() - 1;
    double w[3];
    for (std::size_t i = 0; i <= m; ++i) {
      std::size_t a, b, c;
      if (i == 0) {
        a = 0, b = 1, c = 2;
      } else if (i == m) {
        a = m, b = m - 1, c = m - 2;
      } else {
        a = i, b = i - 1, c = i + 1;
      }
      three_point_weights(r[i], r[a], r[b], r[c], w);
      g[i] = w[0] * u[a] + w[1] * u[b] + w[2] * u[c];
    }
  } else {
    const double h = grid.spacing();
    for (std::size_t id = 0; id < field.size(); ++id) {
      const auto idx = grid.lattice_index(id);
      for (int d = 0; d < 3; ++d) {
        auto at = [&](int off) {
          auto j = idx;
          j[d] += off;
          return grid.node_at(j[0], j[1], j[2]);
        };
        const auto m1 = at(-1), p1 = at(1);
        double val = 0.0;
        if (m1 && p1) {
          val = (u[*p1] - u[*m1]) / (2.0 * h);
        } else if (p1) {
          const auto p2 = at(2);
          val = p2 ? (-3.0 * u[id] + 4.0 * u[*p1] - u[*p2]) / (2.0 * h) : (u[*p1] - u[id]) / h;
        } else if (m1) {
          const auto m2 = at(-2);
          val = m2 ? (3.0 * u[id] - 4.0 * u[*m1] + u[*m2]) / (2.0 * h) : (u[id] - u[*m1]) / h;
        }
        g[3 * id + d] = val;
      }
    }
  }
  return Field(field.grid_ptr(), std::vector<double>(u.begin(), u.end()), std::move(g), field.decay());
}

double interpolate_radial(const Field& field, double r) {
  const Grid& grid = field.grid();
  if (!grid.is_radial()) throw UsageError("interpolate_radial: field is not radial");
  const auto radii = grid.radii();
  if (r < 0.0 || r > grid.r_max()) throw UsageError("interpolate_radial: radius outside the grid");
  auto it = std::upper_bound(radii.begin(), radii.end(), r);
  if (it == radii.end()) return field.value(radii.size() - 1);
  const std::size_t j = static_cast<std::size_t>(it - radii.begin());
  const std::size_t i = j - 1;
  const double t = (r - radii[i]) / (radii[j] - radii[i]);
  return (1.0 - t) * field.value(i) + t * field.value(j);
}

Shells make_shells(const Grid& grid) {
  Shells s;
  if (grid.is_radial()) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      s.radius.push_back(grid.radius(i));
      s.nodes.push_back({i});
    }
    return s;
  }
  const double h = grid.spacing();
  const std::size_t count = static_cast<std::size_t>(std::floor(grid.r_max() / h)) + 1;
  s.nodes.resize(count);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto b = std::min(count - 1, static_cast<std::size_t>(std::floor(grid.radius(i) / h + 1e-9)));
    s.nodes[b].push_back(i);
  }
  // Drop empty bins, use the mean radius of each shell.
  Shells out;
  for (std::size_t b = 0; b < count; ++b) {
    if (s.nodes[b].empty()) continue;
    double mean = 0.0;
    for (auto id : s.nodes[b]) mean += grid.radius(id);
    out.radius.push_back(mean / s.nodes[b].size());
    out.nodes.push_back(std::move(s.nodes[b]));
  }
  return out;
}

}  // namespace semilinear
