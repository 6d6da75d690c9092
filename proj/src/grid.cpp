#include "semilinear/grid.hpp"

#include <cmath>
#include <string>

#include "semilinear/errors.hpp"

namespace semilinear {

std::shared_ptr<const Grid> Grid::radial(int n, double r_max, int intervals, double grading) {
  if (n < 3) throw UsageError("radial grid: dimension must be >= 3");
  if (!(r_max > 1.0)) throw UsageError("radial grid: R_max must exceed 1");
  if (intervals < 64) throw UsageError("radial grid: need at least 64 intervals, got " + std::to_string(intervals));
  if (!(grading >= 1.0)) throw UsageError("radial grid: grading exponent must be >= 1");

  std::shared_ptr<Grid> g(new Grid());
  g->mode_ = GridMode::radial;
  g->n_ = n;
  g->r_max_ = r_max;
  g->intervals_ = intervals;
  g->grading_ = grading;
  g->radius_.resize(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    g->radius_[i] = r_max * std::pow(static_cast<double>(i) / intervals, grading);
  }
  g->radius_.back() = r_max;
  g->boundary_.assign(g->radius_.size(), 0);
  g->boundary_.back() = 1;
  return g;
}

std::shared_ptr<const Grid> Grid::cartesian(double r_max, double spacing) {
  if (!(r_max > 1.0)) throw UsageError("cartesian grid: R_max must exceed 1");
  if (!(spacing > 0.0)) throw UsageError("cartesian grid: spacing must be positive");
  const double ratio = r_max / spacing;
  const int half = static_cast<int>(std::lround(ratio));
  if (std::abs(ratio - half) > 1e-9 * ratio) {
    throw UsageError("cartesian grid: R_max must be an integer multiple of h");
  }
  if (2 * half + 1 < 33) {
    throw UsageError("cartesian grid: need at least 33 points per axis, got " + std::to_string(2 * half + 1));
  }

  std::shared_ptr<Grid> g(new Grid());
  g->mode_ = GridMode::cartesian3d;
  g->n_ = 3;
  g->r_max_ = r_max;
  g->h_ = spacing;
  g->half_ = half;
  const int p = 2 * half + 1;
  const long long r2max = static_cast<long long>(half) * half;
  g->lookup_.assign(static_cast<std::size_t>(p) * p * p, -1);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      for (int l = 0; l < p; ++l) {
        const long long a = i - half, b = j - half, c = l - half;
        if (a * a + b * b + c * c > r2max) continue;
        g->lookup_[(static_cast<std::size_t>(i) * p + j) * p + l] = static_cast<int>(g->lattice_.size());
        g->lattice_.push_back({i, j, l});
        g->radius_.push_back(spacing * std::sqrt(static_cast<double>(a * a + b * b + c * c)));
      }
    }
  }
  g->boundary_.assign(g->lattice_.size(), 0);
  for (std::size_t id = 0; id < g->lattice_.size(); ++id) {
    const auto [i, j, l] = g->lattice_[id];
    const bool interior = g->node_at(i - 1, j, l) && g->node_at(i + 1, j, l) && g->node_at(i, j - 1, l) &&
                          g->node_at(i, j + 1, l) && g->node_at(i, j, l - 1) && g->node_at(i, j, l + 1);
    g->boundary_[id] = interior ? 0 : 1;
  }
  return g;
}

std::vector<double> Grid::point(std::size_t i) const {
  std::vector<double> x(static_cast<std::size_t>(n_), 0.0);
  if (is_radial()) {
    x[0] = radius_[i];
  } else {
    const auto& idx = lattice_[i];
    for (int d = 0; d < 3; ++d) x[d] = h_ * (idx[d] - half_);
  }
  return x;
}

std::optional<std::size_t> Grid::node_at(int i, int j, int l) const {
  const int p = points_per_axis();
  if (i < 0 || j < 0 || l < 0 || i >= p || j >= p || l >= p) return std::nullopt;
  const int id = lookup_[(static_cast<std::size_t>(i) * p + j) * p + l];
  if (id < 0) return std::nullopt;
  return static_cast<std::size_t>(id);
}

}  // namespace semilinear
