#include "semilinear/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "semilinear/errors.hpp"

namespace semilinear {

Field::Field(GridPtr grid, std::vector<double> values, std::vector<double> grad, double decay)
    : grid_(std::move(grid)), values_(std::move(values)), grad_(std::move(grad)), decay_(decay) {
  if (!grid_) throw UsageError("field: null grid");
  const std::size_t n = grid_->size();
  const std::size_t nc = static_cast<std::size_t>(grid_->gradient_components());
  if (values_.size() != n) throw UsageError("field: value count does not match grid");
  if (grad_.size() != n * nc) throw UsageError("field: gradient count does not match grid");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("field: non-finite value at node " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < grad_.size(); ++i) {
    if (!std::isfinite(grad_[i])) {
      throw DomainError("field: non-finite gradient at node " + std::to_string(i / nc));
    }
  }
}

Field Field::zero(GridPtr grid, double decay) {
  const std::size_t n = grid->size();
  const std::size_t nc = static_cast<std::size_t>(grid->gradient_components());
  return Field(grid, std::vector<double>(n, 0.0), std::vector<double>(n * nc, 0.0), decay);
}

std::span<const double> Field::gradient(std::size_t i) const {
  const std::size_t nc = static_cast<std::size_t>(grid_->gradient_components());
  return std::span<const double>(grad_).subspan(i * nc, nc);
}

double Field::grad_norm(std::size_t i) const {
  if (grid_->is_radial()) return std::abs(grad_[i]);
  const double* g = &grad_[3 * i];
  return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

Field Field::with_decay(double decay) const { return Field(grid_, values_, grad_, decay); }

Field linear_combination(double a, const Field& x, double b, const Field& y) {
  if (x.grid_ptr() != y.grid_ptr()) throw UsageError("field arithmetic: fields live on different grids");
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * x.values()[i] + b * y.values()[i];
  const auto gx = x.grad_data();
  const auto gy = y.grad_data();
  std::vector<double> g(gx.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = a * gx[i] + b * gy[i];
  return Field(x.grid_ptr(), std::move(v), std::move(g), std::min(x.decay(), y.decay()));
}

Field operator-(const Field& x, const Field& y) { return linear_combination(1.0, x, -1.0, y); }
Field operator+(const Field& x, const Field& y) { return linear_combination(1.0, x, 1.0, y); }
Field operator*(double a, const Field& x) { return linear_combination(a, x, 0.0, x); }

void write_csv(std::ostream& os, const Field& field) {
  const Grid& g = field.grid();
  char buf[32];
  auto put = [&](double v) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    os.write(buf, end - buf);
  };
  if (g.is_radial()) {
    os << "r,u,du_dr\n";
  } else {
    os << "x1,x2,x3,u,du1,du2,du3\n";
  }
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (g.is_radial()) {
      put(g.radius(i));
    } else {
      const auto x = g.point(i);
      put(x[0]);
      os << ',';
      put(x[1]);
      os << ',';
      put(x[2]);
    }
    os << ',';
    put(field.value(i));
    for (double d : field.gradient(i)) {
      os << ',';
      put(d);
    }
    os << '\n';
  }
}

Field read_csv(std::istream& is, GridPtr grid, double decay) {
  const std::size_t ncoord = grid->is_radial() ? 1 : 3;
  const std::size_t ncomp = static_cast<std::size_t>(grid->gradient_components());
  const std::size_t ncol = ncoord + 1 + ncomp;
  std::string line;
  if (!std::getline(is, line)) throw UsageError("field csv: missing header");
  std::vector<double> values;
  std::vector<double> grad;
  values.reserve(grid->size());
  grad.reserve(grid->size() * ncomp);
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= grid->size()) throw UsageError("field csv: more rows than grid nodes");
    std::vector<double> cols;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) throw UsageError("field csv: bad number on row " + std::to_string(row + 1));
      cols.push_back(v);
      p = next;
      if (p < end && *p == ',') ++p;
    }
    if (cols.size() != ncol) throw UsageError("field csv: wrong column count on row " + std::to_string(row + 1));
    const auto x = grid->point(row);
    for (std::size_t d = 0; d < ncoord; ++d) {
      const double expected = grid->is_radial() ? grid->radius(row) : x[d];
      if (std::abs(cols[d] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
        throw UsageError("field csv: row " + std::to_string(row + 1) + " does not match the grid node");
      }
    }
    values.push_back(cols[ncoord]);
    for (std::size_t c = 0; c < ncomp; ++c) grad.push_back(cols[ncoord + 1 + c]);
    ++row;
  }
  if (row != grid->size()) throw UsageError("field csv: fewer rows than grid nodes");
  return Field(std::move(grid), std::move(values), std::move(grad), decay);
}

}  // namespace semilinear
