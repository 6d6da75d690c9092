#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "semilinear/grid.hpp"

namespace semilinear {

/// Values and gradients of a function sampled on a Grid.
///
/// Radial fields store du/dr per node; cartesian fields store the three
/// components of Du per node (interleaved). `decay()` is the exponent of the
/// tail model: beyond R_max the field is taken to be
///   value(R_max) * ((1+R_max)/(1+r))^decay.
/// Fields are immutable once built.
class Field {
 public:
  /// Throws UsageError on size mismatch, DomainError on a non-finite entry.
  Field(GridPtr grid, std::vector<double> values, std::vector<double> grad, double decay);

  static Field zero(GridPtr grid, double decay);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double decay() const noexcept { return decay_; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> grad_data() const noexcept { return grad_; }
  double value(std::size_t i) const { return values_[i]; }
  /// Gradient components of node i (1 entry radial, 3 cartesian).
  std::span<const double> gradient(std::size_t i) const;
  /// Euclidean |Du| at node i.
  double grad_norm(std::size_t i) const;

  /// Same samples with a different tail exponent.
  Field with_decay(double decay) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  std::vector<double> grad_;
  double decay_;
};

/// a*x + b*y on a shared grid; tail exponent is the smaller of the two.
Field linear_combination(double a, const Field& x, double b, const Field& y);
Field operator-(const Field& x, const Field& y);
Field operator+(const Field& x, const Field& y);
Field operator*(double a, const Field& x);

/// CSV dump, one row per node: radial "r,u,du_dr"; cartesian
/// "x1,x2,x3,u,du1,du2,du3".
void write_csv(std::ostream& os, const Field& field);
/// Inverse of write_csv; rows must match `grid` node for node.
Field read_csv(std::istream& is, GridPtr grid, double decay);

}  // namespace semilinear
