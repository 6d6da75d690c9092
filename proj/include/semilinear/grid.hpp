#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace semilinear {

enum class GridMode { radial, cartesian3d };

/// Discretization of the ball |x| <= R_max in R^n.
///
/// Radial grids hold graded nodes r_i = R_max (i/M)^grading, i = 0..M, and
/// represent radially symmetric functions. Cartesian grids hold the lattice
/// points h*(i,j,l) of the cube [-R_max, R_max]^3 that fall inside the ball.
/// Grids are immutable and shared between fields through shared_ptr.
class Grid {
 public:
  static std::shared_ptr<const Grid> radial(int n, double r_max, int intervals, double grading = 2.0);
  static std::shared_ptr<const Grid> cartesian(double r_max, double spacing);

  GridMode mode() const noexcept { return mode_; }
  bool is_radial() const noexcept { return mode_ == GridMode::radial; }
  int dimension() const noexcept { return n_; }
  double r_max() const noexcept { return r_max_; }
  std::size_t size() const noexcept { return radius_.size(); }

  /// |x| of node i.
  double radius(std::size_t i) const { return radius_[i]; }
  std::span<const double> radii() const noexcept { return radius_; }

  /// Number of stored gradient components per node (1 radial, 3 cartesian).
  int gradient_components() const noexcept { return is_radial() ? 1 : 3; }

  /// Coordinates of node i in R^n. Radial nodes are placed on the x1 axis.
  std::vector<double> point(std::size_t i) const;

  /// True for nodes whose weighted values continue into the tail model
  /// (the outermost radial node, or cartesian nodes missing a lattice neighbour).
  bool on_boundary(std::size_t i) const { return boundary_[i] != 0; }

  // Radial-only.
  int intervals() const noexcept { return intervals_; }
  double grading() const noexcept { return grading_; }

  // Cartesian-only.
  double spacing() const noexcept { return h_; }
  int half_width() const noexcept { return half_; }          ///< m with R_max = m h
  int points_per_axis() const noexcept { return 2 * half_ + 1; }
  std::array<int, 3> lattice_index(std::size_t i) const { return lattice_[i]; }
  /// Node id at lattice index (i,j,l) in [0, points_per_axis)^3, if inside the ball.
  std::optional<std::size_t> node_at(int i, int j, int l) const;

 private:
  Grid() = default;

  GridMode mode_ = GridMode::radial;
  int n_ = 3;
  double r_max_ = 0.0;
  std::vector<double> radius_;
  std::vector<unsigned char> boundary_;

  int intervals_ = 0;
  double grading_ = 2.0;

  double h_ = 0.0;
  int half_ = 0;
  std::vector<std::array<int, 3>> lattice_;
  std::vector<int> lookup_;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace semilinear
