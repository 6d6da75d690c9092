#pragma once

#include <cstddef>
#include <memory>

#include "semilinear/expr.hpp"
#include "semilinear/field.hpp"

namespace semilinear {

/// N(f) for radial f by Newton's theorem:
///   N(f)(r)  = 1/(n-2) [ r^{2-n} int_0^r f s^{n-1} ds + int_r^inf f s ds ]
///   N(f)'(r) = -r^{1-n} int_0^r f s^{n-1} ds
/// The integrands are interpolated by piecewise cubics. The part beyond R_max
/// comes from the tail model of f. Result tag: min(decay(f) - 2, n - 2).
/// Throws DomainError when decay(f) <= 2 (the outer integral diverges).
Field potential_radial(const Field& f);

/// Lattice approximation of N(f) and DN(f) on a cartesian grid: cell-weighted
/// sum of the kernel 1/(4 pi |x-y|), with the singular cell integrated exactly
/// and the region outside the ball handled by a radial tail model.
/// Evaluated as a zero-padded FFT convolution.
Field potential_cartesian(const Field& f);

/// The same lattice sum evaluated directly in O(N^2). Small grids only.
Field potential_cartesian_direct(const Field& f);

/// Potential operator bound to one grid. Cartesian grids keep FFT plans and,
/// when they fit in `cache_bytes`, the kernel spectra between calls.
class NewtonianPotential {
 public:
  explicit NewtonianPotential(GridPtr grid, std::size_t cache_bytes = std::size_t{1} << 30);
  ~NewtonianPotential();
  NewtonianPotential(NewtonianPotential&&) noexcept;
  NewtonianPotential& operator=(NewtonianPotential&&) noexcept;

  const GridPtr& grid() const noexcept;
  Field operator()(const Field& f) const;

  /// B(u) = N(g(., u, Du)). The source is tagged decay(u)+2, the result decay(u).
  Field apply_B(const Expr& g, const Field& u) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// g(x, u(x), Du(x)) at every node. Radial grids place x on the x1 axis and
/// pass p = (u', 0, ..., 0).
Field evaluate_nonlinearity(const Expr& g, const Field& u, double decay);

/// One-shot B(u) (builds a temporary operator).
Field apply_B(const Expr& g, const Field& u);

/// int_{[0,1]^3} dx / |x|.
inline constexpr double kUnitCubeInverseDistance = 1.19003868198977675332;

}  // namespace semilinear
