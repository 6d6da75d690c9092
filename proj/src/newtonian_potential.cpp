#include "semilinear/newtonian_potential.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <new>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semilinear/errors.hpp"

namespace semilinear {

namespace {

// int_R^inf f_R ((1+R)/(1+s))^t s ds
double tail_moment(double f_r, double r_max, double t) {
  if (f_r == 0.0) return 0.0;
  const double a = 1.0 + r_max;
  return f_r * std::pow(a, t) * (std::pow(a, 2.0 - t) / (t - 2.0) - std::pow(a, 1.0 - t) / (t - 1.0));
}

void require_convergent_tail(const Field& f) {
  if (!(f.decay() > 2.0)) {
    throw DomainError("divergent tail: source decay exponent " + std::to_string(f.decay()) +
                      " must exceed 2");
  }
}

// Weights w[j][0..3] so that int_{r_j}^{r_{j+1}} P = sum_m w[j][m] y[start(j)+m],
// P the cubic through four consecutive nodes around the interval.
struct CubicQuadrature {
  std::vector<std::size_t> start;
  std::vector<std::array<double, 4>> w;
};

CubicQuadrature cubic_quadrature(std::span<const double> r) {
  const std::size_t m = r.size() - 1;
  CubicQuadrature q;
  q.start.resize(m);
  q.w.resize(m);
  const double g = 0.5 / std::sqrt(3.0);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t s = std::min(j == 0 ? 0 : j - 1, m - 3);
    q.start[j] = s;
    const double a = r[j], b = r[j + 1];
    const double mid = 0.5 * (a + b), half = b - a;
    std::array<double, 4> w{};
    for (double t : {mid - g * half, mid + g * half}) {
      for (int i = 0; i < 4; ++i) {
        double l = 1.0;
        for (int k = 0; k < 4; ++k) {
          if (k != i) l *= (t - r[s + k]) / (r[s + i] - r[s + k]);
        }
        w[i] += 0.5 * half * l;
      }
    }
    q.w[j] = w;
  }
  return q;
}

double interval_integral(const CubicQuadrature& q, std::size_t j, const std::vector<double>& y) {
  const auto& w = q.w[j];
  const std::size_t s = q.start[j];
  return w[0] * y[s] + w[1] * y[s + 1] + w[2] * y[s + 2] + w[3] * y[s + 3];
}

double result_decay(const Field& f, int n) { return std::min(f.decay() - 2.0, static_cast<double>(n - 2)); }

// Mean of f over the boundary nodes, used as the tail value at R_max.
double boundary_mean(const Field& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (g.on_boundary(i)) {
      sum += f.value(i);
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

void require_cartesian(const Field& f) {
  if (f.grid().is_radial()) throw UsageError("cartesian potential requires a cartesian grid");
}

double singular_cell_value(double h) { return h * h * kUnitCubeInverseDistance / (2.0 * std::numbers::pi); }

// Smallest L >= m with no prime factor above 7.
std::size_t smooth_size(std::size_t m) {
  for (std::size_t l = m;; ++l) {
    std::size_t x = l;
    for (std::size_t p : {2, 3, 5, 7}) {
      while (x % p == 0) x /= p;
    }
    if (x == 1) return l;
  }
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

Field potential_radial(const Field& f) {
  const Grid& grid = f.grid();
  if (!grid.is_radial()) throw UsageError("potential_radial requires a radial grid");
  require_convergent_tail(f);
  const int n = grid.dimension();
  const auto r = grid.radii();
  const std::size_t m = r.size() - 1;
  const auto q = cubic_quadrature(r);

  std::vector<double> inner_y(m + 1), outer_y(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    inner_y[i] = f.value(i) * std::pow(r[i], n - 1);
    outer_y[i] = f.value(i) * r[i];
  }
  std::vector<double> inner(m + 1, 0.0), outer(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) inner[j + 1] = inner[j] + interval_integral(q, j, inner_y);
  outer[m] = tail_moment(f.value(m), grid.r_max(), f.decay());
  for (std::size_t j = m; j-- > 0;) outer[j] = outer[j + 1] + interval_integral(q, j, outer_y);

  std::vector<double> u(m + 1), du(m + 1, 0.0);
  const double c = 1.0 / (n - 2);
  for (std::size_t i = 0; i <= m; ++i) {
    if (i == 0) {
      u[i] = c * outer[i];
      continue;
    }
    u[i] = c * (std::pow(r[i], 2 - n) * inner[i] + outer[i]);
    du[i] = -std::pow(r[i], 1 - n) * inner[i];
  }
  return Field(f.grid_ptr(), std::move(u), std::move(du), result_decay(f, n));
}

Field potential_cartesian_direct(const Field& f) {
  require_cartesian(f);
  require_convergent_tail(f);
  const Grid& grid = f.grid();
  const double h = grid.spacing();
  const double h3 = h * h * h;
  const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
  const double tail = tail_moment(boundary_mean(f), grid.r_max(), f.decay());
  const std::size_t nn = f.size();
  std::vector<double> u(nn, 0.0), du(3 * nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    const auto xi = grid.lattice_index(i);
    double s = singular_cell_value(h) * f.value(i);
    double gx = 0.0, gy = 0.0, gz = 0.0;
    for (std::size_t j = 0; j < nn; ++j) {
      if (j == i || f.value(j) == 0.0) continue;
      const auto xj = grid.lattice_index(j);
      const double dx = h * (xi[0] - xj[0]), dy = h * (xi[1] - xj[1]), dz = h * (xi[2] - xj[2]);
      const double d2 = dx * dx + dy * dy + dz * dz;
      const double d = std::sqrt(d2);
      const double fj = f.value(j) * h3 * inv4pi;
      s += fj / d;
      const double c = -fj / (d2 * d);
      gx += c * dx;
      gy += c * dy;
      gz += c * dz;
    }
    u[i] = s + tail;
    du[3 * i] = gx;
    du[3 * i + 1] = gy;
    du[3 * i + 2] = gz;
  }
  return Field(f.grid_ptr(), std::move(u), std::move(du), result_decay(f, 3));
}

struct NewtonianPotential::Impl {
  GridPtr grid;

  // Cartesian FFT state. Arrays are L x L x (L/2+1) complex, used in place.
  std::size_t L = 0;
  std::size_t P = 0;
  std::size_t complex_count = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::unique_ptr<fftw_complex, FftwFree> data;
  std::unique_ptr<fftw_complex, FftwFree> work;
  std::vector<std::unique_ptr<fftw_complex, FftwFree>> spectra;  // empty if not cached

  Impl(GridPtr g, std::size_t cache_bytes) : grid(std::move(g)) {
    if (grid->is_radial()) return;
    P = static_cast<std::size_t>(grid->points_per_axis());
    L = smooth_size(2 * P - 1);
    complex_count = L * L * (L / 2 + 1);
    data.reset(fftw_alloc_complex(complex_count));
    work.reset(fftw_alloc_complex(complex_count));
    if (!data || !work) throw std::bad_alloc();
    const int l = static_cast<int>(L);
    double* buf = reinterpret_cast<double*>(data.get());
    forward = fftw_plan_dft_r2c_3d(l, l, l, buf, data.get(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_3d(l, l, l, data.get(), buf, FFTW_ESTIMATE);
    if (!forward || !backward) throw std::runtime_error("FFTW planning failed");
    if (4 * complex_count * sizeof(fftw_complex) <= cache_bytes) {
      for (int c = 0; c < 4; ++c) {
        spectra.emplace_back(fftw_alloc_complex(complex_count));
        if (!spectra.back()) throw std::bad_alloc();
        kernel_spectrum(c, spectra.back().get());
      }
    }
  }

  ~Impl() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }

  double* real(fftw_complex* c) const { return reinterpret_cast<double*>(c); }
  std::size_t real_index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * L + j) * (2 * (L / 2 + 1)) + k;
  }
  // Signed offset for wrapped index a, or nullopt in the unused gap.
  std::optional<long> offset(std::size_t a) const {
    if (a < P) return static_cast<long>(a);
    if (a + P > L) return static_cast<long>(a) - static_cast<long>(L);
    return std::nullopt;
  }

  // Component 0: potential kernel; 1..3: gradient kernel components.
  void kernel_spectrum(int component, fftw_complex* out) const {
    const double h = grid->spacing();
    const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
    double* buf = real(out);
    std::fill(buf, buf + 2 * complex_count, 0.0);
    for (std::size_t a = 0; a < L; ++a) {
      const auto da = offset(a);
      if (!da) continue;
      for (std::size_t b = 0; b < L; ++b) {
        const auto db = offset(b);
        if (!db) continue;
        for (std::size_t c = 0; c < L; ++c) {
          const auto dc = offset(c);
          if (!dc) continue;
          const double d2 = static_cast<double>(*da * *da + *db * *db + *dc * *dc);
          double v;
          if (d2 == 0.0) {
            v = component == 0 ? singular_cell_value(h) : 0.0;
          } else if (component == 0) {
            v = h * h * inv4pi / std::sqrt(d2);
          } else {
            const long comp = component == 1 ? *da : component == 2 ? *db : *dc;
            v = -h * inv4pi * static_cast<double>(comp) / (d2 * std::sqrt(d2));
          }
          buf[real_index(a, b, c)] = v;
        }
      }
    }
    fftw_execute_dft_r2c(forward, buf, out);
  }

  Field cartesian(const Field& f) const {
    require_cartesian(f);
    require_convergent_tail(f);
    if (f.grid_ptr() != grid) throw UsageError("potential operator applied to a field on another grid");
    const std::size_t nn = f.size();
    double* d = real(data.get());
    std::fill(d, d + 2 * complex_count, 0.0);
    bool any = false;
    for (std::size_t i = 0; i < nn; ++i) {
      const auto x = grid->lattice_index(i);
      d[real_index(x[0], x[1], x[2])] = f.value(i);
      any = any || f.value(i) != 0.0;
    }
    std::vector<double> u(nn, 0.0), du(3 * nn, 0.0);
    if (any) {
      fftw_execute_dft_r2c(forward, d, data.get());
      const double scale = 1.0 / static_cast<double>(L * L * L);
      for (int c = 0; c < 4; ++c) {
        fftw_complex* w = work.get();
        if (spectra.empty()) {
          kernel_spectrum(c, w);
        } else {
          std::copy_n(&spectra[c].get()[0][0], 2 * complex_count, &w[0][0]);
        }
        for (std::size_t i = 0; i < complex_count; ++i) {
          const double re = w[i][0] * data.get()[i][0] - w[i][1] * data.get()[i][1];
          const double im = w[i][0] * data.get()[i][1] + w[i][1] * data.get()[i][0];
          w[i][0] = re;
          w[i][1] = im;
        }
        fftw_execute_dft_c2r(backward, w, real(w));
        const double* out = real(w);
        for (std::size_t i = 0; i < nn; ++i) {
          const auto x = grid->lattice_index(i);
          const double v = out[real_index(x[0], x[1], x[2])] * scale;
          if (c == 0) {
            u[i] = v;
          } else {
            du[3 * i + (c - 1)] = v;
          }
        }
      }
    }
    const double tail = tail_moment(boundary_mean(f), grid->r_max(), f.decay());
    for (auto& v : u) v += tail;
    return Field(f.grid_ptr(), std::move(u), std::move(du), result_decay(f, 3));
  }
};

NewtonianPotential::NewtonianPotential(GridPtr grid, std::size_t cache_bytes)
    : impl_(std::make_unique<Impl>(std::move(grid), cache_bytes)) {}
NewtonianPotential::~NewtonianPotential() = default;
NewtonianPotential::NewtonianPotential(NewtonianPotential&&) noexcept = default;
NewtonianPotential& NewtonianPotential::operator=(NewtonianPotential&&) noexcept = default;

const GridPtr& NewtonianPotential::grid() const noexcept { return impl_->grid; }

Field NewtonianPotential::operator()(const Field& f) const {
  if (impl_->grid->is_radial()) {
    if (f.grid_ptr() != impl_->grid) throw UsageError("potential operator applied to a field on another grid");
    return potential_radial(f);
  }
  return impl_->cartesian(f);
}

Field NewtonianPotential::apply_B(const Expr& g, const Field& u) const {
  const Field f = evaluate_nonlinearity(g, u, u.decay() + 2.0);
  return (*this)(f).with_decay(u.decay());
}

Field evaluate_nonlinearity(const Expr& g, const Field& u, double decay) {
  const Grid& grid = u.grid();
  const int n = grid.dimension();
  std::vector<double> values(u.size());
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = grid.point(i);
    const auto du = u.gradient(i);
    std::copy(du.begin(), du.end(), p.begin());
    const double v = eval(g, x, u.value(i), p);
    if (!std::isfinite(v)) {
      throw DomainError("nonlinearity is not finite at node " + std::to_string(i) + " (|x| = " +
                        std::to_string(grid.radius(i)) + ")");
    }
    values[i] = v;
  }
  return Field(u.grid_ptr(), std::move(values),
               std::vector<double>(u.size() * static_cast<std::size_t>(grid.gradient_components()), 0.0), decay);
}

Field potential_cartesian(const Field& f) {
  require_cartesian(f);
  return NewtonianPotential(f.grid_ptr(), 0)(f);
}

Field apply_B(const Expr& g, const Field& u) { return NewtonianPotential(u.grid_ptr(), 0).apply_B(g, u); }

}  // namespace semilinear
