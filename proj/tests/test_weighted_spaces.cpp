#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "semilinear/errors.hpp"
#include "semilinear/weighted_spaces.hpp"

using namespace semilinear;

namespace {

Field radial_profile(GridPtr g, double decay, std::function<double(double)> f, std::function<double(double)> df) {
  return sample(RadialProfile{std::move(f), std::move(df)}, std::move(g), decay);
}

}  // namespace

TEST_CASE("norm_E examples") {
  const auto g = Grid::radial(3, 20.0, 128);
  const double k = 0.7;
  const Field a = radial_profile(g, k, [k](double r) { return std::pow(1 + r, -k); }, {});
  CHECK(norm_E(a, k) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm_E(Field::zero(g, k), k) == 0.0);
  const Field b = radial_profile(g, k + 1, [k](double r) { return std::pow(1 + r, -k - 1); }, {});
  CHECK(norm_E(b, k) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tail model: slower decay than the weight gives an infinite norm") {
  const auto g = Grid::radial(3, 20.0, 128);
  const Field a = radial_profile(g, 0.5, [](double r) { return std::pow(1 + r, -0.5); }, {});
  CHECK(norm_E(a, 0.5) == doctest::Approx(1.0));
  CHECK(norm_E(a, 1.0) == std::numeric_limits<double>::infinity());
  // Compactly supported data stays finite whatever the tag.
  const Field c = radial_profile(g, 0.0, [](double r) { return r < 1 ? 1.0 - r : 0.0; }, {});
  CHECK(std::isfinite(norm_E(c, 3.0)));
}

TEST_CASE("norm_F examples") {
  const auto g = Grid::radial(3, 20.0, 512);
  CHECK(norm_F(Field::zero(g, 1.0), 1.0) == 0.0);
  const Field c = radial_profile(g, 0.0, [](double) { return -2.5; }, [](double) { return 0.0; });
  CHECK(norm_F(c, 0.0) == 2.5);

  // sup_r (1+r)(u + |u'|) for u = (1+r^2)^{-1/2}: dense 1D scan.
  auto u = [](double r) { return 1.0 / std::sqrt(1 + r * r); };
  auto du = [](double r) { return -r * std::pow(1 + r * r, -1.5); };
  double scan = 0.0;
  for (int i = 0; i <= 2000000; ++i) {
    const double r = 20.0 * i / 2000000.0;
    scan = std::max(scan, (1 + r) * (u(r) + std::abs(du(r))));
  }
  const Field f = radial_profile(g, 1.0, u, du);
  // The grid maximum can only undershoot the supremum.
  CHECK(norm_F(f, 1.0) <= scan);
  CHECK(norm_F(f, 1.0) == doctest::Approx(scan).epsilon(1e-4));
}

TEST_CASE("norm properties on random fields") {
  const auto g = Grid::cartesian(4.0, 0.25);
  std::mt19937 rng(11);
  std::normal_distribution<double> N;
  auto random_field = [&] {
    std::vector<double> v(g->size()), d(3 * g->size());
    for (auto& x : v) x = N(rng);
    for (auto& x : d) x = N(rng);
    return Field(g, v, d, 5.0);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const Field a = random_field(), b = random_field();
    const double k = 0.5;
    CHECK(norm_E(a, k) <= norm_F(a, k));
    CHECK(norm_F(a + b, k) <= norm_F(a, k) + norm_F(b, k) + 1e-12);
    CHECK(norm_F(-3.0 * a, k) == doctest::Approx(3.0 * norm_F(a, k)).epsilon(1e-14));
  }
}

TEST_CASE("norm_F converges under radial refinement") {
  auto u = [](double r) { return std::exp(-r) * std::cos(3 * r) + std::pow(1 + r, -2); };
  const Field coarse = radial_profile(Grid::radial(3, 30.0, 256), 2.0, u, {});
  const Field fine = radial_profile(Grid::radial(3, 30.0, 512), 2.0, u, {});
  CHECK(std::abs(norm_F(coarse, 1.0) / norm_F(fine, 1.0) - 1.0) <= 0.01);
}

TEST_CASE("sample from expressions") {
  const auto rg = Grid::radial(3, 10.0, 64);
  const Field a = sample(parse("(1+r)^(-3)"), rg, 3.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.value(i) == doctest::Approx(std::pow(1 + rg->radius(i), -3)).epsilon(1e-14));
    CHECK(a.gradient(i)[0] == doctest::Approx(-3 * std::pow(1 + rg->radius(i), -4)).epsilon(1e-13));
  }
  const Field z = sample(parse("0"), rg, 1.0);
  CHECK(norm_F(z, 1.0) == 0.0);
  const Field s = sample(parse("(1+r^2)^(-1/2)"), rg, 1.0);
  CHECK(s.gradient(0)[0] == 0.0);

  CHECK_THROWS_AS(sample(parse("z * r"), rg, 1.0), UsageError);
  CHECK_THROWS_AS(sample(parse("q"), rg, 1.0), UsageError);
  CHECK_THROWS_AS(sample(parse("x1"), rg, 1.0), UsageError);

  const auto cg = Grid::cartesian(4.0, 0.25);
  const Field c = sample(parse("x1 * (1+r)^(-2)"), cg, 1.0);
  for (std::size_t i = 0; i < c.size(); i += 97) {
    const auto x = cg->point(i);
    const double r = cg->radius(i);
    CHECK(c.value(i) == doctest::Approx(x[0] * std::pow(1 + r, -2)));
    if (r > 0) {
      const double expect = std::pow(1 + r, -2) - 2 * x[0] * x[0] / r * std::pow(1 + r, -3);
      CHECK(c.gradient(i)[0] == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("finite-difference gradients") {
  const auto cg = Grid::cartesian(4.0, 0.25);
  const Field lin = fd_gradient(sample(parse("x1"), cg, 0.0));
  for (std::size_t i = 0; i < lin.size(); ++i) {
    if (cg->on_boundary(i)) continue;
    CHECK(lin.gradient(i)[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(lin.gradient(i)[1]) <= 1e-13);
  }
  const Field cst = fd_gradient(sample(parse("4"), cg, 0.0));
  for (double d : cst.grad_data()) CHECK(d == 0.0);

  auto err = [](int m) {
    const auto g = Grid::radial(3, 10.0, m);
    const Field f = fd_gradient(sample(parse("(1+r)^(-1)"), g, 1.0));
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      e = std::max(e, std::abs(f.gradient(i)[0] + std::pow(1 + g->radius(i), -2)));
    }
    return e;
  };
  const double e1 = err(128), e2 = err(256);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("radial interpolation and shells") {
  const auto g = Grid::radial(3, 10.0, 64);
  const Field f = sample(parse("2*r + 1"), g, 0.0);
  CHECK(interpolate_radial(f, 3.3) == doctest::Approx(7.6));
  CHECK_THROWS_AS(interpolate_radial(f, 11.0), UsageError);
  const auto cg = Grid::cartesian(4.0, 0.25);
  const Shells s = make_shells(*cg);
  std::size_t total = 0;
  for (const auto& n : s.nodes) total += n.size();
  CHECK(total == cg->size());
  for (std::size_t i = 1; i < s.radius.size(); ++i) CHECK(s.radius[i] > s.radius[i - 1]);
}
