#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "semilinear/constants.hpp"
#include "semilinear/errors.hpp"

using namespace semilinear;

TEST_CASE("gamma matches known values and boost over (0, 50]") {
  CHECK(semilinear::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(semilinear::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(semilinear::gamma(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-15));
  double worst = 0.0;
  for (int i = 1; i <= 5000; ++i) {
    const double x = 0.01 * i;
    worst = std::max(worst, std::abs(semilinear::gamma(x) / oracle::gamma(x) - 1.0));
  }
  CHECK(worst <= 1e-12);
  CHECK_THROWS_AS(semilinear::gamma(0.0), DomainError);
  CHECK_THROWS_AS(semilinear::gamma(-1.5), DomainError);
}

TEST_CASE("unit sphere area") {
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * oracle::pi).epsilon(1e-15));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * oracle::pi).epsilon(1e-15));
  CHECK(unit_sphere_area(4) == doctest::Approx(2.0 * oracle::pi * oracle::pi).epsilon(1e-15));
}

TEST_CASE("riesz_c values") {
  CHECK(riesz_c(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(riesz_c(2.0) == doctest::Approx(0.3183098861837907).epsilon(1e-15));
  CHECK(riesz_c(4.0) == doctest::Approx(0.1013211836423378).epsilon(1e-15));
  CHECK_THROWS_AS(riesz_c(0.0), DomainError);
}

TEST_CASE("riesz composition constant") {
  const double pi3 = oracle::pi * oracle::pi * oracle::pi;
  CHECK(std::abs(riesz_composition_constant(1, 1, 3) - pi3) <= 1e-12 * pi3);

  SUBCASE("symmetric in alpha and beta") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 2.9);
    for (int i = 0; i < 200; ++i) {
      const double a = u(rng), b = u(rng);
      if (a + b >= 3.0) continue;
      CHECK(riesz_composition_constant(a, b, 3) == doctest::Approx(riesz_composition_constant(b, a, 3)).epsilon(1e-13));
    }
  }

  SUBCASE("matches direct quadrature at |x| = 1") {
    CHECK(oracle::riesz_convolution_3d(1.0, 1.0) == doctest::Approx(riesz_composition_constant(1.0, 1.0, 3)).epsilon(0.02));
    CHECK(oracle::riesz_convolution_3d(0.5, 1.0) == doctest::Approx(riesz_composition_constant(0.5, 1.0, 3)).epsilon(0.02));
    CHECK(oracle::riesz_convolution_3d(1.2, 0.7) == doctest::Approx(riesz_composition_constant(1.2, 0.7, 3)).epsilon(0.02));
  }

  SUBCASE("nested quadrature is far more accurate than the 2% gate") {
    for (const auto& [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 1.0}, std::pair{1.2, 0.7}, std::pair{0.3, 2.2}}) {
      CHECK(oracle::riesz_convolution_3d(a, b) == doctest::Approx(riesz_composition_constant(a, b, 3)).epsilon(1e-7));
    }
  }

  SUBCASE("errors name the failed inequality") {
    CHECK_THROWS_WITH_AS(riesz_composition_constant(2, 1, 3), doctest::Contains("alpha + beta < n"), DomainError);
    CHECK_THROWS_WITH_AS(riesz_composition_constant(-1, 1, 3), doctest::Contains("0 < alpha"), DomainError);
    CHECK_THROWS_WITH_AS(riesz_composition_constant(1, 0, 3), doctest::Contains("0 < beta"), DomainError);
  }
}

TEST_CASE("weighted kernel integral closed forms") {
  for (int n : {3, 4, 5}) {
    for (double k : {0.25, 0.5, 0.75}) {
      CHECK(weighted_kernel_integral(n - 1, k + 2, n) == doctest::Approx(1.0 / (k + 1)).epsilon(1e-9));
      CHECK(weighted_kernel_integral(n - 2, k + 2, n) == doctest::Approx(1.0 / (k * (k + 1))).epsilon(1e-9));
    }
    CHECK(weighted_kernel_integral(n - 1, n + 5, n) == doctest::Approx(1.0 / (n + 4)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(weighted_kernel_integral(3, 2, 3), DomainError);    // n - alpha = 0
  CHECK_THROWS_AS(weighted_kernel_integral(1, 1.5, 3), DomainError);  // beta <= n - alpha
}

TEST_CASE("kernel constants at k = 0.5, n = 3") {
  const auto c = lemma_f_constants(0.5, 3);
  CHECK(std::abs(c.M_k - 2.0 / 3.0) <= 1e-10);
  CHECK(std::abs(c.Mtilde_k - 4.0 / 3.0) <= 1e-10);
  CHECK(std::abs(c.L_k - oracle::gradient_kernel_constant_3d(0.5)) <= 1e-8);
  CHECK(std::abs(c.Ltilde_k - oracle::value_kernel_constant_3d(0.5)) <= 1e-8);
  CHECK(c.Ltilde_k == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(c.omega_n == doctest::Approx(4.0 * oracle::pi));
}

TEST_CASE("kernel constants invariants") {
  for (int n : {3, 4, 5, 7}) {
    for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double k = frac * (n - 2);
      const auto c = lemma_f_constants(k, n);
      CHECK(c.C_k == doctest::Approx(std::pow(2.0, k + 2) * (c.M_k + c.L_k + c.Mtilde_k + c.Ltilde_k)).epsilon(1e-15));
      CHECK(2.0 * c.C_k * c.Q_k == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(c.M_k == doctest::Approx(weighted_kernel_integral(n - 1, k + 2, n)).epsilon(1e-8));
      CHECK(c.L_k > 0);
      CHECK(c.Ltilde_k > 0);
      CHECK(std::isfinite(c.C_k));
      if (n == 3) {
        CHECK(c.L_k == doctest::Approx(oracle::gradient_kernel_constant_3d(k)).epsilon(1e-8));
        CHECK(c.Ltilde_k == doctest::Approx(oracle::value_kernel_constant_3d(k)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("kernel constants reject k outside (0, n-2)") {
  CHECK_THROWS_WITH_AS(lemma_f_constants(1.0, 3), doctest::Contains("0<k<n-2"), DomainError);
  CHECK_THROWS_AS(lemma_f_constants(0.0, 3), DomainError);
  CHECK_THROWS_AS(lemma_f_constants(-0.1, 4), DomainError);
  CHECK_THROWS_AS(lemma_f_constants(0.5, 2), DomainError);
  // k -> 0+: the inhomogeneous value constant blows up like 1/k.
  const auto tiny = lemma_f_constants(1e-8, 3);
  CHECK(tiny.Mtilde_k > 1e7);
}
