#include <doctest.h>

#include <cmath>

#include "semilinear/errors.hpp"
#include "semilinear/nonlinearity.hpp"

using namespace semilinear;

namespace {

Expr with_lambda(const std::string& text, double lambda) {
  ParseOptions opts;
  opts.params["lambda"] = lambda;
  opts.params["mu"] = 0.0;
  return parse(text, opts);
}

}  // namespace

TEST_CASE("g(.,0,0) norms") {
  const auto g = Grid::radial(3, 50.0, 256);
  const ZeroNorm a = g_at_zero_norm(with_lambda("lambda * (1+r)^(-2.5) * exp(z)", -0.3), 0.5, g);
  CHECK(a.value == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(a.closed_form);

  const ZeroNorm b = g_at_zero_norm(parse("z * q"), 0.5, g);
  CHECK(b.value == 0.0);

  const ZeroNorm c = g_at_zero_norm(with_lambda("lambda * (1+r)^(-5) * exp(z)", 0.7), 0.5, g);
  CHECK(c.value == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(c.closed_form);

  // Not a power profile: grid maximum of (1+r)^{k+2} |g|.
  const ZeroNorm d = g_at_zero_norm(parse("(1+r^2)^(-2)"), 0.5, g);
  CHECK_FALSE(d.closed_form);
  // Maximum of (1+r)^2.5 (1+r^2)^-2 at r = (sqrt(31) - 4) / 3.
  const double rs = (std::sqrt(31.0) - 4.0) / 3.0;
  const double exact = std::pow(1 + rs, 2.5) / std::pow(1 + rs * rs, 2);
  CHECK(d.value <= exact);
  CHECK(d.value == doctest::Approx(exact).epsilon(1e-4));

  CHECK_THROWS_WITH_AS(g_at_zero_norm(parse("(1+r)^(-2) * exp(z)"), 0.5, g), doctest::Contains("E_{k+2}"),
                       DomainError);
  CHECK_THROWS_AS(g_at_zero_norm(parse("1 + z"), 0.5, g), DomainError);
}

TEST_CASE("power profile matching") {
  const auto m = match_power_profile(with_lambda("-2 * lambda * (1+r)^(-3) / (1+r)", 0.5));
  REQUIRE(m);
  CHECK(m->a == doctest::Approx(-1.0));
  CHECK(m->m == doctest::Approx(4.0));
  CHECK_FALSE(match_power_profile(parse("(1+r^2)^(-2)")));
  CHECK_FALSE(match_power_profile(parse("x1 * (1+r)^(-2)")));
}

TEST_CASE("decay estimate") {
  const auto g = Grid::radial(3, 100.0, 256);
  CHECK(estimate_decay(parse("(1+r)^(-3.5)"), *g) == doctest::Approx(3.5).epsilon(1e-9));
  CHECK(estimate_decay(parse("(1+r^2)^(-1)"), *g) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::isinf(estimate_decay(parse("max(0, 1 - r)"), *g)));
}

TEST_CASE("exponential family matching") {
  const auto terms = match_exponential_family(
      with_lambda("lambda * (1+r)^(-2.5) * exp(z) + 0.25 * exp(q) * (1+r)^(-3) - (1+r)^(-4)", 2.0));
  REQUIRE(terms);
  REQUIRE(terms->size() == 3);
  int ez = 0, eq = 0, src = 0;
  for (const auto& t : *terms) {
    if (t.kind == ExponentialTerm::Kind::exp_z) {
      ++ez;
      CHECK(t.coefficient == doctest::Approx(2.0));
    } else if (t.kind == ExponentialTerm::Kind::exp_q) {
      ++eq;
      CHECK(t.coefficient == doctest::Approx(0.25));
    } else {
      ++src;
    }
  }
  CHECK(ez == 1);
  CHECK(eq == 1);
  CHECK(src == 1);
  CHECK_FALSE(match_exponential_family(parse("exp(2*z)")));
  CHECK_FALSE(match_exponential_family(parse("z * exp(z)")));
}

TEST_CASE("Jacobian bound: exponential family") {
  const auto g = Grid::radial(3, 50.0, 256);
  const JacobianBound b = sup_jacobian_bound(with_lambda("lambda * (1+r)^(-2.5) * exp(z)", -0.04), 0.2, 0.5, g);
  CHECK(b.provenance == Provenance::analytic);
  CHECK(b.value == doctest::Approx(0.04 * std::exp(0.2)).epsilon(1e-14));
  CHECK(b.epsilon == 0.2);

  const JacobianBound two =
      sup_jacobian_bound(with_lambda("lambda * (1+r)^(-2.5) * exp(z) - 0.5 * (1+r)^(-3) * exp(q)", 0.1), 0.3, 0.5, g);
  CHECK(two.provenance == Provenance::analytic);
  CHECK(two.value == doctest::Approx((0.1 + 0.5) * std::exp(0.3)));

  // Slowly decaying profile: the norm is a grid maximum, so provenance is sampled.
  const JacobianBound slow = sup_jacobian_bound(parse("(1+r^2)^(-1.5) * exp(z)"), 0.2, 0.5, g);
  CHECK(slow.provenance == Provenance::sampled);
  CHECK(slow.value > 0.0);
}

TEST_CASE("Jacobian bound: zero Jacobian") {
  const auto g = Grid::radial(3, 50.0, 256);
  const JacobianBound b = sup_jacobian_bound(parse("(1+r)^(-4)"), 0.3, 0.5, g);
  CHECK(b.value == 0.0);
  CHECK(b.provenance == Provenance::analytic);
}

TEST_CASE("Jacobian bound: z^2 probe family") {
  // n = 5, k = 2: (1+r)^2 |2 w| with |w| <= eps (1+r)^{-2} gives exactly 2 eps.
  const auto g = Grid::radial(5, 50.0, 256);
  for (double eps : {0.05, 0.2}) {
    const JacobianBound b = sup_jacobian_bound(parse("z^2"), eps, 2.0, g);
    CHECK(b.provenance == Provenance::sampled);
    CHECK(b.value == doctest::Approx(2 * eps).epsilon(1e-12));
  }
}

TEST_CASE("Jacobian bound: power-type scaling") {
  // g = z^{r0} + q^{r1} scales like eps^{min(r0, r1) - 1}.
  const auto g = Grid::radial(5, 50.0, 256);
  for (const auto& [text, power] : {std::pair{"z^2 + q^3", 1.0}, std::pair{"z^3 + q^3", 2.0}, std::pair{"z^4 + q^2", 1.0}}) {
    const double g1 = sup_jacobian_bound(parse(text), 0.1, 2.0, g).value;
    const double g2 = sup_jacobian_bound(parse(text), 0.2, 2.0, g).value;
    const double g4 = sup_jacobian_bound(parse(text), 0.4, 2.0, g).value;
    INFO(text);
    for (double ratio : {g2 / g1, g4 / g2}) {
      CHECK(ratio / std::pow(2.0, power) >= 0.5);
      CHECK(ratio / std::pow(2.0, power) <= 2.0);
    }
  }
}

TEST_CASE("Jacobian bound: cartesian probes") {
  const auto g = Grid::cartesian(4.0, 0.25);
  const JacobianBound b = sup_jacobian_bound(parse("x1 * (1+r)^(-5) * cosh(z) + p2 * (1+r)^(-2)"), 0.1, 0.5, g);
  CHECK(b.provenance == Provenance::sampled);
  // The p2 coefficient alone contributes (1+r)^2 (1+r)^{-2} = 1.
  CHECK(b.value >= 1.0);
  CHECK(b.value < 1.1);
}

TEST_CASE("grid validation") {
  const auto radial = Grid::radial(3, 10.0, 64);
  CHECK_THROWS_AS(validate_for_grid(parse("x1 * z"), *radial), UsageError);
  CHECK_THROWS_AS(validate_for_grid(parse("p1"), *radial), UsageError);
  CHECK_NOTHROW(validate_for_grid(parse("r * z * q"), *radial));
  CHECK_NOTHROW(validate_for_grid(parse("x3 * p2"), *Grid::cartesian(4.0, 0.25)));
}
