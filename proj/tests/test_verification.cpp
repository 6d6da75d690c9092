#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semilinear/errors.hpp"
#include "semilinear/newtonian_potential.hpp"
#include "semilinear/verification.hpp"
#include "semilinear/weighted_spaces.hpp"

using namespace semilinear;

namespace {

const Matrix3 kReflectX1{{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
const Matrix3 kRotation{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};

Field oracle_field(GridPtr g) { return sample(RadialProfile{oracle::oracle_u, oracle::oracle_du}, std::move(g), 1.0); }

}  // namespace

TEST_CASE("residual of the oracle pair is second order") {
  const Expr g = parse("3 * (1+r^2)^(-5/2)");
  double prev = 0.0;
  for (int m : {128, 256, 512}) {
    const double sup = pde_residual(oracle_field(Grid::radial(3, 50.0, m)), g, 0.5).sup;
    if (prev > 0.0) {
      INFO("M = " << m);
      CHECK(prev / sup >= 3.2);
      CHECK(prev / sup <= 4.8);
    }
    prev = sup;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("residual on a cartesian grid") {
  const Expr g = parse("3 * (1+r^2)^(-5/2)");
  const double coarse = pde_residual(oracle_field(Grid::cartesian(4.0, 0.25)), g, 0.5).sup;
  const double fine = pde_residual(oracle_field(Grid::cartesian(4.0, 0.125)), g, 0.5).sup;
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("residual of zero") {
  const auto g = Grid::radial(3, 10.0, 64);
  const ResidualReport r = pde_residual(Field::zero(g, 0.5), parse("z * q"), 0.5);
  CHECK(r.sup == 0.0);
  CHECK(r.evaluated > 0);
  CHECK(r.profile.size() == g->size());
}

TEST_CASE("positivity") {
  const auto g = Grid::radial(3, 20.0, 128);
  const Field u = potential_radial(sample(parse("(1+r)^(-4)"), g, 4.0));
  CHECK(check_positivity(u, false).passed);
  CHECK(check_positivity(u, true).passed);

  const Field zero = Field::zero(g, 1.0);
  CHECK(check_positivity(zero, false).passed);
  CHECK_FALSE(check_positivity(zero, true).passed);

  std::vector<double> v(u.values().begin(), u.values().end());
  v[17] = -1e-3;
  const Field bad(g, v, std::vector<double>(u.grad_data().begin(), u.grad_data().end()), 1.0);
  const PositivityVerdict verdict = check_positivity(bad, false);
  CHECK_FALSE(verdict.passed);
  CHECK(verdict.node == 17);
  CHECK(verdict.min_value == -1e-3);
  REQUIRE(verdict.location.size() == 3);
  CHECK(verdict.location[0] == g->radius(17));
}

TEST_CASE("radial symmetry") {
  const auto g = Grid::cartesian(4.0, 0.25);
  const RadialSymmetryVerdict ok = check_radial_symmetry(oracle_field(g), 0.02);
  CHECK(ok.passed);
  CHECK(ok.max_angular_variation < 0.02);
  const RadialSymmetryVerdict odd = check_radial_symmetry(sample(parse("x1"), g, 0.0), 0.02);
  CHECK_FALSE(odd.passed);
  // A small non-radial perturbation is caught even on top of a radial field.
  const Field bumped = oracle_field(g) + 0.05 * sample(parse("x3 * exp(-r^2)"), g, 0.0);
  CHECK_FALSE(check_radial_symmetry(bumped, 0.02).passed);
  CHECK_THROWS_AS(check_radial_symmetry(Field::zero(Grid::radial(3, 4.0, 64), 1.0), 0.02), UsageError);
}

TEST_CASE("orthogonal symmetry") {
  const auto g = Grid::cartesian(4.0, 0.25);
  const Field radial = oracle_field(g);
  for (const Matrix3& T : {kReflectX1, kRotation}) {
    const OrthogonalVerdict v = check_orthogonal_symmetry(radial, T, SymmetryMode::symmetric, 0.02);
    CHECK(v.passed);
    CHECK(v.compared > 0);
  }
  const Field odd = sample(parse("x1 * exp(-r^2)"), g, 0.0);
  const OrthogonalVerdict anti = check_orthogonal_symmetry(odd, kReflectX1, SymmetryMode::antisymmetric, 0.02);
  CHECK(anti.passed);
  CHECK(anti.value_deviation < 1e-14);
  CHECK_FALSE(check_orthogonal_symmetry(odd, kReflectX1, SymmetryMode::symmetric, 0.02).passed);
  CHECK_FALSE(check_orthogonal_symmetry(odd, kRotation, SymmetryMode::antisymmetric, 0.02).passed);

  // An irrational rotation needs interpolation and skips images outside the
  // ball. Interpolation error is O(h^2): about 5% on |Du| at h = 0.25.
  const Field fine = oracle_field(Grid::cartesian(4.0, 0.125));
  const double c = std::cos(0.3), s = std::sin(0.3);
  const Matrix3 R{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
  const OrthogonalVerdict rot = check_orthogonal_symmetry(fine, R, SymmetryMode::symmetric, 0.02);
  CHECK(rot.passed);
  CHECK(rot.skipped > 0);

  const Matrix3 not_orthogonal{{{1, 0.1, 0}, {0, 1, 0}, {0, 0, 1}}};
  CHECK_THROWS_AS(check_orthogonal_symmetry(radial, not_orthogonal, SymmetryMode::symmetric, 0.02), UsageError);
}

TEST_CASE("antisymmetry in p") {
  const auto g = Grid::radial(3, 20.0, 128);
  const AntisymmetryInPVerdict yes = check_antisymmetric_in_p(parse("q * (1+r)^(-4)"), g, 0.5);
  CHECK(yes.passed);
  CHECK(yes.max_g0 == 0.0);
  CHECK(yes.solver_zero);
  const AntisymmetryInPVerdict no = check_antisymmetric_in_p(parse("(1+r)^(-4) + q"), g, 0.5);
  CHECK_FALSE(no.passed);
  CHECK(no.max_g0 == doctest::Approx(1.0));
  CHECK(check_antisymmetric_in_p(parse("q * z"), g, 0.5).passed);
  const AntisymmetryInPVerdict cart = check_antisymmetric_in_p(parse("p1 * (1+r)^(-4)"), Grid::cartesian(4.0, 0.25), 0.5);
  CHECK(cart.passed);
  CHECK(cart.solver_zero);
}

TEST_CASE("decay verdicts") {
  const auto g = Grid::radial(3, 100.0, 512);
  const DecayVerdict zero = check_decay(Field::zero(g, 0.5), 0.5);
  CHECK(zero.improved);
  CHECK(zero.verdict == "improved decay");

  // N of a compactly supported source decays like 1/r: (1+r)^0.5 / r -> 0.
  const Field fast = potential_radial(sample(RadialProfile{[](double r) { return r < 1 ? 1 - r * r : 0.0; }, {}}, g, 10.0));
  const DecayVerdict improved = check_decay(fast.with_decay(0.5), 0.5);
  CHECK(improved.improved);
  CHECK(improved.limit_estimate <= 0.2 * improved.max_value);
  CHECK(improved.radius.size() == g->size());

  const Field slow = sample(parse("(1+r)^(-0.5)"), g, 0.5);
  const DecayVerdict bounded = check_decay(slow, 0.5);
  CHECK_FALSE(bounded.improved);
  CHECK(bounded.verdict == "bounded decay only");
}
