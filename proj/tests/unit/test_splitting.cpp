#include "support.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/splitting.hpp"

#include <doctest.h>

#include <random>

using namespace phasefield;

TEST_CASE("phi_max estimate scales the field maximum") {
  const Grid g = Grid::square(4, 1.0, BoundaryCondition::Periodic);
  Field f = create_field(g, 1.0);
  f(0, 1) = -1.0;
  CHECK(phi_max_estimate(f, SplittingPolicy{}) == 1.0);
  f(2, 2) = 1.3;
  SplittingPolicy p;
  p.safety_factor = 1.1;
  CHECK(phi_max_estimate(f, p) == doctest::Approx(1.43));
  CHECK(phi_max_estimate(create_field(g, 0.0), p) == 0.0);
}

TEST_CASE("critical weights and directions") {
  const auto a = xi_critical(-2.0, 1.0);
  REQUIRE(a);
  CHECK(a->xi == doctest::Approx(3.5));
  CHECK(a->direction == SplitDirection::AtLeast);

  const auto b = xi_critical(1.0, 1.0);
  REQUIRE(b);
  CHECK(b->xi == doctest::Approx(-6.0));
  CHECK(b->direction == SplitDirection::AtMost);

  const auto c = xi_critical(-2.0, 0.0);
  REQUIRE(c);
  CHECK(c->xi == doctest::Approx(0.5));
  CHECK(c->direction == SplitDirection::AtLeast);

  CHECK_FALSE(xi_critical(0.0, 1.0));
}

TEST_CASE("implicit coefficient floor is the same condition rewritten") {
  for (double T : {-5.0, -0.3, 0.2, 7.0}) {
    for (double pm : {0.0, 0.5, 1.4}) {
      const double xi = xi_critical(T, pm)->xi;
      CHECK((1.0 - xi) * T == doctest::Approx(implicit_coefficient_floor(T, pm)).epsilon(1e-12));
    }
  }
  CHECK(implicit_coefficient_floor(0.0, 2.0) == 0.0);
}

TEST_CASE("split condition accepts the stable side only") {
  CHECK(satisfies_split_condition(3.5, -2.0, 1.0));
  CHECK(satisfies_split_condition(4.0, -2.0, 1.0));
  CHECK_FALSE(satisfies_split_condition(3.4, -2.0, 1.0));
  CHECK(satisfies_split_condition(-6.0, 1.0, 1.0));
  CHECK(satisfies_split_condition(-7.0, 1.0, 1.0));
  CHECK_FALSE(satisfies_split_condition(-5.9, 1.0, 1.0));
  CHECK(satisfies_split_condition(123.0, 0.0, 1.0));
}

TEST_CASE("literal xi field on uniform and banded T") {
  const Grid g = Grid::square(6, 0.1, BoundaryCondition::Periodic);
  const Field phi = create_field(g, 1.0);
  const Field xi = xi_field(create_field(g, -2.0), phi, SplittingPolicy{});
  CHECK((xi.values().array() - 3.5).abs().maxCoeff() < 1e-15);

  Field T = create_field(g, 0.49);
  for (int j = 0; j < g.m(); ++j) T(3, j) = T(4, j) = T(5, j) = -4.13;
  const Field banded = xi_field(T, phi, SplittingPolicy{});
  CHECK(banded(0, 0) == doctest::Approx(-6.0 / 0.49));
  CHECK(banded(4, 2) == doctest::Approx((-4.13 - 12.0) / (2 * -4.13)));
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.m(); ++j) CHECK(satisfies_split_condition(banded(i, j), T(i, j), 1.0));
  }
}

TEST_CASE("margin pushes into the stable direction and T = 0 uses the fallback") {
  const Grid g = Grid::square(3, 0.1, BoundaryCondition::Periodic);
  Field T = create_field(g, -2.0);
  T(0, 0) = 1.0;
  T(1, 1) = 0.0;
  SplittingPolicy p;
  p.margin = 0.25;
  p.xi_at_zero_T = 0.7;
  const Field xi = xi_field(T, create_field(g, 1.0), p);
  CHECK(xi(2, 2) == doctest::Approx(3.75));
  CHECK(xi(0, 0) == doctest::Approx(-6.25));
  CHECK(xi(1, 1) == 0.7);
}

TEST_CASE("uniform coefficient mode equalises (1 - xi) T") {
  const Grid g = Grid::square(5, 0.1, BoundaryCondition::Periodic);
  const Field T = testing::random_field(g, 9, 5.0);
  const Field phi = testing::random_field(g, 10, 1.2);
  SplittingPolicy p;
  p.mode = SplittingMode::UniformCoefficient;
  const Field xi = xi_field(T, phi, p);
  const Matrix coeff = ((1.0 - xi.values().array()) * T.values().array()).matrix();
  CHECK(coeff.maxCoeff() - coeff.minCoeff() <= 1e-12 * std::abs(coeff.maxCoeff()));
  const double pm = phi_max_estimate(phi, p);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.m(); ++j) CHECK(satisfies_split_condition(xi(i, j), T(i, j), pm));
  }
  Field with_zero = T;
  with_zero(2, 2) = 0.0;
  CHECK_THROWS_AS(xi_field(with_zero, phi, p), InvalidArgument);
}

TEST_CASE("uniform T gives the same implicit coefficient in both modes") {
  const Grid g = Grid::square(4, 0.1, BoundaryCondition::Periodic);
  const Field T = create_field(g, -2.0);
  const Field phi = testing::random_field(g, 2);
  SplittingPolicy uniform;
  uniform.mode = SplittingMode::UniformCoefficient;
  const Field a = xi_field(T, phi, SplittingPolicy{});
  const Field b = xi_field(T, phi, uniform);
  CHECK(testing::max_abs_diff(a.values(), b.values()) < 1e-14);
}

TEST_CASE("random pairs always land on the stable side") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> t_dist(-50.0, 50.0);
  std::uniform_real_distribution<double> p_dist(0.0, 3.0);
  const Grid g = Grid::square(3, 1.0, BoundaryCondition::Periodic);
  for (int k = 0; k < 500; ++k) {
    const double T = t_dist(rng);
    const double pm = p_dist(rng);
    Field phi = create_field(g, 0.0);
    phi(1, 1) = pm;
    const Field xi = xi_field(create_field(g, T), phi, SplittingPolicy{});
    CHECK(satisfies_split_condition(xi(0, 0), T, pm));
  }
}

TEST_CASE("policy validation and mode names") {
  SplittingPolicy p;
  CHECK_NOTHROW(p.validate());
  p.safety_factor = 0.5;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = SplittingPolicy{};
  p.margin = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  CHECK(parse_splitting_mode("literal") == SplittingMode::Literal);
  CHECK(parse_splitting_mode(to_string(SplittingMode::UniformCoefficient)) == SplittingMode::UniformCoefficient);
  CHECK_THROWS_AS(parse_splitting_mode("auto"), InvalidArgument);
}
