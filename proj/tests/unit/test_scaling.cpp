#include "support.hpp"

#include "phasefield/scaling.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace phasefield;

TEST_CASE("power-law fit recovers an exact exponent") {
  const std::vector<double> x{100, 400, 1600, 6400};
  std::vector<double> y;
  for (double v : x) y.push_back(3e-7 * std::pow(v, 1.25));
  const auto p = fit_power_law(x, y);
  REQUIRE(p);
  CHECK(*p == doctest::Approx(1.25).epsilon(1e-12));

  const std::vector<double> one{5.0};
  CHECK_FALSE(fit_power_law(one, one));
  const std::vector<double> same{4.0, 4.0, 4.0, 4.0};
  CHECK_FALSE(fit_power_law(same, x));
}

TEST_CASE("the benchmark reports a table and needs three sizes for an exponent") {
  ScalingOptions opt;
  opt.steps_per_size = 1;
  opt.repeats = 1;
  const std::vector<int> sizes{8, 16, 32};
  const auto r = scaling_benchmark(Model::AllenCahn, SolverKind::Implicit, sizes, opt);
  REQUIRE(r.table.size() == 3);
  CHECK(r.table[1].dof == 256);
  CHECK(r.exponent);
  for (const auto& p : r.table) CHECK(p.seconds_per_step > 0.0);

  const std::vector<int> single{8};
  const auto s = scaling_benchmark(Model::CahnHilliard, SolverKind::Explicit, single, opt);
  CHECK_FALSE(s.exponent);
  CHECK_FALSE(s.fit_error.empty());
}
