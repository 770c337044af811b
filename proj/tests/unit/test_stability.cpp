#include "support.hpp"

#include "phasefield/errors.hpp"
#include "phasefield/stability.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace phasefield;

namespace {

Scenario small(const char* name) {
  ScenarioOverrides o;
  o.n = 10;
  o.dr = 0.02;
  return build_scenario(name, o);
}

}  // namespace

TEST_CASE("gradient stability check") {
  const std::vector<double> falling{3.0, 2.0, 1.5, 1.5};
  CHECK(gradient_stability_check(falling));
  const std::vector<double> jump{-1.0, -1.0 + 1e-3};
  CHECK_FALSE(gradient_stability_check(jump));
  const std::vector<double> flat(5, -2.0);
  CHECK(gradient_stability_check(flat));
  const std::vector<double> tiny{1.0, 1.0 + 1e-10};
  CHECK(gradient_stability_check(tiny));
  const std::vector<double> nan{1.0, std::nan("")};
  CHECK_FALSE(gradient_stability_check(nan));
  CHECK_THROWS_AS(gradient_stability_check(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("conservation check") {
  const std::vector<double> m{1.0, 1.0 + 1e-9};
  CHECK(conservation_check(m) == doctest::Approx(1e-9).epsilon(1e-6));
  const std::vector<double> zero{0.0, 2e-3, -1e-3};
  CHECK(conservation_check(zero) == doctest::Approx(2e-3));
}

TEST_CASE("zero perturbation gives a zero norm and a stable verdict") {
  PerturbationOptions opt;
  opt.magnitude = 0.0;
  const auto r = perturbation_stability_test(small("ac_banded"), SolverKind::Implicit, 0.01, SplittingPolicy{}, opt);
  CHECK(r.initial_norm == 0.0);
  CHECK(r.verdict == Verdict::Stable);
  for (const auto& rec : r.series) CHECK(*rec.l2_perturbation == 0.0);
}

TEST_CASE("verdicts are reproducible and separate stable from unstable steps") {
  const Scenario s = build_scenario("ch_banded");
  const auto a = perturbation_stability_test(s, SolverKind::Implicit, 1e-3, SplittingPolicy{}, {});
  const auto b = perturbation_stability_test(s, SolverKind::Implicit, 1e-3, SplittingPolicy{}, {});
  CHECK(a.verdict == Verdict::Stable);
  CHECK(a.max_norm_ratio == b.max_norm_ratio);
  CHECK(a.steps_taken == 200);
  CHECK(a.series.size() == 201);
  CHECK(a.mass_drift < 1e-9);

  const Scenario ac = small("ac_banded");
  const auto bad = perturbation_stability_test(ac, SolverKind::Explicit, 0.05, SplittingPolicy{}, {});
  CHECK(bad.verdict == Verdict::Unstable);
  CHECK(to_string(bad.verdict) == "unstable");
  CHECK(to_string(a.verdict) == "stable");

  PerturbationOptions wrong;
  wrong.stride = 0;
  CHECK_THROWS_AS(perturbation_stability_test(ac, SolverKind::Implicit, 0.01, SplittingPolicy{}, wrong),
                  InvalidArgument);
}
