#include <cmath>
#include <numbers>

#include "attlab/errors.hpp"
#include "attlab/models_scalar.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace attlab;

namespace {

constexpr double pi = std::numbers::pi;

LinearModel linear_t() { return {-1.0, TimeFn::affine(0.0, 1.0)}; }
LinearModel linear_sin() { return {-1.0, TimeFn::sinusoidal(0.0, 1.0)}; }

double a_sin(double t) { return 0.5 * (std::sin(t) - std::cos(t)); }
double xi_periodic(double t) { return 2.0 + 0.5 * std::sin(t) - 0.5 * std::cos(t); }

// least-squares slope of log|y| against t
double log_slope(const std::vector<double>& t, const std::vector<double>& y) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ly = std::log(std::abs(y[i]));
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace

TEST_CASE("linear solutions") {
  CHECK(linear_solution(linear_t(), 1.0, 0.0, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  // the paper's formula y(t) = t - 1 + e^{s-t}(y(s) + 1 - s)
  CHECK(linear_solution(linear_t(), 2.5, -1.0, 3.0) ==
        doctest::Approx(1.5 + std::exp(-3.5) * (3.0 + 2.0)).epsilon(1e-13));
  CHECK(std::abs(linear_solution(linear_sin(), 2 * pi, 0.0, a_sin(0.0)) - a_sin(2 * pi)) <= 1e-13);
  const LinearModel decay{-1.0, TimeFn::constant(0.0)};
  CHECK(linear_solution(decay, 3.0, 1.0, 2.0) == doctest::Approx(2.0 * std::exp(-2.0)));
  CHECK_THROWS_AS(linear_solution(decay, 0.0, 1.0, 2.0), ContractViolation);
}

TEST_CASE("linear pullback trajectories") {
  CHECK(std::abs(linear_pullback_trajectory(linear_sin(), 0.0) + 0.5) <= 1e-12);
  for (double t : {-3.0, 0.0, 4.0, 10.0}) {
    CHECK(std::abs(linear_pullback_trajectory(linear_t(), t) - (t - 1.0)) <= 1e-12);
    CHECK(std::abs(linear_pullback_trajectory(linear_sin(), t) - a_sin(t)) <= 1e-12);
  }
  CHECK(linear_pullback_trajectory({-1.0, TimeFn::constant(4.0)}, 2.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(linear_pullback_trajectory({1.0, TimeFn::sinusoidal(0.0, 1.0)}, 0.0),
                  UnsupportedModel);
  const double times[] = {0.0, 1.0};
  const auto fam = linear_attractor_family(linear_t(), times);
  CHECK(fam.at(1.0)[0].scalar_value() == doctest::Approx(0.0));
}

TEST_CASE("inclusion solution catalogue") {
  const InclusionModel m{1.0, TimeFn::constant(1.0)};
  const auto pos = inclusion_solution_set(m, 1.0, 0.0, 2.0, 9);
  REQUIRE(pos.size() == 1);
  CHECK(pos[0].state.scalar_value() == doctest::Approx(1.0 + std::exp(-1.0)).epsilon(1e-14));
  const auto neg = inclusion_solution_set(m, 1.0, 0.0, -2.0, 9);
  CHECK(neg[0].state.scalar_value() == doctest::Approx(-(1.0 + std::exp(-1.0))).epsilon(1e-14));

  const auto still = inclusion_solution_set(m, 0.0, 0.0, 0.0, 9);
  REQUIRE(still.size() == 1);
  CHECK(still[0].state.scalar_value() == 0.0);

  const auto zero = inclusion_solution_set(m, 3.0, 0.0, 0.0, 3);
  REQUIRE(zero.size() == 3);
  const double v = 1.0 - std::exp(-3.0);
  CHECK(zero[0].label == BranchLabel::zero_rest());
  CHECK(zero[1].state.scalar_value() == doctest::Approx(v));
  CHECK(zero[2].state.scalar_value() == doctest::Approx(-v));
  CHECK(v == doctest::Approx(0.95021).epsilon(1e-5));
}

TEST_CASE("nonautonomous equilibria") {
  CHECK(inclusion_xi_M({2.0, TimeFn::constant(3.0)}, 1.0, +1) == doctest::Approx(1.5));
  const InclusionModel per{1.0, TimeFn::sinusoidal(2.0, 1.0)};
  CHECK(std::abs(inclusion_xi_M(per, 0.0, +1) - 1.5) <= 1e-12);
  CHECK(std::abs(inclusion_xi_M(per, 3 * pi / 4, +1) - (2.0 + std::sqrt(0.5))) <= 1e-12);
  CHECK(inclusion_xi_M(per, 0.3, -1) == -inclusion_xi_M(per, 0.3, +1));
  for (double t : {-7.0, 0.5, 11.0}) {
    CHECK(std::abs(inclusion_xi_M(per, t, +1) - xi_periodic(t)) <= 1e-12);
    // quadrature over a depth where the tail is below 1e-12
    const double quad = per.b.weighted_integral_quadrature(1.0, t - 32.0, t);
    CHECK(std::abs(inclusion_xi_M(per, t, +1) - quad) <= 1e-9);
  }
}

TEST_CASE("inclusion attractor sections") {
  const auto a = inclusion_attractor({1.0, TimeFn::constant(1.0)}, 5.0, 101);
  CHECK(interval_hull(a).lo == doctest::Approx(-1.0));
  CHECK(interval_hull(a).hi == doctest::Approx(1.0));
  const auto b = inclusion_attractor({1.0, TimeFn::sinusoidal(2.0, 1.0)}, 0.0, 11);
  CHECK(interval_hull(b).lo == doctest::Approx(-1.5));
  CHECK(interval_hull(b).hi == doctest::Approx(1.5));
  const auto c = inclusion_attractor({1.0, TimeFn::constant(1.0)}, 0.0, 2);
  CHECK(c.size() == 2);
  CHECK_THROWS_AS(inclusion_attractor({1.0, TimeFn::constant(1.0)}, 0.0, 1), ContractViolation);
}

TEST_CASE("autonomous limit") {
  const InclusionModel m{1.0, TimeFn::exp_ramp(2.0, 3.0, 1.0)};
  const auto lim = inclusion_autonomous_limit(m);
  CHECK(lim.fixed_points[0] == 0.0);
  CHECK(lim.fixed_points[1] == 2.0);
  CHECK(lim.fixed_points[2] == -2.0);
  CHECK(interval_hull(lim.attractor).lo == -2.0);
  CHECK(interval_hull(lim.attractor).hi == 2.0);
  CHECK(lim.heteroclinic(1.0, 1.0) == 0.0);
  CHECK(lim.heteroclinic(0.0, std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lim.heteroclinic(0.0, 1.0, -1) == doctest::Approx(-2.0 * (1 - std::exp(-1.0))));
  CHECK_THROWS_AS(inclusion_autonomous_limit({1.0, TimeFn::sinusoidal(2.0, 1.0)}), UnsupportedModel);
  CHECK_THROWS_AS(inclusion_process({1.0, TimeFn::sinusoidal(0.0, 1.0)}), ContractViolation);
  CHECK_THROWS_AS(inclusion_process({-1.0, TimeFn::constant(1.0)}), ContractViolation);
}

TEST_CASE("property: xi_M are complete trajectories") {
  gen::Rng rng(51);
  const InclusionModel models[] = {{1.0, TimeFn::sinusoidal(2.0, 1.0)},
                                   {0.7, TimeFn::exp_ramp(2.0, 3.0, 1.0)},
                                   {2.0, TimeFn::sinusoidal(1.5, 0.5, 3.0, 0.2)}};
  for (const auto& m : models) {
    for (int k = 0; k < 50; ++k) {
      const double s = rng.uniform(-10.0, 10.0);
      const double t = s + rng.uniform(0.0, 8.0);
      for (int sign : {+1, -1}) {
        const double xs = inclusion_xi_M(m, s, sign);
        const auto r = inclusion_solution_set(m, t, s, xs, 1);
        CHECK(std::abs(r[0].state.scalar_value() - inclusion_xi_M(m, t, sign)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("property: departure branches stay inside the attractor") {
  gen::Rng rng(52);
  const InclusionModel m{1.0, TimeFn::sinusoidal(2.0, 1.0)};
  for (int k = 0; k < 500; ++k) {
    const double r = rng.uniform(-10.0, 10.0);
    const double t = r + rng.uniform(0.0, 15.0);
    const double u = inclusion_departure_branch(m, r, t, +1);
    CHECK(u >= -1e-9);
    CHECK(u <= inclusion_xi_M(m, t, +1) + 1e-9);
  }
}

TEST_CASE("property: heteroclinic gap decays at rate lambda") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const InclusionModel m{lambda, TimeFn::sinusoidal(2.0, 1.0)};
    const double r = 0.0;
    std::vector<double> ts, gaps;
    for (int i = 1; i <= 40; ++i) {
      const double t = r + 0.25 * i;
      ts.push_back(t);
      gaps.push_back(inclusion_xi_M(m, t, +1) - inclusion_departure_branch(m, r, t, +1));
    }
    const double slope = log_slope(ts, gaps);
    CHECK(std::abs(slope + lambda) <= 0.05 * lambda);
  }
}

TEST_CASE("property: asymptotically autonomous equilibria converge to the fixed points") {
  const InclusionModel m{1.0, TimeFn::exp_ramp(2.0, 3.0, 1.0)};
  const auto lim = inclusion_autonomous_limit(m);
  double prev = INFINITY;
  for (double t = 0.0; t <= 20.0; t += 1.0) {
    const double gap = std::abs(inclusion_xi_M(m, t, +1) - lim.fixed_points[1]);
    CHECK(gap <= prev + 1e-15);
    prev = gap;
  }
  CHECK(prev <= 1e-6);
  CHECK(std::abs(inclusion_xi_M(m, 20.0, -1) - lim.fixed_points[2]) <= 1e-6);
}
