#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "attlab/errors.hpp"
#include "attlab/parabolic.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace attlab;

namespace {

constexpr double pi2 = std::numbers::pi * std::numbers::pi;

ParabolicInclusionModel model(TimeFn b = TimeFn::constant(2.0), TimeFn omega = TimeFn::constant(0.0)) {
  return {std::move(b), std::move(omega), Grid1D::unit(), 0.005};
}

ParabolicInclusionModel aa_model() {
  return model(TimeFn::exp_ramp(2.0, 3.0, 1.0), TimeFn::exp_ramp(1.0, 2.0, 1.0));
}

StatePoint field(const Grid1D& g, const std::function<double(double)>& f) { return g.field(g.sample(f)); }

StatePoint random_nonneg(gen::Rng& rng, const Grid1D& g) {
  std::vector<double> v(g.size());
  const double base = rng.uniform(0.0, 2.0);
  const double k = rng.integer(1, 6);
  const double sparsity = rng.uniform(0.0, 0.9);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = g.x(i);
    v[i] = rng.uniform(0.0, 1.0) < sparsity ? 0.0 : base * std::abs(std::sin(k * std::numbers::pi * x)) + rng.uniform(0.0, 0.5);
  }
  v[rng.integer(0, static_cast<int>(v.size()) - 1)] += 0.1;  // never identically zero
  return g.field(std::move(v));
}

double x1mx(double x) { return x * (1.0 - x); }

}  // namespace

TEST_CASE("parabolic model validation") {
  CHECK_NOTHROW(model().validate());
  CHECK_THROWS_AS(model(TimeFn::constant(0.0)).validate(), ContractViolation);
  CHECK_THROWS_AS(model(TimeFn::constant(2.0), TimeFn::constant(pi2)).validate(), ContractViolation);
  CHECK_NOTHROW(model(TimeFn::constant(2.0), TimeFn::constant(pi2 - 1e-3)).validate());
  CHECK_THROWS_AS(model(TimeFn::constant(2.0), TimeFn::constant(-0.1)).validate(), ContractViolation);
  auto m = model();
  m.dt = 0.02;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  m = model();
  m.grid = Grid1D::chafee();
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  const auto lim = aa_model().limit_model();
  CHECK(lim.b(0.0) == 2.0);
  CHECK(lim.omega(0.0) == 1.0);
  CHECK(lim.is_autonomous());
}

TEST_CASE("solution catalogue from zero") {
  const auto m = model();
  const auto zero = m.grid.field(std::vector<double>(m.grid.size(), 0.0));
  const auto at_start = parabolic_solve(m, 1.0, 1.0, zero, 7);
  REQUIRE(at_start.size() == 1);
  CHECK(at_start[0].label == BranchLabel::zero_rest());
  CHECK(norm(at_start[0].state) == 0.0);

  const auto br = parabolic_solve(m, 2.0, 0.0, zero, 5);
  REQUIRE(br.size() == 5);
  CHECK(br[0].label == BranchLabel::zero_rest());
  double prev = HUGE_VAL;
  for (std::size_t j = 1; j < br.size(); ++j) {
    CHECK(br[j].label.kind == BranchKind::departure_plus);
    CHECK(*br[j].label.departure_time == doctest::Approx(0.5 * (j - 1)));
    // later departures have had less time to grow
    CHECK(norm(br[j].state) < prev);
    prev = norm(br[j].state);
    for (double v : br[j].state.values()) CHECK(v > 0.0);
  }
  const auto one = parabolic_solve(m, 2.0, 0.0, field(m.grid, [](double x) { return x1mx(x); }), 5);
  CHECK(one.size() == 1);
  CHECK(one[0].label == BranchLabel::unique());
}

TEST_CASE("negative data are rejected") {
  const auto m = model();
  auto u = field(m.grid, [](double x) { return x1mx(x); });
  std::vector<double> v(u.values().begin(), u.values().end());
  v[10] = -1e-6;
  CHECK_THROWS_AS(parabolic_solve(m, 1.0, 0.0, m.grid.field(v), 1), ContractViolation);
  v[10] = -1e-13;
  CHECK_NOTHROW(parabolic_solve(m, 1.0, 0.0, m.grid.field(v), 1));
}

TEST_CASE("stationary state of the heat problem with constant source") {
  // -v'' = 2 with zero ends: v = x (1 - x), reproduced exactly by central differences
  const auto m = model();
  const auto v = parabolic_stationary(m);
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(v[i] - x1mx(m.grid.x(i))));
  CHECK(err <= 1e-4);
  // long march from sin(pi x)
  const auto u = parabolic_solve(m, 5.0, 0.0, field(m.grid, [](double x) { return std::sin(std::numbers::pi * x); }), 1);
  const auto& uf = u[0].state;
  CHECK(*std::max_element(uf.values().begin(), uf.values().end()) == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(std::abs(norm(uf) * norm(uf) - 1.0 / 30.0) <= 1e-4);
  CHECK_THROWS_AS(parabolic_stationary(aa_model()), UnsupportedModel);
}

TEST_CASE("property: positivity preservation") {
  gen::Rng rng(50);
  for (const auto& m : {model(), aa_model()}) {
    for (int run = 0; run < 20; ++run) {
      const auto u0 = random_nonneg(rng, m.grid);
      const double ts[] = {0.01, 0.2, 1.0};
      const auto path = parabolic_solve_path(m, ts, 0.0, u0, 1);
      REQUIRE(path.size() == 1);
      for (const auto& s : path[0].states)
        for (double v : s.values()) CHECK(v > 0.0);
    }
  }
}

TEST_CASE("property: comparison principle") {
  gen::Rng rng(8);
  const auto m = aa_model();
  for (int run = 0; run < 20; ++run) {
    const auto lo = random_nonneg(rng, m.grid);
    auto extra = random_nonneg(rng, m.grid);
    std::vector<double> hi(lo.size());
    for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = lo[i] + (run % 2 ? extra[i] : 0.0);
    const double t0 = rng.uniform(-2.0, 2.0);
    const double ts[] = {t0 + 0.1, t0 + 1.0, t0 + 3.0};
    const auto a = parabolic_solve_path(m, ts, t0, m.grid.field(hi), 1);
    const auto b = parabolic_solve_path(m, ts, t0, lo, 1);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < hi.size(); ++i) CHECK(a[0].states[k][i] >= b[0].states[k][i] - 1e-10);
  }
}

TEST_CASE("decay of differences") {
  const auto m = model();
  const auto ua = field(m.grid, [](double x) { return 1.0 + x1mx(x); });
  const double ts[] = {0.05, 0.1, 0.2, 0.4};
  const auto same = parabolic_decay_check(m, ua, ua, ts, 0.0);
  CHECK(same.passed);
  for (const auto& c : same.curve) CHECK(c.value == 0.0);

  // the difference of two positive solutions solves the heat equation; in the
  // scheme its first mode decays like (1 + k mu_1)^{-n}
  const auto ub = field(m.grid, [](double x) { return 0.5 + 0.1 * std::sin(std::numbers::pi * x); });
  const auto scheme = parabolic_decay_check(m, ua, ub, ts, 0.0, DecayRate::scheme);
  CHECK(scheme.passed);
  // mu_1 < pi^2 on every finite grid, so the continuum rate is out of reach
  // for differences with a first-mode component
  const auto cont = parabolic_decay_check(m, ua, ub, ts, 0.0, DecayRate::continuum);
  CHECK_FALSE(cont.passed);
  CHECK(cont.evidence.at("semidiscrete_rate") < pi2);

  const auto w5 = model(TimeFn::constant(2.0), TimeFn::constant(5.0));
  CHECK(parabolic_decay_check(w5, ua, ub, ts, 0.0, DecayRate::scheme).passed);
  const auto zero = m.grid.field(std::vector<double>(m.grid.size(), 0.0));
  CHECK_THROWS_AS(parabolic_decay_check(m, ua, zero, ts, 0.0), ContractViolation);
}

TEST_CASE("property: scheme-rate decay over random positive pairs") {
  gen::Rng rng(31);
  for (const auto& m : {model(), model(TimeFn::constant(2.0), TimeFn::constant(5.0)), aa_model()}) {
    for (int run = 0; run < 10; ++run) {
      const auto a = random_nonneg(rng, m.grid);
      const auto b = random_nonneg(rng, m.grid);
      const double ts[] = {0.02, 0.1, 0.3, 0.6};
      CHECK(parabolic_decay_check(m, a, b, ts, 0.0, DecayRate::scheme).passed);
    }
  }
}

TEST_CASE("bounded complete trajectory and the autonomous attractor") {
  const auto m = model();
  const auto xi = parabolic_xi_M(m, 1.0, 5.0);
  const auto v1 = parabolic_stationary(m);
  CHECK(distance(xi, v1) <= 1e-6);
  for (double v : xi.values()) CHECK(v > 0.0);

  const auto att = parabolic_autonomous_attractor(m, 5.0, 101);
  for (const auto& y : att.sample.points())
    for (std::size_t i = 0; i < y.size(); ++i) {
      CHECK(y[i] >= 0.0);
      CHECK(y[i] <= v1[i] + 1e-10);
    }
  CHECK(point_to_set(att.zero, att.sample) == 0.0);
  CHECK(point_to_set(att.v1_plus, att.sample) == 0.0);
  // the earliest departure has almost reached v1
  const auto deps = parabolic_departure_states(m, 0.0, 5.0, 101);
  CHECK(distance(deps.front(), v1) <= 1e-3);
  CHECK(norm(deps.back()) == 0.0);
  CHECK_THROWS_AS(parabolic_autonomous_attractor(aa_model()), UnsupportedModel);
}

TEST_CASE("asymptotically autonomous inclusion") {
  const auto m = aa_model();
  const auto lim = m.limit_model();
  const auto v1 = parabolic_stationary(lim);
  double prev = HUGE_VAL;
  for (double t : {0.0, 2.0, 5.0, 10.0}) {
    const auto xi = parabolic_xi_M(m, t, 5.0);
    const double gap = distance(xi, v1);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev <= 1e-3);

  const auto A = parabolic_attractor_sample(m, 3.0, 5.0, 51);
  const auto xi = parabolic_xi_M(m, 3.0, 5.0);
  for (const auto& y : A.points())
    for (std::size_t i = 0; i < y.size(); ++i) {
      CHECK(y[i] >= 0.0);
      CHECK(y[i] <= xi[i] + 1e-8);
    }

  const auto u0 = field(m.grid, [](double x) { return 0.5 + std::sin(std::numbers::pi * x); });
  const double taus[] = {2.0, 4.0, 8.0};
  const auto rep = parabolic_aa_contract(m, u0, taus, 5.0, 10.0);
  CHECK(rep.passed);
  CHECK(rep.evidence.at("constant") > 0.0);
  CHECK(rep.evidence.at("gap@8") < rep.evidence.at("gap@2"));
}

TEST_CASE("parabolic process and cocycle") {
  const auto m = aa_model();
  const auto p = parabolic_process(m);
  CHECK(p.is_multivalued());
  CHECK_FALSE(p.is_autonomous());
  const auto zero = m.grid.field(std::vector<double>(m.grid.size(), 0.0));
  const auto pos = field(m.grid, [](double x) { return x1mx(x); });
  const CompactSetSample B({zero, pos});
  // departure grids of the composition contain the direct grid
  CHECK(check_cocycle(p, 0.0, 1.0, 2.0, B, 11, 1e-9).passed);
}
