#include <cmath>
#include <vector>

#include "attlab/errors.hpp"
#include "attlab/setcalc.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace attlab;

namespace {

CompactSetSample scalars(std::initializer_list<double> xs) {
  std::vector<StatePoint> pts;
  for (double x : xs) pts.push_back(StatePoint::scalar(x));
  return CompactSetSample(std::move(pts));
}

}  // namespace

TEST_CASE("state points validate their metric data") {
  CHECK_THROWS_AS(StatePoint::field({1.0, 2.0}, 0.0), ContractViolation);
  CHECK_THROWS_AS(StatePoint::field({1.0, NAN}, 0.1), ContractViolation);
  CHECK_THROWS_AS(StatePoint::field({}, 0.1), ContractViolation);
  CHECK_THROWS_AS(StatePoint::field({1.0}, 0.1).scalar_value(), ContractViolation);
  const auto p = StatePoint::scalar(3.0);
  CHECK(p.norm_tag() == NormTag::abs);
  CHECK(p.scalar_value() == 3.0);
  CHECK(norm_tag_from_string(to_string(NormTag::h1_discrete)) == NormTag::h1_discrete);
  CHECK_THROWS_AS(norm_tag_from_string("sup"), ContractViolation);
}

TEST_CASE("discrete norms") {
  const double h = 0.25;
  const std::vector<double> u{1.0, 2.0, 1.0};
  CHECK(l2_norm(u, h) == doctest::Approx(std::sqrt(0.25 * 6.0)));
  // differences with phantom zeros: 1, 1, -1, -1
  CHECK(v_norm(u, h) == doctest::Approx(std::sqrt(4.0 / 0.25)));
  const auto a = StatePoint::field(u, h, NormTag::h1_discrete);
  CHECK(norm(a) == doctest::Approx(4.0));
  CHECK(norm(a.with_norm(NormTag::l2_discrete)) == doctest::Approx(std::sqrt(1.5)));
}

TEST_CASE("semidist examples") {
  CHECK(semidist(scalars({0.0}), scalars({0.0})) == 0.0);
  const auto a = CompactSetSample::interval(-1.0, 1.0, 201);
  const auto b = CompactSetSample::interval(0.0, 1.0, 201);
  CHECK(semidist(a, b) == 1.0);
  CHECK(semidist(b, a) == doctest::Approx(0.005));
  CHECK(semidist(CompactSetSample::interval(0.0, 1.0, 101), a) <= 1e-15);

  const double h = 1.0;
  const CompactSetSample two({StatePoint::field({0.0, 0.0}, h), StatePoint::field({1.0, 0.0}, h)});
  const CompactSetSample origin({StatePoint::field({0.0, 0.0}, h)});
  CHECK(semidist(two, origin) == doctest::Approx(1.0));
}

TEST_CASE("semidist errors") {
  CHECK_THROWS_AS(semidist(CompactSetSample{}, scalars({1.0})), EmptySetError);
  CHECK_THROWS_AS(semidist(scalars({1.0}), CompactSetSample{}), EmptySetError);
  const CompactSetSample f({StatePoint::field({0.0, 0.0}, 0.5)});
  CHECK_THROWS_AS(semidist(f, scalars({0.0})), ContractViolation);
  const CompactSetSample g({StatePoint::field({0.0, 0.0, 0.0}, 0.5)});
  CHECK_THROWS_AS(hausdorff(f, g), ContractViolation);
}

TEST_CASE("hausdorff examples") {
  CHECK(hausdorff(scalars({1.0}), scalars({1.0})) == 0.0);
  CHECK(hausdorff(CompactSetSample::interval(-1.0, 1.0, 201),
                  CompactSetSample::interval(0.0, 1.0, 201)) == 1.0);
  const double t = 10.0;
  const double r = 1.0;
  const double d = hausdorff(scalars({t - 1.0}), scalars({t - 1.0 + r * std::exp(-t)}));
  CHECK(d == doctest::Approx(std::exp(-10.0)).epsilon(1e-6));
}

TEST_CASE("eps_merge examples") {
  const std::vector<StatePoint> pts{StatePoint::scalar(0.0), StatePoint::scalar(1e-9),
                                    StatePoint::scalar(1.0)};
  const auto m = eps_merge(pts, 1e-6);
  REQUIRE(m.size() == 2);
  CHECK(m[0].scalar_value() == 0.0);
  CHECK(m[1].scalar_value() == 1.0);
  CHECK(m.merge_eps() == 1e-6);

  const std::vector<StatePoint> three{StatePoint::scalar(0.0), StatePoint::scalar(0.5),
                                      StatePoint::scalar(1.0)};
  CHECK(eps_merge(three, 0.0).size() == 3);
  CHECK(eps_merge(std::vector<StatePoint>{}, 0.1).empty());
}

TEST_CASE("eps_merge of the sine trajectory hull") {
  std::vector<StatePoint> pts;
  for (int i = 0; i < 1000; ++i) {
    const double t = 100.0 * i / 999.0;
    pts.push_back(StatePoint::scalar(0.5 * (std::sin(t) - std::cos(t))));
  }
  const auto net = eps_merge(pts, 1e-2);
  const auto hull = interval_hull(net);
  CHECK(std::abs(hull.lo + std::sqrt(0.5)) <= 1e-2);
  CHECK(std::abs(hull.hi - std::sqrt(0.5)) <= 1e-2);
}

TEST_CASE("interval_hull") {
  const auto h = interval_hull(scalars({-1.0, 0.0, 2.0}));
  CHECK(h.lo == -1.0);
  CHECK(h.hi == 2.0);
  const auto s = interval_hull(scalars({7.0}));
  CHECK(s.lo == 7.0);
  CHECK(s.hi == 7.0);
  CHECK_THROWS_AS(interval_hull(CompactSetSample{}), EmptySetError);
  // xi_M^+(0) = 2 + sin(0)/2 - cos(0)/2 for b = 2 + sin t, lambda = 1
  const double xi = 2.0 + 0.5 * std::sin(0.0) - 0.5 * std::cos(0.0);
  const auto a = eps_merge(CompactSetSample::interval(-xi, xi, 301).points(), 1e-3);
  const auto ha = interval_hull(a);
  CHECK(std::abs(ha.lo + 1.5) <= 1e-3);
  CHECK(std::abs(ha.hi - 1.5) <= 1e-3);
}

TEST_CASE("set families") {
  SetFamily fam({0.0, 1.0}, {scalars({0.0}), scalars({1.0})});
  CHECK(fam.at(1.0)[0].scalar_value() == 1.0);
  CHECK(fam.has_time(0.0));
  CHECK_FALSE(fam.has_time(0.5));
  CHECK_THROWS_AS(fam.at(0.5), ContractViolation);
  CHECK_THROWS_AS(SetFamily({1.0, 0.0}, {scalars({0.0}), scalars({1.0})}), ContractViolation);
}

TEST_CASE("property: semidist is zero on subsets") {
  gen::Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto b = rng.scalar_set(30, 5.0);
    std::vector<StatePoint> sub;
    for (std::size_t i = 0; i < b.size(); i += 2) sub.push_back(b[i]);
    CHECK(semidist(CompactSetSample(sub), b) == 0.0);
  }
}

TEST_CASE("property: triangle inequalities on random triples") {
  gen::Rng rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const bool fields = k % 2 == 1;
    const auto a = fields ? rng.field_set(12, 4, 0.2, 2.0) : rng.scalar_set(25, 3.0);
    const auto b = fields ? rng.field_set(12, 4, 0.2, 2.0) : rng.scalar_set(25, 3.0);
    const auto c = fields ? rng.field_set(12, 4, 0.2, 2.0) : rng.scalar_set(25, 3.0);
    CHECK(semidist(a, c) <= hausdorff(a, b) + semidist(b, c) + 1e-12);
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    CHECK(hausdorff(a, b) == hausdorff(b, a));
  }
}

TEST_CASE("property: fast semidist agrees with the exhaustive scan") {
  gen::Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    const auto a = rng.scalar_set(40, 4.0);
    const auto b = rng.scalar_set(40, 4.0);
    CHECK(semidist(a, b) == semidist_exhaustive(a, b));
  }
}

TEST_CASE("property: eps_merge separation and covering") {
  gen::Rng rng(77);
  for (int k = 0; k < 200; ++k) {
    const bool fields = k % 3 == 0;
    const auto s = fields ? rng.field_set(60, 3, 0.5, 1.0) : rng.scalar_set(200, 1.0);
    const double eps = rng.uniform(0.0, 0.2);
    const auto m = eps_merge(s.points(), eps);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) CHECK(distance(m[i], m[j]) > eps);
    CHECK(semidist(s, m) <= eps);
    if (!fields) {
      const auto hs = interval_hull(s);
      const auto hm = interval_hull(m);
      CHECK(std::abs(hs.lo - hm.lo) <= eps);
      CHECK(std::abs(hs.hi - hm.hi) <= eps);
    }
  }
}

TEST_CASE("property: scalar eps_merge matches the greedy definition") {
  gen::Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto s = rng.scalar_set(100, 1.0);
    const double eps = rng.uniform(0.0, 0.1);
    std::vector<double> kept;
    for (const auto& p : s.points()) {
      bool far = true;
      for (double q : kept) far = far && std::abs(p.scalar_value() - q) > eps;
      if (far) kept.push_back(p.scalar_value());
    }
    const auto m = eps_merge(s.points(), eps);
    REQUIRE(m.size() == kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) CHECK(m[i].scalar_value() == kept[i]);
  }
}
