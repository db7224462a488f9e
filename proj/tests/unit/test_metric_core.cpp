#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ghforge/constructions.hpp"
#include "ghforge/errors.hpp"
#include "ghforge/gh.hpp"
#include "ghforge/graph.hpp"
#include "ghforge/metric_space.hpp"
#include "ghforge/oracle.hpp"

using namespace ghforge;
constexpr double kPi = std::numbers::pi;

TEST_CASE("two point space is a metric") {
  auto m = FiniteMetricSpace::from_rows({{0, 1}, {1, 0}});
  CHECK(validate_metric(m).ok());
}

TEST_CASE("asymmetric matrix reports the offending pair") {
  auto m = FiniteMetricSpace::from_rows({{0, 1}, {2, 0}});
  auto report = validate_metric(m);
  REQUIRE_FALSE(report.ok());
  const auto& v = report.violations.front();
  CHECK(v.kind == MetricViolation::Kind::Asymmetry);
  CHECK(v.i == 0);
  CHECK(v.j == 1);
}

TEST_CASE("triangle violation names the detour vertex") {
  auto m = FiniteMetricSpace::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  auto report = validate_metric(m);
  REQUIRE_FALSE(report.ok());
  const auto it = std::find_if(report.violations.begin(), report.violations.end(), [](const auto& v) {
    return v.kind == MetricViolation::Kind::Triangle;
  });
  REQUIRE(it != report.violations.end());
  CHECK(it->i == 0);
  CHECK(it->j == 1);
  CHECK(it->k == 2);
  CHECK(it->excess == doctest::Approx(1.0));
  CHECK(report.summary().find("triangle (0,2) via 1") != std::string::npos);
}

TEST_CASE("other axiom failures") {
  CHECK(validate_metric(FiniteMetricSpace::from_rows({{0, -1}, {-1, 0}})).violations.front().kind ==
        MetricViolation::Kind::Negative);
  CHECK(validate_metric(FiniteMetricSpace::from_rows({{1, 1}, {1, 0}})).violations.front().kind ==
        MetricViolation::Kind::NonzeroDiagonal);
  CHECK(validate_metric(FiniteMetricSpace::from_rows({{0, 0}, {0, 0}})).violations.front().kind ==
        MetricViolation::Kind::Indiscernible);
  CHECK(validate_metric(FiniteMetricSpace::from_rows({{0, NAN}, {NAN, 0}})).violations.front().kind ==
        MetricViolation::Kind::NonFinite);
  // Within tolerance is accepted.
  CHECK(validate_metric(FiniteMetricSpace::from_rows({{0, 1, 2 + 5e-10}, {1, 0, 1}, {2 + 5e-10, 1, 0}})).ok());
}

TEST_CASE("shape mismatches are structural errors") {
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {0.0, 1.0, 1.0}), StructuralError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_rows({{0, 1}, {1}}), StructuralError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_rows({"a"}, {{0, 1}, {1, 0}}), StructuralError);
}

TEST_CASE("diameter") {
  CHECK(diameter(FiniteMetricSpace::from_rows({{0.0}})) == 0.0);
  CHECK(diameter(circle_space(4)) == doctest::Approx(kPi).epsilon(1e-15));
  for (std::size_t k : {3, 5, 16}) CHECK(std::abs(diameter(circle_space(2 * k)) - kPi) < 1e-12);
  CHECK(std::abs(diameter(sample_graph(build_E(), kPi / 64).metric) - kPi) < 1e-9);
  CHECK_THROWS_AS(diameter(FiniteMetricSpace()), DomainError);
}

TEST_CASE("diameter is invariant under relabeling") {
  auto m = oracle::random_path_metric(7, 6);
  std::vector<std::size_t> perm{3, 1, 5, 0, 4, 2};
  CHECK(diameter(m.restrict_to(perm)) == diameter(m));
  CHECK(diameter(m) == *std::max_element(m.data().begin(), m.data().end()));
}

TEST_CASE("hausdorff distance examples") {
  auto c = circle_space(16);
  auto whole = SubsetRef::whole(c);
  CHECK(hausdorff_distance(whole, whole) == 0.0);
  SubsetRef north(c, {0});
  CHECK(std::abs(hausdorff_distance(north, whole) - kPi) < 1e-12);
  CHECK(point_to_set(north, 8) == doctest::Approx(kPi));

  auto other = circle_space(16);
  CHECK_THROWS_AS(hausdorff_distance(north, SubsetRef::whole(other)), DomainError);
  CHECK_THROWS(SubsetRef(c, {}));
  CHECK_THROWS(SubsetRef(c, {16}));
}

TEST_CASE("star example: circle samples are pi/4 from the star") {
  GluedSpace z = star4_embedding(64);
  CHECK(std::abs(one_sided_hausdorff(z.left_part(), z.right_part()) - kPi / 4) < 1e-9);
}

TEST_CASE("hausdorff distance is symmetric and satisfies the triangle inequality") {
  std::mt19937_64 rng(11);
  auto m = oracle::random_path_metric(3, 12);
  auto random_subset = [&] {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (rng() % 2) members.push_back(i);
    }
    if (members.empty()) members.push_back(rng() % m.size());
    return SubsetRef(m, members);
  };
  for (int t = 0; t < 200; ++t) {
    auto a = random_subset();
    auto b = random_subset();
    auto c = random_subset();
    CHECK(hausdorff_distance(a, b) == hausdorff_distance(b, a));
    CHECK(hausdorff_distance(a, c) <= hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-12);
  }
}

TEST_CASE("graph metrics always validate") {
  for (const auto& g : {build_E(), build_E_prime(), build_star4(), build_circle_graph(),
                        build_figure_eight(), build_tripod(0.3, 1.0, 2.5)}) {
    CHECK(validate_metric(sample_graph(g, 0.2).metric).ok());
  }
}

TEST_CASE("restriction keeps entries and labels") {
  auto m = circle_space(8);
  std::vector<std::size_t> members{6, 2};
  auto r = m.restrict_to(members);
  CHECK(r.size() == 2);
  CHECK(r(0, 1) == m(6, 2));
  CHECK(r.labels()[0] == m.labels()[6]);
}
