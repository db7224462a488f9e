#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ghforge/constructions.hpp"
#include "ghforge/errors.hpp"
#include "ghforge/gh.hpp"
#include "ghforge/graph.hpp"
#include "ghforge/oracle.hpp"

using namespace ghforge;
constexpr double kPi = std::numbers::pi;

namespace {

SpacePtr two_point(double a) { return share(FiniteMetricSpace::from_rows({{0, a}, {a, 0}})); }

SpacePtr random_space(std::mt19937_64& rng, std::size_t max_size) {
  const std::uint64_t seed = rng();
  return share(oracle::random_path_metric(seed, 1 + rng() % max_size));
}

std::vector<IndexPair> random_pairs(std::mt19937_64& rng, std::size_t nx, std::size_t ny) {
  std::vector<IndexPair> pairs;
  for (std::size_t x = 0; x < nx; ++x) pairs.emplace_back(x, rng() % ny);
  for (std::size_t y = 0; y < ny; ++y) pairs.emplace_back(rng() % nx, y);
  return pairs;
}

}  // namespace

TEST_CASE("correspondence validation") {
  auto x = two_point(1.0);
  auto y = two_point(2.0);
  CHECK_THROWS_AS(Correspondence(x, y, {{0, 0}}), DomainError);
  CHECK_THROWS_AS(Correspondence(x, y, {{0, 0}, {1, 1}, {2, 1}}), StructuralError);
  Correspondence r(x, y, {{1, 1}, {0, 0}, {1, 1}});
  CHECK(r.size() == 2);
  CHECK(r.pairs().front() == IndexPair{0, 0});
  CHECK(r.transpose().pairs() == std::vector<IndexPair>{{0, 0}, {1, 1}});
}

TEST_CASE("distortion examples") {
  auto x = share(circle_space(12));
  CHECK(distortion(Correspondence::identity(x, x)) == 0.0);
  CHECK(distortion(Correspondence::identity(two_point(1.0), two_point(3.0))) == 2.0);
  CHECK(distortion(Correspondence::full(two_point(1.0), two_point(3.0))) == 3.0);
}

TEST_CASE("exact_gh identities") {
  auto x = share(circle_space(5));
  auto self = exact_gh(x, x);
  CHECK(self.exact);
  CHECK(self.upper == 0.0);
  REQUIRE(self.witness);
  CHECK(self.witness->pairs() == Correspondence::identity(x, x).pairs());

  auto point = share(FiniteMetricSpace::from_rows({{0.0}}));
  auto to_point = exact_gh(x, point);
  CHECK(to_point.upper == diameter(*x) / 2);
  CHECK(to_point.lower == to_point.upper);
}

TEST_CASE("two point spaces: all seven correspondences") {
  CHECK(oracle::count_correspondences(2, 2) == 7);
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {0.25, 1.0, 3.0}) {
      auto r = exact_gh(two_point(a), two_point(b));
      CHECK(r.upper == std::abs(a - b) / 2);
      CHECK(oracle::brute_force_gh(*two_point(a), *two_point(b)) == std::abs(a - b) / 2);
    }
  }
}

TEST_CASE("exact_gh rejects empty spaces") {
  auto empty = share(FiniteMetricSpace());
  CHECK_THROWS_AS(exact_gh(empty, two_point(1.0)), DomainError);
}

TEST_CASE("exact_gh matches exhaustive enumeration") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 60; ++t) {
    auto x = random_space(rng, 4);
    auto y = random_space(rng, 4);
    auto r = exact_gh(x, y);
    CHECK(r.exact);
    CHECK(r.upper == oracle::brute_force_gh(*x, *y));
    REQUIRE(r.witness);
    CHECK(distortion(*r.witness) / 2 == r.upper);
  }
}

TEST_CASE("exact_gh on a tripod and a segment") {
  auto x = share(sample_graph(build_tripod(1, 1, 1), 0.5).metric);
  auto y = share(sample_graph(build_segment(1), 0.6).metric);
  CHECK(exact_gh(x, y).upper == oracle::brute_force_gh(*x, *y));
}

TEST_CASE("exact_gh is symmetric and vanishes exactly on isometric pairs") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    auto x = random_space(rng, 5);
    std::vector<std::size_t> perm(x->size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto y = rng() % 2 ? share(x->restrict_to(perm)) : random_space(rng, 5);
    auto xy = exact_gh(x, y);
    auto yx = exact_gh(y, x);
    CHECK(xy.upper == yx.upper);
    CHECK((xy.upper == 0.0) == oracle::isometric_by_permutation(*x, *y));
  }
}

TEST_CASE("exact_gh triangle inequality") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    auto a = random_space(rng, 4);
    auto b = random_space(rng, 4);
    auto c = random_space(rng, 4);
    const double ab = oracle::brute_force_gh(*a, *b);
    const double bc = oracle::brute_force_gh(*b, *c);
    CHECK(exact_gh(a, c).upper <= ab + bc + 1e-12);
  }
}

TEST_CASE("budget exhaustion degrades to bounds") {
  auto x = share(circle_space(7));
  auto y = share(sample_graph(build_tripod(1.0, 1.3, 0.6), 0.35).metric);
  auto r = exact_gh(x, y, 20);
  CHECK_FALSE(r.exact);
  CHECK(r.lower <= r.upper);
  REQUIRE(r.witness);
  CHECK(distortion(*r.witness) / 2 == r.upper);
}

TEST_CASE("lower bounds") {
  auto x = share(circle_space(8));
  CHECK(gh_lower_bounds(*x, *x) == 0.0);
  CHECK(std::abs(gh_lower_bounds(*x, FiniteMetricSpace::from_rows({{0.0}})) - kPi / 2) < 1e-12);

  const double lb = gh_lower_bounds(circle_space(64), sample_graph(build_E(), kPi / 32).metric);
  CHECK(lb > 0.0);
  CHECK(lb <= kPi / 4 + 1e-9);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    auto a = random_space(rng, 5);
    auto b = random_space(rng, 5);
    Correspondence r(a, b, random_pairs(rng, a->size(), b->size()));
    CHECK(distortion(r) >= 2 * gh_lower_bounds(*a, *b) - 1e-12);
    if (a->size() * b->size() <= 16) CHECK(gh_lower_bounds(*a, *b) <= oracle::brute_force_gh(*a, *b) + 1e-12);
  }
}

TEST_CASE("glue") {
  auto x = share(circle_space(6));
  GluedSpace z = glue(Correspondence::identity(x, x), 0.01);
  CHECK(check_glued(z).empty());
  for (std::size_t i = 0; i < 6; ++i) CHECK(z.metric(z.left_index(i), z.right_index(i)) == 0.01);
  CHECK(z.parts_hausdorff() == 0.01);
  CHECK_THROWS_AS(glue(Correspondence::identity(x, x), 0.0), DomainError);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    auto a = random_space(rng, 6);
    auto b = random_space(rng, 6);
    Correspondence r(a, b, random_pairs(rng, a->size(), b->size()));
    GluedSpace g = glue(r, 1e-6);
    CHECK(check_glued(g).empty());
    CHECK(g.parts_hausdorff() <= distortion(r) / 2 + 1e-6 + 1e-12);
    // Restrictions are bitwise equal.
    for (std::size_t i = 0; i < a->size(); ++i) {
      for (std::size_t j = 0; j < a->size(); ++j) CHECK(g.metric(i, j) == (*a)(i, j));
    }
    // Cross distances follow the bridge formula.
    const double dis = distortion(r);
    for (std::size_t i = 0; i < a->size(); ++i) {
      for (std::size_t j = 0; j < b->size(); ++j) {
        double best = INFINITY;
        for (auto [p, q] : r.pairs()) best = std::min(best, (*a)(i, p) + dis / 2 + 1e-6 + (*b)(q, j));
        CHECK(std::abs(g.metric(g.left_index(i), g.right_index(j)) - best) < 1e-12);
      }
    }
  }
}

TEST_CASE("glue of the phi correspondence") {
  SampledCorrespondence s = phi_graph(256);
  GluedSpace z = glue(s.relation, 1e-6);
  CHECK(check_glued(z).empty());
  CHECK(z.parts_hausdorff() <= kPi / 4 + 1e-6 + 1e-9);
}

TEST_CASE("max product") {
  auto x = oracle::random_path_metric(1, 4);
  auto point = FiniteMetricSpace::from_rows({{0.0}});
  CHECK(max_product(x, point).data() == x.data());

  const double a = 3.0, b = 1.0;
  auto p = max_product(FiniteMetricSpace::from_rows({{0, a}, {a, 0}}), FiniteMetricSpace::from_rows({{0, b}, {b, 0}}));
  CHECK(p(0, 1) == b);
  CHECK(p(0, 2) == a);
  CHECK(p(0, 3) == a);
  CHECK(diameter(p) == a);

  for (std::uint64_t s = 0; s < 20; ++s) {
    CHECK(validate_metric(max_product(oracle::random_path_metric(s, 3), oracle::random_path_metric(s + 100, 2))).ok());
  }
}

TEST_CASE("lift correspondence") {
  auto x = share(circle_space(8));
  auto y = share(sample_graph(build_tripod(1, 2, 0.5), 0.5).metric);
  Correspondence r = exact_gh(share(circle_space(4)), share(circle_space(4))).witness.value();
  CHECK(distortion(lift_correspondence(r, FiniteMetricSpace::from_rows({{0.0}}))) == distortion(r));

  SampledCorrespondence s = phi_graph(64);
  auto z = FiniteMetricSpace::from_rows({{0, kPi / 2}, {kPi / 2, 0}});
  CHECK(distortion(lift_correspondence(s.relation, z)) <= kPi / 2 + 1e-9);

  Correspondence tight = Correspondence::identity(two_point(1.0), two_point(1.5));
  CHECK_THROWS_AS(lift_correspondence(tight, FiniteMetricSpace::from_rows({{0, 1}, {1, 0}})), PreconditionError);

  std::mt19937_64 rng(3);
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    auto a = random_space(rng, 4);
    auto b = random_space(rng, 4);
    Correspondence rel(a, b, random_pairs(rng, a->size(), b->size()));
    const double dis = distortion(rel);
    auto zspace = oracle::random_path_metric(rng(), 1 + rng() % 3);
    const double diam = diameter(zspace);
    std::vector<double> d = zspace.data();
    if (diam > 0) {
      for (double& v : d) v *= dis / diam;
    }
    if (distortion(lift_correspondence(rel, FiniteMetricSpace(zspace.labels(), d))) > dis + 1e-9) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("star4 embedding") {
  CHECK_THROWS_AS(star4_embedding(6), DomainError);
  GluedSpace z = star4_embedding(64);
  CHECK(validate_metric(z.metric).ok());
  CHECK(check_glued(z).empty());

  // Star part labels come from the sampled star: the spoke tips are vertices 1..4.
  auto star = sample_graph(build_star4(), 2 * kPi / 64);
  for (std::size_t spoke = 0; spoke < 4; ++spoke) {
    const std::size_t tip = *star.index_of(star.graph.vertex_point(spoke + 1));
    for (std::size_t k = spoke * 16 + 1; k < (spoke + 1) * 16; ++k) {
      CHECK(std::abs(z.metric(z.left_index(k), z.right_index(tip)) - kPi / 4) < 1e-12);
    }
  }
  const std::size_t centre = *star.index_of(star.graph.vertex_point(0));
  for (std::size_t k = 0; k < 64; ++k) {
    CHECK(std::abs(z.metric(z.left_index(k), z.right_index(centre)) - kPi / 2) < 1e-12);
  }
  CHECK(std::abs(point_to_set(z.left_part(), z.right_index(centre)) - kPi / 2) < 1e-12);
}
