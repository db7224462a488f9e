#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ghforge/errors.hpp"
#include "ghforge/graph.hpp"
#include "ghforge/oracle.hpp"

using namespace ghforge;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<PointOnGraph> vertices_of(const MetricGraph& g) {
  std::vector<PointOnGraph> pts;
  for (VertexId v = 0; v < g.vertex_count(); ++v) pts.push_back(g.vertex_point(v));
  return pts;
}

PointOnGraph random_point(const MetricGraph& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> edge(0, g.edge_count() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EdgeId e = edge(rng);
  return g.point(e, unit(rng) * g.edge(e).length);
}

// Random tree: vertex i > 0 hangs off a random earlier vertex.
MetricGraph random_tree(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> len(0.1, 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("v" + std::to_string(i));
    if (i > 0) edges.push_back({rng() % i, i, len(rng)});
  }
  return MetricGraph(names, edges);
}

}  // namespace

TEST_CASE("single edge distance") {
  auto g = build_segment(2.5);
  auto t = graph_metric(g, vertices_of(g));
  CHECK(t.metric(0, 1) == 2.5);
}

TEST_CASE("antipodal vertices of the 8-edge circle") {
  auto g = build_circle_graph(8, 2 * kPi);
  CHECK(std::abs(g.vertex_distance(0, 4) - kPi) < 1e-12);
}

TEST_CASE("tripod E: branch tip to x-") {
  auto e = build_E();
  auto pts = std::vector<PointOnGraph>{e.vertex_point(tripod_e::kBranchTip), e.vertex_point(tripod_e::kMinus)};
  auto t = graph_metric(e, pts);
  CHECK(std::abs(t.metric(0, 1) - 3 * kPi / 4) < 1e-12);
  auto oracle = oracle::subdivided_distances(e, pts, kPi / 400);
  CHECK(std::abs(oracle[0][1] - t.metric(0, 1)) < 1e-9);
}

TEST_CASE("graph_metric rejects disconnected graphs and duplicate points") {
  MetricGraph two({"a", "b", "c"}, {{0, 1, 1.0}});
  CHECK_FALSE(two.connected());
  CHECK_THROWS_AS(graph_metric(two, vertices_of(two)), DomainError);
  auto g = build_segment(1.0);
  CHECK_THROWS(graph_metric(g, {g.vertex_point(0), g.point(0, 0.0)}));
}

TEST_CASE("graph construction errors") {
  CHECK_THROWS_AS(build_segment(0.0), DomainError);
  CHECK_THROWS_AS(build_segment(-1.0), DomainError);
  CHECK_THROWS_AS(build_tripod(1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(MetricGraph({"a", "a"}, {}), StructuralError);
  CHECK_THROWS_AS(MetricGraph({"a", "b"}, {{0, 2, 1.0}}), StructuralError);
}

TEST_CASE("endpoint offsets collapse to vertices") {
  auto g = build_segment(1.0);
  CHECK(g.point(0, 0.0) == g.vertex_point(0));
  CHECK(g.point(0, 1.0) == g.vertex_point(1));
  CHECK_FALSE(g.point(0, 0.5).is_vertex());
  CHECK_THROWS(g.point(0, 1.5));
}

TEST_CASE("epsilon net examples") {
  auto seg = build_segment(1.0);
  auto net = epsilon_net(seg, 0.5);
  CHECK(net.size() >= 3);
  CHECK(net[0] == seg.vertex_point(0));
  CHECK(net[1] == seg.vertex_point(1));

  CHECK(validate_metric(sample_graph(build_E(), kPi / 16).metric).ok());

  const double eps = kPi / 1024;
  auto circle_netted = epsilon_net(build_circle_graph(), eps);
  CHECK(circle_netted.size() >= 2 * kPi / eps - 1e-9);
  CHECK(circle_netted.size() <= 2 * kPi / eps + 8);
}

TEST_CASE("epsilon net covers random points") {
  std::mt19937_64 rng(5);
  for (const auto& g : {build_E(), build_figure_eight(), build_tripod(0.7, 0.2, 1.9)}) {
    const double eps = 0.13;
    auto net = epsilon_net(g, eps);
    for (int t = 0; t < 100; ++t) {
      auto p = random_point(g, rng);
      double best = INFINITY;
      for (const auto& q : net) best = std::min(best, g.distance(p, q));
      CHECK(best <= eps + 1e-12);
    }
  }
}

TEST_CASE("circle_space") {
  CHECK_THROWS_AS(circle_space(2), DomainError);
  auto c4 = circle_space(4);
  CHECK(c4(0, 1) == doctest::Approx(kPi / 2));
  CHECK(c4(0, 2) == doctest::Approx(kPi));

  auto g = build_circle_graph(8, 2 * kPi);
  auto t = graph_metric(g, vertices_of(g));
  auto c8 = circle_space(8);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(t.metric(i, j) - c8(i, j)) <= 1e-12);
  }
}

TEST_CASE("circle graph net agrees with the angle formula") {
  auto g = build_circle_graph(8, 2 * kPi);
  auto t = sample_graph(g, 0.05);
  std::vector<double> angle;
  for (const auto& p : t.points) {
    auto [e, off] = g.edge_form(p);
    angle.push_back(e * kPi / 4 + off);
  }
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    for (std::size_t j = 0; j < t.points.size(); ++j) {
      double d = std::abs(angle[i] - angle[j]);
      d = std::min(d, 2 * kPi - d);
      CHECK(std::abs(t.metric(i, j) - d) < 1e-9);
    }
  }
}

TEST_CASE("vertex distances match a subdivided copy") {
  for (const auto& g : {build_E_prime(), build_figure_eight(3, 5.0), build_circle_graph(5, 3.0)}) {
    const double eps = 0.2;
    auto pts = vertices_of(g);
    auto t = graph_metric(g, pts);
    auto oracle = oracle::subdivided_distances(g, pts, eps / 4);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) CHECK(std::abs(t.metric(i, j) - oracle[i][j]) < 1e-9);
    }
  }
}

TEST_CASE("interior point distances match a subdivided copy") {
  std::mt19937_64 rng(9);
  auto g = build_figure_eight(3, 4.0);
  std::vector<PointOnGraph> pts;
  while (pts.size() < 12) {
    auto p = random_point(g, rng);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  auto t = graph_metric(g, pts);
  auto oracle = oracle::subdivided_distances(g, pts, 0.05);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) CHECK(std::abs(t.metric(i, j) - oracle[i][j]) < 1e-9);
  }
}

TEST_CASE("named spaces") {
  auto e = build_E();
  CHECK(std::abs(e.total_length() - 5 * kPi / 4) < 1e-12);
  CHECK(e.vertex_names()[tripod_e::kCentre] == "x0");
  CHECK(std::abs(build_E_prime().total_length() - 3 * kPi / 2) < 1e-12);
  CHECK(std::abs(diameter(sample_graph(build_tripod(3.0, 2.0, 1.0), 0.25).metric) - 5.0) < 1e-12);
  CHECK(std::abs(diameter(graph_metric(build_star4(), vertices_of(build_star4())).metric) - kPi / 2) < 1e-12);

  for (const auto& g : {build_E(), build_E_prime(), build_star4(), build_tripod(1, 2, 3), build_segment(1)}) {
    CHECK(g.is_tree());
    CHECK(g.cycle_rank() == 0);
    CHECK(std::isinf(g.girth()));
  }
  auto c = build_circle_graph();
  CHECK_FALSE(c.is_tree());
  CHECK(c.cycle_rank() == 1);
  CHECK(std::abs(c.girth() - 2 * kPi) < 1e-12);
  CHECK(build_figure_eight().cycle_rank() == 2);
}

TEST_CASE("projection to the spine") {
  auto e = build_E();
  auto spine = std::make_pair(e.vertex_point(tripod_e::kMinus), e.vertex_point(tripod_e::kPlus));
  auto on = e.point(1, 0.3);
  CHECK(project_to_spine(e, on, spine) == on);
  auto tip = e.vertex_point(tripod_e::kBranchTip);
  auto proj = project_to_spine(e, tip, spine);
  CHECK(proj == e.vertex_point(tripod_e::kCentre));
  CHECK(std::abs(e.distance(tip, proj) - kPi / 4) < 1e-12);
  CHECK_THROWS_AS(project_to_spine(build_circle_graph(), build_circle_graph().vertex_point(0),
                                   {build_circle_graph().vertex_point(1), build_circle_graph().vertex_point(2)}),
                  DomainError);
}

TEST_CASE("projection identity on random trees") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    auto g = random_tree(rng, 3 + rng() % 8);
    auto a = random_point(g, rng);
    auto b = random_point(g, rng);
    if (a == b) continue;
    auto x = random_point(g, rng);
    auto y = random_point(g, rng);
    auto px = project_to_spine(g, x, {a, b});
    auto py = project_to_spine(g, y, {a, b});
    if (g.distance(px, py) < 1e-9) continue;
    auto table = oracle::subdivided_distances(g, {x, y}, 0.01);
    const double sum = g.distance(x, px) + g.distance(px, py) + g.distance(py, y);
    CHECK(std::abs(sum - table[0][1]) < 1e-9);
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("geodesics") {
  auto c = build_circle_graph(4, 4.0);
  auto p = c.point(0, 0.25);
  auto q = c.point(2, 0.5);
  auto path = c.geodesic(p, q);
  double total = 0.0;
  for (const auto& m : path) total += m.length();
  CHECK(std::abs(total - c.distance(p, q)) < 1e-12);
  CHECK(c.geodesic(p, p).empty());
  auto mid = c.along_geodesic(p, q, c.distance(p, q) / 2);
  CHECK(std::abs(c.distance(p, mid) - c.distance(p, q) / 2) < 1e-12);
  CHECK(std::abs(c.distance(mid, q) - c.distance(p, q) / 2) < 1e-12);
}

TEST_CASE("table lookup") {
  auto t = sample_graph(build_E(), kPi / 16);
  CHECK(t.contains_all_vertices());
  for (std::size_t i = 0; i < t.points.size(); ++i) CHECK(t.index_of(t.points[i]) == i);
  CHECK_FALSE(t.index_of(t.graph.point(0, 0.01)).has_value());
}
