#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "ghforge/constructions.hpp"
#include "ghforge/errors.hpp"
#include "ghforge/io.hpp"
#include "ghforge/report.hpp"

using namespace ghforge;
using nlohmann::json;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

double parse_number(const json& j) {
  if (j.is_string()) return std::strtod(j.get<std::string>().c_str(), nullptr);
  return j.get<double>();
}

}  // namespace

TEST_CASE("metric documents round trip and validate") {
  auto m = circle_space(6);
  auto back = io::metric_from_json(io::to_json(m));
  CHECK(back == m);
  json bad = {{"dist", {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}}};
  CHECK_THROWS_AS(io::metric_from_json(bad), DomainError);
  CHECK_THROWS_AS(io::metric_from_json(json{{"labels", {"a"}}}), StructuralError);
  CHECK_THROWS_AS(io::metric_from_json(json{{"dist", {{0, 1}, {1}}}}), StructuralError);
  CHECK(io::metric_from_json(json{{"dist", {{0, 2}, {2, 0}}}}).labels()[1] == "1");
}

TEST_CASE("graph documents accept names or indices") {
  json doc = {{"vertices", {"a", "b", "c"}},
              {"edges", {{{"u", "a"}, {"v", "b"}, {"len", 1.5}}, {{"u", 1}, {"v", 2}, {"len", 0.5}}}}};
  MetricGraph g = io::graph_from_json(doc);
  CHECK(g.vertex_distance(0, 2) == 2.0);
  MetricGraph again = io::graph_from_json(io::to_json(g));
  CHECK(again.edges().size() == 2);
  CHECK(again.edge(1).u == 1);
  doc["edges"][0]["u"] = "zz";
  CHECK_THROWS_AS(io::graph_from_json(doc), StructuralError);
}

TEST_CASE("sampled graph documents") {
  auto t = sample_graph(build_E(), kPi / 8);
  json doc = io::to_json(t);
  CHECK(io::has_graph(doc));
  CHECK_FALSE(io::has_graph(io::to_json(t.metric)));
  auto back = io::table_from_json(json::parse(doc.dump()));
  CHECK(back.points == t.points);
  CHECK(back.metric.data() == t.metric.data());
}

TEST_CASE("points, pairs and loops") {
  auto g = build_circle_graph();
  CHECK(io::point_from_json(g, json{{"vertex", "c3"}}) == g.vertex_point(3));
  CHECK(io::point_from_json(g, json{{"edge", 2}, {"offset", 0.0}}) == g.vertex_point(2));
  CHECK_THROWS(io::point_from_json(g, json{{"edge", 99}, {"offset", 0.0}}));

  std::vector<IndexPair> pairs{{0, 1}, {2, 0}};
  CHECK(io::pairs_from_json(io::pairs_to_json(pairs)) == pairs);
  CHECK_THROWS_AS(io::pairs_from_json(json{{"pairs", {{1, 2, 3}}}}), StructuralError);
  CHECK_THROWS_AS(io::pairs_from_json(json{{"pairs", {{-1, 2}}}}), StructuralError);

  auto loop = LoopPath::close(g, {g.vertex_point(0), g.point(1, 0.3), g.vertex_point(4)});
  auto back = io::loop_from_json(g, io::to_json(g, loop));
  CHECK(back.points == loop.points);
  CHECK_THROWS_AS(io::loop_from_json(g, json{{"points", json::array()}}), StructuralError);
}

TEST_CASE("glued documents") {
  auto x = share(circle_space(8));
  auto y = share(circle_space(8));
  GluedSpace z = glue(Correspondence::identity(x, y), 1e-3);
  json doc = io::glued_to_json(z, io::to_json(*x), io::to_json(*y));
  GluedSpace back = io::glued_from_json(json::parse(doc.dump()));
  CHECK(back.metric == z.metric);
  CHECK(back.bridge == z.bridge);
  CHECK(back.eta == z.eta);
}

TEST_CASE("files") {
  auto path = std::filesystem::temp_directory_path() / "ghforge_io_test.json";
  io::write_file(path, io::to_json(circle_space(4)));
  CHECK(io::metric_from_json(io::read_file(path)) == circle_space(4));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_file(path), StructuralError);
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.0, 1.0, kPi, 1e-9, -2.5e300, 0.1 + 0.2, std::nextafter(1.0, 2.0)}) {
    const std::string s = io::format_number(v);
    CHECK(std::bit_cast<std::uint64_t>(std::strtod(s.c_str(), nullptr)) == std::bit_cast<std::uint64_t>(v));
  }
  CHECK(io::format_number(INFINITY) == "inf");
}

TEST_CASE("rows pass only inside their interval") {
  CHECK(make_row("a", "", 1.0, 0.0, 1.0).pass);
  CHECK_FALSE(make_row("a", "", 1.0 + 1e-15, 0.0, 1.0).pass);
  CHECK_FALSE(make_row("a", "", 0.0, 0.0, 1.0, true).pass);
  CHECK(make_row("a", "", 1e-300, 0.0, 1.0, true).pass);
}

TEST_CASE("coarse report") {
  ReproduceOptions options;
  options.n = 8;
  options.eps = kPi / 16;
  auto rows = reproduce_report(options);
  REQUIRE(rows.size() >= 9);
  for (const auto& r : rows) {
    CAPTURE(r.claim);
    CHECK(r.pass);
    if (r.claim == "phi_distortion") {
      CHECK(r.value <= kPi / 2 + 1e-9);
      CHECK(r.lower < kPi / 2 - 0.02);
    }
  }
}

TEST_CASE("csv and json reports carry identical values") {
  ReproduceOptions options;
  options.n = 64;
  auto rows = reproduce_report(options);
  std::istringstream csv(rows_to_csv(rows));
  json doc = json::parse(rows_to_json(rows));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "claim,anchor,value,lower,upper,lower_open,pass");
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    auto f = split_csv_line(line);
    REQUIRE(f.size() == 7);
    const json& row = doc.at(i++);
    CHECK(f[0] == row["claim"].get<std::string>());
    CHECK(f[1] == row["anchor"].get<std::string>());
    for (auto [col, key] : {std::pair{2, "value"}, std::pair{3, "lower"}, std::pair{4, "upper"}}) {
      const double from_csv = std::strtod(f[col].c_str(), nullptr);
      CHECK(std::bit_cast<std::uint64_t>(from_csv) == std::bit_cast<std::uint64_t>(parse_number(row[key])));
    }
    CHECK((f[6] == "true") == row["pass"].get<bool>());
  }
  CHECK(i == doc.size());
  CHECK(reproduce_report(options).size() == rows.size());
  CHECK(rows_to_csv(reproduce_report(options)) == rows_to_csv(rows));
}
