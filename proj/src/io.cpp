#include "ghforge/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ghforge/errors.hpp"

namespace ghforge::io {
namespace {

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw StructuralError(std::string("missing member \"") + key + "\"");
  }
  return j.at(key);
}

std::size_t as_index(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw StructuralError(std::string(what) + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

VertexId resolve_vertex(const MetricGraph& g, const json& j) {
  if (j.is_string()) {
    auto v = g.find_vertex(j.get<std::string>());
    if (!v) throw StructuralError("unknown vertex \"" + j.get<std::string>() + "\"");
    return *v;
  }
  VertexId v = as_index(j, "vertex");
  if (v >= g.vertex_count()) throw StructuralError("vertex index out of range");
  return v;
}

}  // namespace

json to_json(const FiniteMetricSpace& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return json{{"labels", m.labels()}, {"dist", rows}};
}

FiniteMetricSpace metric_from_json(const json& j) {
  const json& rows = member(j, "dist");
  if (!rows.is_array()) throw StructuralError("\"dist\" must be an array of rows");
  std::vector<std::vector<double>> values;
  for (const auto& row : rows) {
    if (!row.is_array()) throw StructuralError("\"dist\" rows must be arrays");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw StructuralError("distances must be numbers");
      r.push_back(x.get<double>());
    }
    values.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) labels.push_back(std::to_string(i));
  }
  auto m = FiniteMetricSpace::from_rows(std::move(labels), values);
  require_metric(m, "metric document");
  return m;
}

json to_json(const MetricGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"u", g.vertex_names()[e.u]}, {"v", g.vertex_names()[e.v]}, {"len", e.length}});
  }
  return json{{"vertices", g.vertex_names()}, {"edges", edges}};
}

MetricGraph graph_from_json(const json& j) {
  auto names = member(j, "vertices").get<std::vector<std::string>>();
  // Resolve names against a graph with no edges first.
  MetricGraph bare(names, {});
  std::vector<Edge> edges;
  for (const auto& e : member(j, "edges")) {
    edges.push_back({resolve_vertex(bare, member(e, "u")), resolve_vertex(bare, member(e, "v")),
                     member(e, "len").get<double>()});
  }
  return MetricGraph(std::move(names), std::move(edges));
}

json to_json(const MetricGraph& g, const PointOnGraph& p) {
  auto [e, offset] = g.edge_form(p);
  return json{{"edge", e}, {"offset", offset}};
}

PointOnGraph point_from_json(const MetricGraph& g, const json& j) {
  if (j.is_object() && j.contains("vertex")) return g.vertex_point(resolve_vertex(g, j.at("vertex")));
  EdgeId e = as_index(member(j, "edge"), "edge");
  if (e >= g.edge_count()) throw StructuralError("edge index out of range");
  return g.point(e, member(j, "offset").get<double>());
}

json to_json(const GeodesicTable& t) {
  json doc = to_json(t.metric);
  doc["graph"] = to_json(t.graph);
  json points = json::array();
  for (const auto& p : t.points) points.push_back(to_json(t.graph, p));
  doc["points"] = points;
  return doc;
}

GeodesicTable table_from_json(const json& j) {
  MetricGraph g = graph_from_json(member(j, "graph"));
  std::vector<PointOnGraph> points;
  for (const auto& p : member(j, "points")) points.push_back(point_from_json(g, p));
  return graph_metric(g, std::move(points));
}

bool has_graph(const json& j) { return j.is_object() && j.contains("graph") && j.contains("points"); }

json pairs_to_json(const std::vector<IndexPair>& pairs) {
  json out = json::array();
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return json{{"pairs", out}};
}

std::vector<IndexPair> pairs_from_json(const json& j) {
  std::vector<IndexPair> pairs;
  for (const auto& p : member(j, "pairs")) {
    if (!p.is_array() || p.size() != 2) throw StructuralError("pairs must be [i, j] arrays");
    pairs.emplace_back(as_index(p[0], "pair"), as_index(p[1], "pair"));
  }
  return pairs;
}

json to_json(const MetricGraph& g, const LoopPath& loop) {
  json points = json::array();
  for (const auto& p : loop.points) points.push_back(to_json(g, p));
  return json{{"points", points}};
}

LoopPath loop_from_json(const MetricGraph& g, const json& j) {
  std::vector<PointOnGraph> points;
  for (const auto& p : member(j, "points")) points.push_back(point_from_json(g, p));
  if (points.empty()) throw StructuralError("loop must have at least one point");
  return LoopPath::close(g, std::move(points));
}

json glued_to_json(const GluedSpace& z, const json& left_doc, const json& right_doc) {
  json doc = pairs_to_json(z.bridge);
  doc["left"] = left_doc;
  doc["right"] = right_doc;
  doc["eta"] = z.eta;
  doc["bridge_offset"] = z.bridge_offset;
  doc["metric"] = to_json(z.metric);
  return doc;
}

GluedSpace glued_from_json(const json& j) {
  GluedSpace z{metric_from_json(member(j, "left")),
               metric_from_json(member(j, "right")),
               pairs_from_json(j),
               member(j, "eta").get<double>(),
               member(j, "bridge_offset").get<double>(),
               metric_from_json(member(j, "metric"))};
  if (z.metric.size() != z.left.size() + z.right.size()) {
    throw StructuralError("glued metric size does not match its parts");
  }
  return z;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json(v).dump();
}

}  // namespace ghforge::io
