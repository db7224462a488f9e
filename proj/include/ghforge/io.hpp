#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghforge/gh.hpp"
#include "ghforge/graph.hpp"
#include "ghforge/topology.hpp"

namespace ghforge::io {

using nlohmann::json;

// Metric space document: {"labels": [...], "dist": [[...], ...]}. Reading
// validates the metric axioms (DomainError on failure).
json to_json(const FiniteMetricSpace& m);
FiniteMetricSpace metric_from_json(const json& j);

// Graph document: {"vertices": [...], "edges": [{"u": .., "v": .., "len": ..}]}.
// Endpoints may be vertex names or indices.
json to_json(const MetricGraph& g);
MetricGraph graph_from_json(const json& j);

// Point: {"edge": e, "offset": t}, or {"vertex": v} on input.
json to_json(const MetricGraph& g, const PointOnGraph& p);
PointOnGraph point_from_json(const MetricGraph& g, const json& j);

// A sampled graph is a metric space document with extra "graph" and
// "points" members.
json to_json(const GeodesicTable& t);
GeodesicTable table_from_json(const json& j);
bool has_graph(const json& j);

// Correspondence document: {"pairs": [[i, j], ...]}.
json pairs_to_json(const std::vector<IndexPair>& pairs);
std::vector<IndexPair> pairs_from_json(const json& j);

// Loop document: {"points": [...]}.
json to_json(const MetricGraph& g, const LoopPath& loop);
LoopPath loop_from_json(const MetricGraph& g, const json& j);

// Glued document: {"left": space, "right": space, "pairs": [...], "eta": .., "metric": space}.
// The parts keep their "graph"/"points" members when present.
json glued_to_json(const GluedSpace& z, const json& left_doc, const json& right_doc);
GluedSpace glued_from_json(const json& j);

json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j);

/// Shortest text that parses back to the same double (JSON number syntax).
std::string format_number(double v);

}  // namespace ghforge::io
