#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghforge/metric_space.hpp"

namespace ghforge {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double length = 0.0;
};

/// A point of a metric graph: either a vertex or an interior point of an edge
/// at `offset` from the edge's `u` end. Use MetricGraph::point() to build
/// canonical points (endpoint offsets collapse to the vertex).
class PointOnGraph {
 public:
  PointOnGraph() : PointOnGraph(true, 0, 0.0) {}
  static PointOnGraph at_vertex(VertexId v) { return PointOnGraph(true, v, 0.0); }
  static PointOnGraph interior(EdgeId e, double offset) { return PointOnGraph(false, e, offset); }

  bool is_vertex() const { return vertex_; }
  VertexId vertex() const { return index_; }
  EdgeId edge() const { return index_; }
  double offset() const { return offset_; }

  // Vertices order before interior points; interior points by (edge, offset).
  friend std::partial_ordering operator<=>(const PointOnGraph& a, const PointOnGraph& b) {
    if (auto c = b.vertex_ <=> a.vertex_; c != 0) return c;
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    return a.offset_ <=> b.offset_;
  }
  friend bool operator==(const PointOnGraph& a, const PointOnGraph& b) {
    return a.vertex_ == b.vertex_ && a.index_ == b.index_ && a.offset_ == b.offset_;
  }

 private:
  PointOnGraph(bool vertex, std::size_t index, double offset)
      : vertex_(vertex), index_(index), offset_(offset) {}

  bool vertex_;
  std::size_t index_;
  double offset_;
};

/// One monotone piece of a path: along `edge` from offset `from` to offset `to`.
struct EdgeMove {
  EdgeId edge;
  double from;
  double to;
  double length() const { return from < to ? to - from : from - to; }
};

/// Finite metric graph with its intrinsic (shortest-path) metric.
///
/// Vertex-to-vertex distances and shortest-path trees are computed once at
/// construction; the graph is immutable afterwards. Parallel edges and loops
/// are allowed. Disconnected graphs can be built but are rejected by the
/// metric operations.
class MetricGraph {
 public:
  MetricGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::optional<VertexId> find_vertex(const std::string& name) const;
  const std::vector<EdgeId>& incident(VertexId v) const { return incident_.at(v); }

  double total_length() const;
  bool connected() const { return components_ == 1; }
  std::size_t component_count() const { return components_; }
  /// Independent cycles: |E| - |V| + components.
  std::size_t cycle_rank() const;
  bool is_tree() const { return connected() && cycle_rank() == 0; }
  /// Length of the shortest cycle; +inf for forests.
  double girth() const { return girth_; }

  double vertex_distance(VertexId a, VertexId b) const { return vdist_[a * vertex_count() + b]; }
  /// Edges of a shortest path between two vertices, from `a` to `b`.
  std::vector<EdgeId> vertex_path(VertexId a, VertexId b) const;

  /// Canonical point; offsets within tolerance of an endpoint become that vertex.
  PointOnGraph point(EdgeId e, double offset) const;
  PointOnGraph vertex_point(VertexId v) const;
  void check(const PointOnGraph& p) const;
  /// (edge, offset) form of a point; vertices use their first incident edge.
  std::pair<EdgeId, double> edge_form(const PointOnGraph& p) const;

  double distance(const PointOnGraph& p, const PointOnGraph& q) const;
  /// A shortest path from p to q as monotone edge moves (empty when p == q).
  std::vector<EdgeMove> geodesic(const PointOnGraph& p, const PointOnGraph& q) const;
  /// The point at arc length `t` along the geodesic from p to q.
  PointOnGraph along_geodesic(const PointOnGraph& p, const PointOnGraph& q, double t) const;

  std::string describe(const PointOnGraph& p) const;

 private:
  void compute_shortest_paths();
  void compute_girth();
  void require_connected(const char* what) const;

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<double> vdist_;
  std::vector<EdgeId> pred_edge_;  // pred_edge_[src * V + v]: last edge on the path src -> v
  std::size_t components_ = 0;
  double girth_ = 0.0;
};

/// Sample points of a graph together with their pairwise intrinsic distances.
struct GeodesicTable {
  MetricGraph graph;
  std::vector<PointOnGraph> points;
  FiniteMetricSpace metric;

  std::optional<std::size_t> index_of(const PointOnGraph& p) const;
  bool contains_all_vertices() const;
};

/// Pairwise intrinsic distances between distinct points of a connected graph.
GeodesicTable graph_metric(const MetricGraph& g, std::vector<PointOnGraph> points);

/// All vertices, then ceil(len / eps) - 1 equally spaced interior points per
/// edge, ordered by (edge, offset).
std::vector<PointOnGraph> epsilon_net(const MetricGraph& g, double eps);

/// graph_metric(g, epsilon_net(g, eps)).
GeodesicTable sample_graph(const MetricGraph& g, double eps);

/// n equally spaced points on the unit circle with the angular metric.
FiniteMetricSpace circle_space(std::size_t n);

/// Nearest point of the geodesic segment [spine.first, spine.second] of a tree.
PointOnGraph project_to_spine(const MetricGraph& g, const PointOnGraph& x,
                              const std::pair<PointOnGraph, PointOnGraph>& spine);

// Named spaces. Edge lengths must be positive.

/// The tripod E: spine x- - m- - x0 - m+ - x+ (four edges of pi/4) and branch x0 - x1 (pi/4).
MetricGraph build_E();
/// E with a second pi/4 edge appended at the branch tip x1 (branch length pi/2).
MetricGraph build_E_prime();
/// Centre vertex with four spokes of length pi/4.
MetricGraph build_star4();
MetricGraph build_tripod(double l1, double l2, double l3);
MetricGraph build_segment(double length);
/// Cycle of `edges` equal edges with the given total length.
MetricGraph build_circle_graph(std::size_t edges = 8, double total_length = 6.283185307179586);
/// Two cycles sharing one vertex, each split into `edges_per_loop` edges.
MetricGraph build_figure_eight(std::size_t edges_per_loop = 4, double loop_length = 6.283185307179586);

// Vertex ids inside build_E() / build_E_prime().
namespace tripod_e {
inline constexpr VertexId kMinus = 0;       // x-
inline constexpr VertexId kMinusMid = 1;    // m-
inline constexpr VertexId kCentre = 2;      // x0
inline constexpr VertexId kPlusMid = 3;     // m+
inline constexpr VertexId kPlus = 4;        // x+
inline constexpr VertexId kBranchTip = 5;   // x1
inline constexpr VertexId kExtendedTip = 6; // only in build_E_prime()
inline constexpr EdgeId kBranchEdge = 4;
inline constexpr EdgeId kExtensionEdge = 5;
}  // namespace tripod_e

}  // namespace ghforge
