#include "ghforge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "ghforge/errors.hpp"
#include "ghforge/parallel.hpp"

namespace ghforge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double endpoint_tolerance(double length) { return 1e-12 * std::max(1.0, length); }

VertexId other_end(const Edge& e, VertexId v) { return e.u == v ? e.v : e.u; }

// Single-source Dijkstra on the vertex graph, optionally ignoring one edge.
void dijkstra(const MetricGraph& g, VertexId src, std::optional<EdgeId> skip,
              std::vector<double>& dist, std::vector<EdgeId>* pred) {
  const std::size_t nv = g.vertex_count();
  dist.assign(nv, kInf);
  if (pred) pred->assign(nv, std::numeric_limits<EdgeId>::max());
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[src] = 0.0;
  queue.emplace(0.0, src);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (EdgeId e : g.incident(v)) {
      if (skip && *skip == e) continue;
      const Edge& edge = g.edge(e);
      VertexId w = other_end(edge, v);
      double nd = d + edge.length;
      if (nd < dist[w]) {
        dist[w] = nd;
        if (pred) (*pred)[w] = e;
        queue.emplace(nd, w);
      }
    }
  }
}

// A point seen from one vertex: the vertex, the remaining distance to it and
// the move that gets there.
struct Anchor {
  VertexId vertex;
  double dist;
  std::optional<EdgeMove> move;
};

std::vector<Anchor> anchors(const MetricGraph& g, const PointOnGraph& p) {
  if (p.is_vertex()) return {{p.vertex(), 0.0, std::nullopt}};
  const Edge& e = g.edge(p.edge());
  return {{e.u, p.offset(), EdgeMove{p.edge(), p.offset(), 0.0}},
          {e.v, e.length - p.offset(), EdgeMove{p.edge(), p.offset(), e.length}}};
}

EdgeMove reversed(const EdgeMove& m) { return {m.edge, m.to, m.from}; }

}  // namespace

MetricGraph::MetricGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
  if (names_.empty()) throw DomainError("graph needs at least one vertex");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw StructuralError("duplicate vertex name '" + n + "'");
  }
  incident_.resize(names_.size());
  for (EdgeId i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= names_.size() || e.v >= names_.size()) {
      throw StructuralError("edge " + std::to_string(i) + " has an endpoint out of range");
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw DomainError("edge " + std::to_string(i) + " must have positive finite length");
    }
    incident_[e.u].push_back(i);
    if (e.v != e.u) incident_[e.v].push_back(i);
  }
  compute_shortest_paths();
  compute_girth();
}

void MetricGraph::compute_shortest_paths() {
  const std::size_t nv = vertex_count();
  vdist_.assign(nv * nv, kInf);
  pred_edge_.assign(nv * nv, std::numeric_limits<EdgeId>::max());
  std::vector<double> dist;
  std::vector<EdgeId> pred;
  for (VertexId s = 0; s < nv; ++s) {
    dijkstra(*this, s, std::nullopt, dist, &pred);
    std::copy(dist.begin(), dist.end(), vdist_.begin() + s * nv);
    std::copy(pred.begin(), pred.end(), pred_edge_.begin() + s * nv);
  }
  std::vector<bool> assigned(nv, false);
  components_ = 0;
  for (VertexId s = 0; s < nv; ++s) {
    if (assigned[s]) continue;
    ++components_;
    for (VertexId v = 0; v < nv; ++v) {
      if (std::isfinite(vdist_[s * nv + v])) assigned[v] = true;
    }
  }
}

void MetricGraph::compute_girth() {
  girth_ = kInf;
  std::vector<double> dist;
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.u == edge.v) {
      girth_ = std::min(girth_, edge.length);
      continue;
    }
    dijkstra(*this, edge.u, e, dist, nullptr);
    girth_ = std::min(girth_, edge.length + dist[edge.v]);
  }
}

std::optional<VertexId> MetricGraph::find_vertex(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

double MetricGraph::total_length() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.length;
  return total;
}

std::size_t MetricGraph::cycle_rank() const {
  return edges_.size() + components_ - names_.size();
}

void MetricGraph::require_connected(const char* what) const {
  if (!connected()) throw DomainError(std::string(what) + ": graph is disconnected");
}

std::vector<EdgeId> MetricGraph::vertex_path(VertexId a, VertexId b) const {
  require_connected("vertex_path");
  std::vector<EdgeId> path;
  const std::size_t nv = vertex_count();
  VertexId cur = b;
  while (cur != a) {
    EdgeId e = pred_edge_[a * nv + cur];
    path.push_back(e);
    cur = other_end(edges_[e], cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

PointOnGraph MetricGraph::point(EdgeId e, double offset) const {
  if (e >= edges_.size()) throw StructuralError("edge index " + std::to_string(e) + " out of range");
  const Edge& edge = edges_[e];
  double tol = endpoint_tolerance(edge.length);
  if (!std::isfinite(offset) || offset < -tol || offset > edge.length + tol) {
    std::ostringstream os;
    os << "offset " << offset << " outside edge " << e << " of length " << edge.length;
    throw DomainError(os.str());
  }
  if (offset <= tol) return PointOnGraph::at_vertex(edge.u);
  if (offset >= edge.length - tol) return PointOnGraph::at_vertex(edge.v);
  return PointOnGraph::interior(e, offset);
}

PointOnGraph MetricGraph::vertex_point(VertexId v) const {
  if (v >= names_.size()) throw StructuralError("vertex index out of range");
  return PointOnGraph::at_vertex(v);
}

void MetricGraph::check(const PointOnGraph& p) const {
  if (p.is_vertex()) {
    if (p.vertex() >= names_.size()) throw StructuralError("vertex index out of range");
    return;
  }
  if (p.edge() >= edges_.size()) throw StructuralError("edge index out of range");
  if (!(p.offset() > 0.0 && p.offset() < edges_[p.edge()].length)) {
    throw DomainError("interior point offset must lie strictly inside its edge");
  }
}

std::pair<EdgeId, double> MetricGraph::edge_form(const PointOnGraph& p) const {
  if (!p.is_vertex()) return {p.edge(), p.offset()};
  const auto& inc = incident_.at(p.vertex());
  if (inc.empty()) throw DomainError("isolated vertex has no edge form");
  const Edge& e = edges_[inc.front()];
  return {inc.front(), e.u == p.vertex() ? 0.0 : e.length};
}

double MetricGraph::distance(const PointOnGraph& p, const PointOnGraph& q) const {
  require_connected("distance");
  if (p == q) return 0.0;
  double best = kInf;
  if (!p.is_vertex() && !q.is_vertex() && p.edge() == q.edge()) {
    best = std::abs(p.offset() - q.offset());
  }
  for (const auto& a : anchors(*this, p)) {
    for (const auto& b : anchors(*this, q)) {
      best = std::min(best, a.dist + vertex_distance(a.vertex, b.vertex) + b.dist);
    }
  }
  return best;
}

std::vector<EdgeMove> MetricGraph::geodesic(const PointOnGraph& p, const PointOnGraph& q) const {
  require_connected("geodesic");
  if (p == q) return {};
  double best = kInf;
  std::vector<EdgeMove> moves;
  if (!p.is_vertex() && !q.is_vertex() && p.edge() == q.edge()) {
    best = std::abs(p.offset() - q.offset());
    moves = {EdgeMove{p.edge(), p.offset(), q.offset()}};
  }
  const auto from = anchors(*this, p);
  const auto to = anchors(*this, q);
  const Anchor* best_a = nullptr;
  const Anchor* best_b = nullptr;
  for (const auto& a : from) {
    for (const auto& b : to) {
      double d = a.dist + vertex_distance(a.vertex, b.vertex) + b.dist;
      if (d < best) {
        best = d;
        best_a = &a;
        best_b = &b;
      }
    }
  }
  if (best_a == nullptr) return moves;
  moves.clear();
  if (best_a->move) moves.push_back(*best_a->move);
  VertexId cur = best_a->vertex;
  for (EdgeId e : vertex_path(best_a->vertex, best_b->vertex)) {
    const Edge& edge = edges_[e];
    if (edge.u == cur) {
      moves.push_back({e, 0.0, edge.length});
    } else {
      moves.push_back({e, edge.length, 0.0});
    }
    cur = other_end(edge, cur);
  }
  if (best_b->move) moves.push_back(reversed(*best_b->move));
  return moves;
}

PointOnGraph MetricGraph::along_geodesic(const PointOnGraph& p, const PointOnGraph& q,
                                         double t) const {
  if (t <= 0.0) return p;
  double travelled = 0.0;
  for (const auto& m : geodesic(p, q)) {
    double len = m.length();
    if (travelled + len >= t) {
      double s = t - travelled;
      double offset = m.from < m.to ? m.from + s : m.from - s;
      return point(m.edge, std::clamp(offset, 0.0, edges_[m.edge].length));
    }
    travelled += len;
  }
  return q;
}

std::string MetricGraph::describe(const PointOnGraph& p) const {
  std::ostringstream os;
  if (p.is_vertex()) {
    os << names_.at(p.vertex());
  } else {
    os.precision(12);
    os << "e" << p.edge() << "@" << p.offset();
  }
  return os.str();
}

std::optional<std::size_t> GeodesicTable::index_of(const PointOnGraph& p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it != points.end() && *it == p) return static_cast<std::size_t>(it - points.begin());
  // Tables built from unsorted input fall back to a scan.
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == p) return i;
  }
  return std::nullopt;
}

bool GeodesicTable::contains_all_vertices() const {
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (!index_of(PointOnGraph::at_vertex(v))) return false;
  }
  return true;
}

GeodesicTable graph_metric(const MetricGraph& g, std::vector<PointOnGraph> points) {
  if (!g.connected()) throw DomainError("graph_metric: graph is disconnected");
  if (points.empty()) throw DomainError("graph_metric: no sample points");
  for (const auto& p : points) g.check(p);
  {
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DomainError("graph_metric: sample points must be distinct");
    }
  }
  const std::size_t n = points.size();
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = g.describe(points[i]);
  std::vector<double> dist(n * n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) dist[i * n + j] = g.distance(points[i], points[j]);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) dist[i * n + j] = dist[j * n + i];
  }
  return {g, std::move(points), FiniteMetricSpace(std::move(labels), std::move(dist))};
}

std::vector<PointOnGraph> epsilon_net(const MetricGraph& g, double eps) {
  if (!(eps > 0.0)) throw DomainError("epsilon_net: eps must be positive");
  std::vector<PointOnGraph> net;
  for (VertexId v = 0; v < g.vertex_count(); ++v) net.push_back(PointOnGraph::at_vertex(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double len = g.edge(e).length;
    // Guard the ceiling so an exact ratio like 256.0000000001 does not add a piece.
    auto pieces = static_cast<std::size_t>(std::ceil(len / eps - 1e-9));
    pieces = std::max<std::size_t>(pieces, 1);
    for (std::size_t j = 1; j < pieces; ++j) {
      net.push_back(PointOnGraph::interior(e, len * static_cast<double>(j) / static_cast<double>(pieces)));
    }
  }
  return net;
}

GeodesicTable sample_graph(const MetricGraph& g, double eps) {
  return graph_metric(g, epsilon_net(g, eps));
}

FiniteMetricSpace circle_space(std::size_t n) {
  if (n < 3) throw DomainError("circle_space needs at least 3 points");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<std::string> labels(n);
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = "theta" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t gap = i > j ? i - j : j - i;
      dist[i * n + j] = step * static_cast<double>(std::min(gap, n - gap));
    }
  }
  return {std::move(labels), std::move(dist)};
}

PointOnGraph project_to_spine(const MetricGraph& g, const PointOnGraph& x,
                              const std::pair<PointOnGraph, PointOnGraph>& spine) {
  if (!g.is_tree()) throw DomainError("project_to_spine: graph is not a tree");
  const auto& [a, b] = spine;
  g.check(x);
  g.check(a);
  g.check(b);
  if (a == b) throw DomainError("project_to_spine: spine endpoints must differ");
  const double ab = g.distance(a, b);
  const double ax = g.distance(a, x);
  const double bx = g.distance(b, x);
  if (ax + bx - ab <= kMetricTolerance * std::max(1.0, ab)) return x;
  // In a tree the projection sits at the Gromov product (x|b)_a from a.
  double t = 0.5 * (ax + ab - bx);
  return g.along_geodesic(a, b, std::clamp(t, 0.0, ab));
}

namespace {

MetricGraph path_graph(std::vector<std::string> names, const std::vector<double>& lengths) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < lengths.size(); ++i) edges.push_back({i, i + 1, lengths[i]});
  return {std::move(names), std::move(edges)};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

MetricGraph build_E() {
  constexpr double q = std::numbers::pi / 4.0;
  return {{"x-", "m-", "x0", "m+", "x+", "x1"},
          {{0, 1, q}, {1, 2, q}, {2, 3, q}, {3, 4, q}, {2, 5, q}}};
}

MetricGraph build_E_prime() {
  constexpr double q = std::numbers::pi / 4.0;
  return {{"x-", "m-", "x0", "m+", "x+", "x1", "x1'"},
          {{0, 1, q}, {1, 2, q}, {2, 3, q}, {3, 4, q}, {2, 5, q}, {5, 6, q}}};
}

MetricGraph build_star4() {
  constexpr double q = std::numbers::pi / 4.0;
  return {{"c", "p1", "p2", "p3", "p4"}, {{0, 1, q}, {0, 2, q}, {0, 3, q}, {0, 4, q}}};
}

MetricGraph build_tripod(double l1, double l2, double l3) {
  require_positive(l1, "tripod leg");
  require_positive(l2, "tripod leg");
  require_positive(l3, "tripod leg");
  return {{"o", "y1", "y2", "y3"}, {{0, 1, l1}, {0, 2, l2}, {0, 3, l3}}};
}

MetricGraph build_segment(double length) {
  require_positive(length, "segment length");
  return path_graph({"a", "b"}, {length});
}

MetricGraph build_circle_graph(std::size_t edges, double total_length) {
  if (edges < 1) throw DomainError("circle graph needs at least one edge");
  require_positive(total_length, "circle length");
  std::vector<std::string> names(edges);
  std::vector<Edge> list;
  const double len = total_length / static_cast<double>(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    names[i] = "c" + std::to_string(i);
    list.push_back({i, (i + 1) % edges, len});
  }
  return {std::move(names), std::move(list)};
}

MetricGraph build_figure_eight(std::size_t edges_per_loop, double loop_length) {
  if (edges_per_loop < 1) throw DomainError("figure eight needs at least one edge per loop");
  require_positive(loop_length, "loop length");
  const double len = loop_length / static_cast<double>(edges_per_loop);
  std::vector<std::string> names{"o"};
  std::vector<Edge> list;
  for (int side = 0; side < 2; ++side) {
    VertexId prev = 0;
    for (std::size_t i = 1; i < edges_per_loop; ++i) {
      names.push_back((side == 0 ? "a" : "b") + std::to_string(i));
      VertexId cur = names.size() - 1;
      list.push_back({prev, cur, len});
      prev = cur;
    }
    list.push_back({prev, 0, len});
  }
  return {std::move(names), std::move(list)};
}

}  // namespace ghforge
