#include "ghforge/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

#include "ghforge/errors.hpp"
#include "ghforge/parallel.hpp"

namespace ghforge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxSubdivisions = std::size_t{1} << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

LoopPath LoopPath::close(const MetricGraph& g, std::vector<PointOnGraph> points) {
  if (points.empty()) throw DomainError("loop needs at least one point");
  for (const auto& p : points) g.check(p);
  if (points.size() == 1 || points.back() != points.front()) points.push_back(points.front());
  LoopPath loop;
  loop.points = std::move(points);
  for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
    loop.step_bound = std::max(loop.step_bound, g.distance(loop.points[i], loop.points[i + 1]));
  }
  return loop;
}

LoopPath LoopPath::constant(const PointOnGraph& p) {
  LoopPath loop;
  loop.points = {p, p};
  return loop;
}

void FreeWord::push(Letter l) {
  if (!letters.empty() && letters.back().generator == l.generator &&
      letters.back().power == -l.power) {
    letters.pop_back();
  } else {
    letters.push_back(l);
  }
}

FreeWord FreeWord::cyclically_reduced() const {
  FreeWord w = *this;
  while (w.letters.size() >= 2) {
    const auto& a = w.letters.front();
    const auto& b = w.letters.back();
    if (a.generator != b.generator || a.power != -b.power) break;
    w.letters.pop_back();
    w.letters.erase(w.letters.begin());
  }
  return w;
}

std::string FreeWord::str() const {
  if (letters.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) os << ' ';
    os << 'g' << letters[i].generator;
    if (letters[i].power < 0) os << "^-1";
  }
  return os.str();
}

std::vector<EdgeId> cycle_generators(const MetricGraph& g) {
  if (!g.connected()) throw DomainError("cycle_generators: graph is disconnected");
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<bool> tree_edge(g.edge_count(), false);
  std::queue<VertexId> queue;
  seen[0] = true;
  queue.push(0);
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop();
    for (EdgeId e : g.incident(v)) {
      const Edge& edge = g.edge(e);
      VertexId w = edge.u == v ? edge.v : edge.u;
      if (seen[w]) continue;
      seen[w] = true;
      tree_edge[e] = true;
      queue.push(w);
    }
  }
  std::vector<EdgeId> gens;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!tree_edge[e]) gens.push_back(e);
  }
  return gens;
}

FreeWord loop_class(const MetricGraph& g, const LoopPath& loop) {
  std::vector<bool> generator(g.edge_count(), false);
  for (EdgeId e : cycle_generators(g)) generator[e] = true;
  const double girth = g.girth();
  FreeWord word;
  for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
    const auto& p = loop.points[i];
    const auto& q = loop.points[i + 1];
    double gap = g.distance(p, q);
    if (2.0 * gap >= girth) {
      std::ostringstream os;
      os << "loop_class: gap " << gap << " at step " << i << " is not below half the girth " << girth;
      throw AmbiguityError(os.str());
    }
    for (const auto& m : g.geodesic(p, q)) {
      if (!generator[m.edge]) continue;
      const double mid = 0.5 * g.edge(m.edge).length;
      int crossing = int(m.to >= mid) - int(m.from >= mid);
      if (crossing != 0) word.push({m.edge, crossing});
    }
  }
  return word;
}

LoopPath refine_loop(const MetricGraph& g, const LoopPath& loop, double gap_bound) {
  if (!(gap_bound > 0.0)) throw DomainError("refine_loop: gap bound must be positive");
  std::vector<PointOnGraph> pts;
  for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
    const auto& p = loop.points[i];
    const auto& q = loop.points[i + 1];
    pts.push_back(p);
    double d = g.distance(p, q);
    auto pieces = static_cast<std::size_t>(std::ceil(d / gap_bound));
    for (std::size_t k = 1; k < pieces; ++k) {
      pts.push_back(g.along_geodesic(p, q, d * static_cast<double>(k) / static_cast<double>(pieces)));
    }
  }
  pts.push_back(loop.points.back());
  return LoopPath::close(g, std::move(pts));
}

double loop_diameter(const MetricGraph& g, const LoopPath& loop) {
  double worst = 0.0;
  for (std::size_t i = 0; i < loop.points.size(); ++i) {
    for (std::size_t j = i + 1; j < loop.points.size(); ++j) {
      worst = std::max(worst, g.distance(loop.points[i], loop.points[j]));
    }
  }
  return worst;
}

double loop_length(const MetricGraph& g, const LoopPath& loop) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
    total += g.distance(loop.points[i], loop.points[i + 1]);
  }
  return total;
}

NetGraph::NetGraph(const GeodesicTable& table) : adj_(table.points.size()) {
  const MetricGraph& g = table.graph;
  std::vector<std::size_t> vertex_index(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto idx = table.index_of(PointOnGraph::at_vertex(v));
    if (!idx) throw DomainError("net graph: sample set must contain every vertex");
    vertex_index[v] = *idx;
  }
  std::vector<std::vector<std::pair<double, std::size_t>>> on_edge(g.edge_count());
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    const auto& p = table.points[i];
    if (!p.is_vertex()) on_edge[p.edge()].emplace_back(p.offset(), i);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto& list = on_edge[e];
    list.emplace_back(0.0, vertex_index[g.edge(e).u]);
    list.emplace_back(g.edge(e).length, vertex_index[g.edge(e).v]);
    std::sort(list.begin(), list.end());
    for (std::size_t k = 0; k + 1 < list.size(); ++k) {
      double w = list[k + 1].first - list[k].first;
      std::size_t a = list[k].second;
      std::size_t b = list[k + 1].second;
      adj_[a].emplace_back(b, w);
      if (a != b) adj_[b].emplace_back(a, w);
    }
  }
}

std::vector<std::size_t> NetGraph::path(std::size_t a, std::size_t b) const {
  const std::size_t n = adj_.size();
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> pred(n, n);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[a] = 0.0;
  queue.emplace(0.0, a);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    if (v == b) break;
    for (const auto& [w, len] : adj_[v]) {
      if (d + len < dist[w]) {
        dist[w] = d + len;
        pred[w] = v;
        queue.emplace(dist[w], w);
      }
    }
  }
  if (!std::isfinite(dist[b])) throw DomainError("net graph: target unreachable");
  std::vector<std::size_t> out{b};
  for (std::size_t v = b; v != a; v = pred[v]) out.push_back(pred[v]);
  std::reverse(out.begin(), out.end());
  return out;
}

LoopPath random_net_loop(const GeodesicTable& table, const NetGraph& net, std::size_t start,
                         std::size_t steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> seq{start};
  std::size_t cur = start;
  for (std::size_t s = 0; s < steps; ++s) {
    const auto& nb = net.neighbours(cur);
    if (nb.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
    cur = nb[pick(rng)].first;
    seq.push_back(cur);
  }
  auto back = net.path(cur, start);
  seq.insert(seq.end(), back.begin() + 1, back.end());
  std::vector<PointOnGraph> pts;
  pts.reserve(seq.size());
  for (std::size_t i : seq) pts.push_back(table.points[i]);
  return LoopPath::close(table.graph, std::move(pts));
}

TransferCertificate transfer_loop(const GluedSpace& z, Part from, const GeodesicTable& from_part,
                                  const GeodesicTable& to_part, const LoopPath& alpha, double d) {
  const bool left = from == Part::Left;
  const std::size_t from_base = left ? 0 : z.left_size();
  const std::size_t to_base = left ? z.left_size() : 0;
  if (from_part.metric.size() != (left ? z.left_size() : z.right_size()) ||
      to_part.metric.size() != (left ? z.right_size() : z.left_size())) {
    throw StructuralError("transfer_loop: sampled parts do not match the glued space");
  }
  if (!(d > 0.0)) throw DomainError("transfer_loop: D must be positive");
  if (alpha.points.empty()) throw DomainError("transfer_loop: empty loop");

  TransferCertificate cert;
  cert.d = d;
  cert.hausdorff = z.parts_hausdorff();
  if (!(cert.hausdorff < d)) {
    std::ostringstream os;
    os << "transfer_loop: Hausdorff distance " << cert.hausdorff << " is not below D = " << d;
    throw DomainError(os.str());
  }
  cert.delta = 0.5 * (d - cert.hausdorff);
  auto dz = [&](std::size_t a, std::size_t b) { return z.metric(from_base + a, to_base + b); };

  NetGraph from_net(from_part);
  NetGraph to_net(to_part);

  // Densify alpha along net geodesics.
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i < alpha.points.size(); ++i) {
    auto idx = from_part.index_of(alpha.points[i]);
    if (!idx) throw DomainError("transfer_loop: loop point " + std::to_string(i) + " is not a sample");
    if (seq.empty()) {
      seq.push_back(*idx);
      continue;
    }
    auto piece = from_net.path(seq.back(), *idx);
    seq.insert(seq.end(), piece.begin() + 1, piece.end());
  }
  const std::size_t steps = seq.size() - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    if (!(from_part.metric(seq[i], seq[i + 1]) < cert.delta)) {
      throw ConstructionError("transfer_loop: net spacing is not below delta");
    }
  }

  // N doubles until every segment has diameter < delta.
  auto cut = [&](std::size_t n, std::size_t parts) { return steps == 0 ? 0 : n * steps / parts; };
  auto segment_ok = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t a = lo; a <= hi; ++a) {
      for (std::size_t b = a + 1; b <= hi; ++b) {
        if (!(from_part.metric(seq[a], seq[b]) < cert.delta)) return false;
      }
    }
    return true;
  };
  std::size_t parts = 1;
  for (;;) {
    bool ok = true;
    for (std::size_t n = 1; n <= parts && ok; ++n) ok = segment_ok(cut(n - 1, parts), cut(n, parts));
    if (ok) break;
    parts *= 2;
    if (parts > kMaxSubdivisions) {
      throw ConstructionError("transfer_loop: subdivision exceeded 2^16 segments");
    }
  }
  cert.subdivisions = parts;

  auto project = [&](std::size_t a) {
    std::size_t best = 0;
    double best_d = kInf;
    for (std::size_t b = 0; b < to_part.metric.size(); ++b) {
      double v = dz(a, b);
      if (v < best_d) {
        best_d = v;
        best = b;
      }
    }
    if (!(best_d < d - cert.delta)) {
      throw ConstructionError("transfer_loop: no to-part point within D - delta");
    }
    return best;
  };
  std::vector<std::size_t> nodes(parts + 1);
  nodes[0] = project(seq[0]);
  for (std::size_t n = 1; n < parts; ++n) nodes[n] = project(seq[cut(n, parts)]);
  nodes[parts] = nodes[0];

  std::vector<std::size_t> beta{nodes[0]};
  double sup_gap = 0.0;
  for (std::size_t n = 1; n <= parts; ++n) {
    auto piece = to_net.path(nodes[n - 1], nodes[n]);
    double length = 0.0;
    for (std::size_t k = 0; k + 1 < piece.size(); ++k) length += to_part.metric(piece[k], piece[k + 1]);
    if (!(length < 2.0 * d)) throw ConstructionError("transfer_loop: joining geodesic is not shorter than 2D");
    for (std::size_t a = cut(n - 1, parts); a <= cut(n, parts); ++a) {
      for (std::size_t b : piece) sup_gap = std::max(sup_gap, dz(seq[a], b));
    }
    beta.insert(beta.end(), piece.begin() + 1, piece.end());
  }
  if (!(sup_gap < 2.0 * d)) throw ConstructionError("transfer_loop: pointwise gap reached 2D");
  cert.sup_gap = sup_gap;

  std::vector<PointOnGraph> in_pts, out_pts;
  for (std::size_t i : seq) in_pts.push_back(from_part.points[i]);
  for (std::size_t i : beta) out_pts.push_back(to_part.points[i]);
  cert.input = LoopPath::close(from_part.graph, std::move(in_pts));
  cert.output = LoopPath::close(to_part.graph, std::move(out_pts));
  cert.input_nodes = std::move(seq);
  cert.output_nodes = std::move(beta);
  return cert;
}

ContractibilityReport small_loops_contractible(const MetricGraph& g, double c, std::size_t trials,
                                               std::uint64_t seed) {
  if (!g.connected()) throw DomainError("small_loops_contractible: graph is disconnected");
  if (!(c > 0.0)) throw DomainError("small_loops_contractible: C must be positive");
  ContractibilityReport report;
  report.girth = g.girth();
  if (g.edge_count() == 0) {
    report.trials = report.contractible = report.attempts = trials;
    return report;
  }
  double scale = std::min(c, g.total_length());
  if (std::isfinite(report.girth)) scale = std::min(scale, report.girth);
  const double eps = scale / 16.0;
  const GeodesicTable table = sample_graph(g, eps);
  const NetGraph net(table);
  const auto max_steps = static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * c / eps)));
  constexpr std::size_t kAttempts = 200;

  std::vector<int> classified(trials, 0), trivial(trials, 0);
  std::vector<std::size_t> used(trials, 0);
  parallel_for(trials, [&](std::size_t t) {
    for (std::size_t attempt = 0; attempt < kAttempts; ++attempt) {
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t * kAttempts + attempt)));
      std::uniform_int_distribution<std::size_t> start(0, table.points.size() - 1);
      std::uniform_int_distribution<std::size_t> length(1, max_steps);
      std::size_t s = start(rng);
      std::size_t n = length(rng);
      LoopPath loop = random_net_loop(table, net, s, n, rng());
      ++used[t];
      if (!(loop_diameter(g, loop) < c)) continue;
      classified[t] = 1;
      trivial[t] = loop_class(g, loop).empty() ? 1 : 0;
      return;
    }
  }, 1);
  for (std::size_t t = 0; t < trials; ++t) {
    report.trials += classified[t];
    report.contractible += trivial[t];
    report.attempts += used[t];
  }
  return report;
}

}  // namespace ghforge
