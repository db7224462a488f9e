#include "ghforge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "ghforge/errors.hpp"

namespace ghforge::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int highest_bit(std::uint32_t s) { return 31 - __builtin_clz(s); }

}  // namespace

double brute_force_gh(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const std::size_t k = nx * ny;
  if (nx == 0 || ny == 0) throw DomainError("brute_force_gh: empty space");
  if (k > 24) throw DomainError("brute_force_gh: at most 24 candidate pairs");

  // Pair p is (p / ny, p % ny); cost[p][q] = |dX - dY| between pairs p and q.
  std::vector<double> cost(k * k);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < k; ++q) {
      cost[p * k + q] = std::abs(x(p / ny, q / ny) - y(p % ny, q % ny));
    }
  }
  const std::uint32_t subsets = std::uint32_t{1} << k;
  const std::uint32_t all_rows = (std::uint32_t{1} << nx) - 1;
  const std::uint32_t all_cols = (std::uint32_t{1} << ny) - 1;
  std::vector<double> dis(subsets, 0.0);
  std::vector<std::uint32_t> rows(subsets, 0), cols(subsets, 0);
  double best = kInf;
  for (std::uint32_t s = 1; s < subsets; ++s) {
    const int top = highest_bit(s);
    const std::uint32_t rest = s ^ (std::uint32_t{1} << top);
    double worst = dis[rest];
    for (std::uint32_t r = rest; r != 0; r &= r - 1) {
      const int b = __builtin_ctz(r);
      worst = std::max(worst, cost[static_cast<std::size_t>(top) * k + b]);
    }
    dis[s] = worst;
    rows[s] = rows[rest] | (std::uint32_t{1} << (top / ny));
    cols[s] = cols[rest] | (std::uint32_t{1} << (top % ny));
    if (rows[s] == all_rows && cols[s] == all_cols) best = std::min(best, worst);
  }
  return 0.5 * best;
}

std::size_t count_correspondences(std::size_t nx, std::size_t ny) {
  const std::size_t k = nx * ny;
  if (k > 24) throw DomainError("count_correspondences: at most 24 candidate pairs");
  std::size_t count = 0;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << k); ++s) {
    std::uint32_t rows = 0, cols = 0;
    for (std::uint32_t r = s; r != 0; r &= r - 1) {
      const int b = __builtin_ctz(r);
      rows |= std::uint32_t{1} << (b / ny);
      cols |= std::uint32_t{1} << (b % ny);
    }
    if (rows == (std::uint32_t{1} << nx) - 1 && cols == (std::uint32_t{1} << ny) - 1) ++count;
  }
  return count;
}

bool isometric_by_permutation(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double tol) {
  if (x.size() != y.size()) return false;
  const std::size_t n = x.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) ok = std::abs(x(i, j) - y(perm[i], perm[j])) <= tol;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<std::vector<double>> subdivided_distances(const MetricGraph& g,
                                                      const std::vector<PointOnGraph>& points,
                                                      double max_piece) {
  if (!(max_piece > 0.0)) throw DomainError("subdivided_distances: piece length must be positive");
  // Node ids: original vertices first, then split points per edge.
  std::size_t nodes = g.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes);
  std::vector<std::map<double, std::size_t>> splits(g.edge_count());
  for (const auto& p : points) {
    if (!p.is_vertex()) splits[p.edge()].emplace(p.offset(), 0);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    auto pieces = static_cast<std::size_t>(std::ceil(edge.length / max_piece));
    for (std::size_t j = 1; j < pieces; ++j) {
      splits[e].emplace(edge.length * static_cast<double>(j) / static_cast<double>(pieces), 0);
    }
    for (auto& [offset, id] : splits[e]) {
      id = nodes++;
      adj.emplace_back();
    }
    std::size_t prev = edge.u;
    double prev_offset = 0.0;
    for (const auto& [offset, id] : splits[e]) {
      adj[prev].emplace_back(id, offset - prev_offset);
      adj[id].emplace_back(prev, offset - prev_offset);
      prev = id;
      prev_offset = offset;
    }
    adj[prev].emplace_back(edge.v, edge.length - prev_offset);
    adj[edge.v].emplace_back(prev, edge.length - prev_offset);
  }

  std::vector<std::size_t> source(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    source[i] = p.is_vertex() ? p.vertex() : splits[p.edge()].at(p.offset());
  }
  std::vector<std::vector<double>> out(points.size(), std::vector<double>(points.size(), kInf));
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<double> dist(nodes, kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source[i]] = 0.0;
    queue.emplace(0.0, source[i]);
    while (!queue.empty()) {
      auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v]) continue;
      for (const auto& [w, len] : adj[v]) {
        if (d + len < dist[w]) {
          dist[w] = d + len;
          queue.emplace(dist[w], w);
        }
      }
    }
    for (std::size_t j = 0; j < points.size(); ++j) out[i][j] = dist[source[j]];
  }
  return out;
}

double circle_winding(const MetricGraph& circle, const std::vector<PointOnGraph>& loop) {
  const double total = circle.total_length();
  std::vector<double> start(circle.edge_count() + 1, 0.0);
  for (EdgeId e = 0; e < circle.edge_count(); ++e) start[e + 1] = start[e] + circle.edge(e).length;
  auto angle = [&](const PointOnGraph& p) {
    double pos = p.is_vertex() ? start[p.vertex()] : start[p.edge()] + p.offset();
    return 2.0 * std::numbers::pi * pos / total;
  };
  double turned = 0.0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    double step = angle(loop[i + 1]) - angle(loop[i]);
    step = std::remainder(step, 2.0 * std::numbers::pi);
    if (step <= -std::numbers::pi) step += 2.0 * std::numbers::pi;
    turned += step;
  }
  return turned / (2.0 * std::numbers::pi);
}

FiniteMetricSpace random_path_metric(std::uint64_t seed, std::size_t n, int max_weight) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = weight(rng);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return FiniteMetricSpace::from_rows(std::move(labels), d);
}

}  // namespace ghforge::oracle
