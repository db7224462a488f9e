#include "ghforge/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "ghforge/errors.hpp"

namespace ghforge {
namespace {

constexpr double kQuarter = std::numbers::pi / 4.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kSearchSamples = 512;  // resolution pi / 256

VertexId step_start(const MetricGraph& g, const WalkStep& s) {
  const Edge& e = g.edge(s.edge);
  return s.orientation > 0 ? e.u : e.v;
}

VertexId step_end(const MetricGraph& g, const WalkStep& s) {
  const Edge& e = g.edge(s.edge);
  return s.orientation > 0 ? e.v : e.u;
}

double sampled_distortion(const PhiMap& phi, std::size_t n) {
  std::vector<PointOnGraph> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = phi.sample(k, n);
  const double step = kTwoPi / static_cast<double>(n);
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      std::size_t gap = std::min(b - a, n - (b - a));
      double ds = step * static_cast<double>(gap);
      worst = std::max(worst, std::abs(ds - phi.tree().distance(images[a], images[b])));
    }
  }
  return worst;
}

// Enumerates continuous 8-step walks in lexicographic (edge, orientation)
// order, orientation +1 first. Returns the first walk accepted by `accept`.
template <typename Accept>
std::optional<EdgeWalk> search_walks(const MetricGraph& g, Accept&& accept) {
  EdgeWalk walk;
  std::optional<EdgeWalk> found;
  auto rec = [&](auto&& self, std::size_t k, std::optional<VertexId> at) -> void {
    if (found) return;
    if (k == walk.steps.size()) {
      if (accept(walk)) found = walk;
      return;
    }
    for (EdgeId e = 0; e < g.edge_count() && !found; ++e) {
      for (int o : {+1, -1}) {
        WalkStep s{e, o};
        if (at && step_start(g, s) != *at) continue;
        walk.steps[k] = s;
        self(self, k + 1, step_end(g, s));
        if (found) return;
      }
    }
  };
  rec(rec, 0, std::nullopt);
  return found;
}

}  // namespace

VertexId EdgeWalk::vertex_after(const MetricGraph& e, std::size_t k) const {
  if (k == 0) return step_start(e, steps[0]);
  return step_end(e, steps.at(k - 1));
}

const EdgeWalk& find_phi_walk() {
  static const EdgeWalk walk = [] {
    const MetricGraph e = build_E();
    auto accept = [&](EdgeWalk& w) {
      std::vector<bool> used(e.edge_count(), false);
      for (const auto& s : w.steps) used[s.edge] = true;
      if (std::find(used.begin(), used.end(), false) != used.end()) return false;
      w.start = PointOnGraph::at_vertex(w.vertex_after(e, 0));
      w.end = PointOnGraph::at_vertex(w.vertex_after(e, 8));
      w.jump = e.distance(w.start, w.end);
      if (std::abs(w.jump - 2.0 * kQuarter) > 1e-12) return false;
      PhiMap candidate(e, w);
      // Vertex images first: cheap and rejects most walks.
      if (sampled_distortion(candidate, 8) > 2.0 * kQuarter + 1e-9) return false;
      return sampled_distortion(candidate, kSearchSamples) <= 2.0 * kQuarter + 1e-9;
    };
    auto found = search_walks(e, accept);
    if (!found) throw ConstructionError("no 8-step walk on E has distortion pi/2");
    return *found;
  }();
  return walk;
}

PhiMap::PhiMap(MetricGraph e, EdgeWalk walk) : e_(std::move(e)), walk_(walk) {
  for (const auto& s : walk_.steps) {
    if (s.edge >= e_.edge_count()) throw StructuralError("walk uses an unknown edge");
    if (std::abs(e_.edge(s.edge).length - kQuarter) > 1e-12) {
      throw DomainError("walk edges must have length pi/4");
    }
  }
  for (std::size_t k = 1; k < walk_.steps.size(); ++k) {
    if (step_start(e_, walk_.steps[k]) != step_end(e_, walk_.steps[k - 1])) {
      throw DomainError("walk is not continuous at step " + std::to_string(k));
    }
  }
}

PointOnGraph PhiMap::operator()(double theta) const {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  auto k = static_cast<std::size_t>(std::floor(t / kQuarter));
  k = std::min<std::size_t>(k, 7);
  double s = std::clamp(t - static_cast<double>(k) * kQuarter, 0.0, kQuarter);
  const WalkStep& step = walk_.steps[k];
  double len = e_.edge(step.edge).length;
  return e_.point(step.edge, step.orientation > 0 ? s : len - s);
}

PointOnGraph PhiMap::sample(std::size_t k, std::size_t n) const {
  if (n < 8 || n % 8 != 0) throw DomainError("phi samples need n to be a positive multiple of 8");
  const std::size_t per_edge = n / 8;
  k %= n;
  const WalkStep& step = walk_.steps[k / per_edge];
  const std::size_t j = k % per_edge;
  const std::size_t idx = step.orientation > 0 ? j : per_edge - j;
  const double h = e_.edge(step.edge).length / static_cast<double>(per_edge);
  return e_.point(step.edge, static_cast<double>(idx) * h);
}

const PhiMap& canonical_phi() {
  static const PhiMap map(build_E(), find_phi_walk());
  return map;
}

GeodesicTable circle_net(std::size_t n, double scale) {
  if (n < 8 || n % 8 != 0) throw DomainError("circle_net: n must be a positive multiple of 8");
  if (!(scale > 0.0)) throw DomainError("circle_net: scale must be positive");
  MetricGraph g = build_circle_graph(8, kTwoPi * scale);
  const std::size_t per_edge = n / 8;
  const double h = g.edge(0).length / static_cast<double>(per_edge);
  std::vector<PointOnGraph> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    pts[k] = g.point(k / per_edge, static_cast<double>(k % per_edge) * h);
  }
  return graph_metric(g, std::move(pts));
}

namespace {

SampledCorrespondence assemble(const MetricGraph& tree, std::size_t n,
                               const std::vector<PointOnGraph>& images,
                               std::vector<PointOnGraph> extra,
                               const std::vector<std::size_t>& extra_partner) {
  std::vector<PointOnGraph> pts = images;
  pts.insert(pts.end(), extra.begin(), extra.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Vertex completion: pair each missing vertex with the sample whose image is nearest.
  std::vector<IndexPair> completion;
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    PointOnGraph pv = PointOnGraph::at_vertex(v);
    if (std::binary_search(pts.begin(), pts.end(), pv)) continue;
    std::size_t best_k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      double d = tree.distance(images[k], pv);
      if (d < best) {
        best = d;
        best_k = k;
      }
    }
    completion.emplace_back(best_k, v);
    pts.push_back(pv);
  }
  std::sort(pts.begin(), pts.end());

  auto table = std::make_shared<const GeodesicTable>(graph_metric(tree, pts));
  std::vector<std::size_t> image(n);
  std::vector<IndexPair> pairs;
  pairs.reserve(n + extra.size() + completion.size());
  for (std::size_t k = 0; k < n; ++k) {
    image[k] = *table->index_of(images[k]);
    pairs.emplace_back(k, image[k]);
  }
  for (std::size_t i = 0; i < extra.size(); ++i) {
    pairs.emplace_back(extra_partner[i], *table->index_of(extra[i]));
  }
  for (const auto& [k, v] : completion) {
    pairs.emplace_back(k, *table->index_of(PointOnGraph::at_vertex(v)));
  }
  auto circle = std::make_shared<const GeodesicTable>(circle_net(n));
  Correspondence relation(share(circle_space(n)), share(table->metric), std::move(pairs));
  return {std::move(circle), std::move(table), std::move(relation), std::move(image)};
}

std::vector<PointOnGraph> phi_images(std::size_t n) {
  if (n < 8 || n % 8 != 0) throw DomainError("phi_graph: n must be a positive multiple of 8");
  std::vector<PointOnGraph> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = canonical_phi().sample(k, n);
  return images;
}

}  // namespace

SampledCorrespondence phi_graph(std::size_t n) {
  return assemble(canonical_phi().tree(), n, phi_images(n), {}, {});
}

SampledCorrespondence phi_prime_graph(std::size_t n) {
  // E is a subgraph of E' with the same vertex and edge ids, so images carry over.
  std::vector<PointOnGraph> images = phi_images(n);
  if (images[n / 2] != PointOnGraph::at_vertex(tripod_e::kBranchTip)) {
    throw ConstructionError("phi_prime_graph: the antipode of angle 0 must map to the branch tip");
  }
  MetricGraph tree = build_E_prime();
  const std::size_t per_edge = n / 8;
  const double h = tree.edge(tripod_e::kExtensionEdge).length / static_cast<double>(per_edge);
  std::vector<PointOnGraph> extension;
  for (std::size_t i = 1; i <= per_edge; ++i) {
    extension.push_back(tree.point(tripod_e::kExtensionEdge, static_cast<double>(i) * h));
  }
  // The extension hangs off phi(pi); pair it with the antipode of angle 0.
  std::vector<std::size_t> partner(extension.size(), n / 2);
  return assemble(tree, n, images, std::move(extension), partner);
}

double chordal_bound_residual(double d) {
  return d + std::sqrt(2.0 - 2.0 * std::sqrt(1.0 - d * d)) - 1.0;
}

double chordal_bound_root() {
  // Increasing on (0, 1) with f(0) = -1 and f(1) = sqrt(2) - 1 > 0.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (chordal_bound_residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ghforge
