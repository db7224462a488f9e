#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "ghforge/gh.hpp"
#include "ghforge/graph.hpp"

namespace ghforge {

struct WalkStep {
  EdgeId edge = 0;
  int orientation = 1;  // +1: u -> v, -1: v -> u
};

/// The combinatorics of the circle-to-tree map: eight quarter-pi arcs of the
/// circle, each sent isometrically onto one edge of E, continuous except at
/// angle 0 where the image jumps from `end` (Q) back to `start` (P).
struct EdgeWalk {
  std::array<WalkStep, 8> steps{};
  PointOnGraph start = PointOnGraph::at_vertex(0);
  PointOnGraph end = PointOnGraph::at_vertex(0);
  double jump = 0.0;  // d_E(P, Q)

  /// Vertex reached after `k` steps, k in [0, 8].
  VertexId vertex_after(const MetricGraph& e, std::size_t k) const;
};

/// Lexicographically first 8-step walk on build_E() that covers every edge,
/// jumps by pi/2 and whose graph has sampled distortion <= pi/2 at
/// resolution pi/256. Computed once and cached.
const EdgeWalk& find_phi_walk();

/// The map theta -> E defined by a walk; angles are reduced mod 2 pi.
class PhiMap {
 public:
  PhiMap(MetricGraph e, EdgeWalk walk);

  const MetricGraph& tree() const { return e_; }
  const EdgeWalk& walk() const { return walk_; }

  PointOnGraph operator()(double theta) const;
  /// Image of the k-th of n equally spaced samples; n must be a multiple of 8.
  /// Exact: offsets are integer multiples of (pi/4) / (n / 8).
  PointOnGraph sample(std::size_t k, std::size_t n) const;

 private:
  MetricGraph e_;
  EdgeWalk walk_;
};

const PhiMap& canonical_phi();

inline PointOnGraph phi(double theta) { return canonical_phi()(theta); }

/// A sampled correspondence between the circle and a tree net.
struct SampledCorrespondence {
  std::shared_ptr<const GeodesicTable> circle;  // circle graph net at angles 2 pi k / n
  std::shared_ptr<const GeodesicTable> tree;    // images plus completion points
  Correspondence relation;                      // left: circle_space(n), right: tree->metric
  std::vector<std::size_t> image;               // image[k]: tree index of phi(theta_k)
};

/// Graph of phi on n samples (n >= 8, n % 8 == 0). Tree vertices that are not
/// images are paired with the sample whose image is nearest.
SampledCorrespondence phi_graph(std::size_t n);

/// The relation on E': graph of phi plus the antipode of angle 0 paired with
/// the samples of the extension segment.
SampledCorrespondence phi_prime_graph(std::size_t n);

/// Sample net of the circle graph at angles 2 pi k / n (n % 8 == 0), index k
/// matching circle_space(n).
GeodesicTable circle_net(std::size_t n, double scale = 1.0);

/// f(D) = D + sqrt(2 - 2 sqrt(1 - D^2)) - 1.
double chordal_bound_residual(double d);

/// Unique root of chordal_bound_residual in (0, 1), by bisection to 1e-10.
double chordal_bound_root();

}  // namespace ghforge
