#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ghforge/gh.hpp"
#include "ghforge/graph.hpp"

namespace ghforge {

/// A closed sequence of graph points. The last point equals the first.
struct LoopPath {
  std::vector<PointOnGraph> points;
  double step_bound = 0.0;  // largest intrinsic gap between consecutive points

  /// Closes the sequence if needed and records the step bound.
  static LoopPath close(const MetricGraph& g, std::vector<PointOnGraph> points);
  /// Constant loop at one point.
  static LoopPath constant(const PointOnGraph& p);

  std::size_t steps() const { return points.empty() ? 0 : points.size() - 1; }
};

/// Element of a free group; generators are edge ids.
struct FreeWord {
  struct Letter {
    std::size_t generator;
    int power;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
  };
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  /// Freely reduces by appending one letter.
  void push(Letter l);
  FreeWord cyclically_reduced() const;
  std::string str() const;
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

/// Generators of pi_1(G): edges outside the breadth-first spanning tree from
/// vertex 0 (neighbours visited in incident-edge order).
std::vector<EdgeId> cycle_generators(const MetricGraph& g);

/// Homotopy class of a loop as a reduced word in cycle_generators(g).
/// Consecutive points are joined by their geodesic; each crossing of the
/// midpoint of a non-tree edge contributes a letter. Throws AmbiguityError if
/// some gap is at least half the girth.
FreeWord loop_class(const MetricGraph& g, const LoopPath& loop);

/// Inserts geodesic points so that every gap is at most gap_bound.
LoopPath refine_loop(const MetricGraph& g, const LoopPath& loop, double gap_bound);

/// Largest pairwise distance between the loop's points.
double loop_diameter(const MetricGraph& g, const LoopPath& loop);

/// Total length of the piecewise geodesic loop.
double loop_length(const MetricGraph& g, const LoopPath& loop);

/// Net adjacency: consecutive samples along each edge. Requires every vertex
/// to be a sample.
class NetGraph {
 public:
  explicit NetGraph(const GeodesicTable& table);

  std::size_t size() const { return adj_.size(); }
  const std::vector<std::pair<std::size_t, double>>& neighbours(std::size_t i) const {
    return adj_[i];
  }
  /// Sample indices of a shortest path from a to b, both ends included.
  std::vector<std::size_t> path(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
};

/// Random walk of `steps` net steps from `start`, closed by a shortest net path.
LoopPath random_net_loop(const GeodesicTable& table, const NetGraph& net, std::size_t start,
                         std::size_t steps, std::uint64_t seed);

enum class Part { Left, Right };

struct TransferCertificate {
  LoopPath input;
  LoopPath output;
  double d = 0.0;          // the constant D
  double hausdorff = 0.0;  // measured Hausdorff distance between the parts
  double delta = 0.0;
  double sup_gap = 0.0;    // max over segments of d_Z between alpha and beta points
  std::size_t subdivisions = 0;
  std::vector<std::size_t> input_nodes;   // from-part sample indices after densifying
  std::vector<std::size_t> output_nodes;  // to-part sample indices of beta
};

/// Builds a loop in the to-part that stays within 2D of `alpha` pointwise.
///
/// `from_part`/`to_part` must be the sampled graphs whose metrics are the
/// corresponding parts of `z`, each containing all graph vertices; alpha must
/// consist of from-part samples. delta = (D - d_H) / 2; alpha is densified
/// along net geodesics, cut into N segments (N doubling) of diameter < delta,
/// segment ends are projected to their lowest-index nearest to-part sample and
/// consecutive projections are joined by net geodesics.
TransferCertificate transfer_loop(const GluedSpace& z, Part from, const GeodesicTable& from_part,
                                  const GeodesicTable& to_part, const LoopPath& alpha, double d);

struct ContractibilityReport {
  std::size_t trials = 0;        // loops with diameter < C that were classified
  std::size_t contractible = 0;
  std::size_t attempts = 0;      // random loops generated
  double girth = 0.0;            // shortest essential cycle (+inf for trees)
  double fraction() const { return trials == 0 ? 1.0 : double(contractible) / double(trials); }
};

/// Classifies `trials` random loops of diameter < C (random net walks closed
/// by a shortest path). Trial i draws from a stream seeded by (seed, i), so the
/// report does not depend on the worker count.
ContractibilityReport small_loops_contractible(const MetricGraph& g, double c, std::size_t trials,
                                               std::uint64_t seed = 1);

}  // namespace ghforge
