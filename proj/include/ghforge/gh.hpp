#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghforge/metric_space.hpp"

namespace ghforge {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Largest |d_left(x, x') - d_right(y, y')| over pairs in the relation.
/// The relation need not be a correspondence; it must be nonempty.
double relation_distortion(const FiniteMetricSpace& left, const FiniteMetricSpace& right,
                           std::span<const IndexPair> pairs);

/// A relation between two finite spaces whose projections are both surjective.
/// Pairs are kept sorted and unique.
class Correspondence {
 public:
  Correspondence(SpacePtr left, SpacePtr right, std::vector<IndexPair> pairs);

  /// Every point related to every point.
  static Correspondence full(SpacePtr left, SpacePtr right);
  /// i <-> i; both spaces must have the same size.
  static Correspondence identity(SpacePtr left, SpacePtr right);

  const FiniteMetricSpace& left() const { return *left_; }
  const FiniteMetricSpace& right() const { return *right_; }
  const SpacePtr& left_ptr() const { return left_; }
  const SpacePtr& right_ptr() const { return right_; }
  const std::vector<IndexPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  Correspondence transpose() const;
  /// Same pairs over different spaces of the same sizes.
  Correspondence rebind(SpacePtr left, SpacePtr right) const;

 private:
  SpacePtr left_;
  SpacePtr right_;
  std::vector<IndexPair> pairs_;
};

double distortion(const Correspondence& r);

struct GhBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<Correspondence> witness;  // dis(witness) / 2 == upper
  bool exact = false;                     // search completed; lower == upper
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultGhBudget = 50'000'000;

/// Gromov-Hausdorff distance by branch and bound over correspondences of the
/// form graph(f) u graph(g)^T for maps f: X -> Y, g: Y -> X.
///
/// Search order is deterministic (points of X, then uncovered points of Y,
/// candidates in index order) and only strict improvements replace the
/// incumbent, so the witness is the first optimum in that order. When more
/// than `budget` nodes are expanded the result carries exact == false and
/// lower < upper in general.
GhBounds exact_gh(const SpacePtr& x, const SpacePtr& y, std::uint64_t budget = kDefaultGhBudget);

/// Certified lower bound on d_GH: the largest of half the diameter gap, half
/// the Hausdorff distance between eccentricity value sets, and half the
/// Hausdorff distance between distance value sets.
double gh_lower_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Disjoint union of two spaces metrized through a correspondence.
///
/// Left points come first: index i < left_size() is left point i, index
/// left_size() + j is right point j.
struct GluedSpace {
  FiniteMetricSpace left;
  FiniteMetricSpace right;
  std::vector<IndexPair> bridge;  // left index, right index
  double eta = 0.0;
  double bridge_offset = 0.0;  // constant added to every bridged path
  FiniteMetricSpace metric;

  std::size_t left_size() const { return left.size(); }
  std::size_t right_size() const { return right.size(); }
  std::size_t left_index(std::size_t i) const { return i; }
  std::size_t right_index(std::size_t j) const { return left.size() + j; }
  SubsetRef left_part() const { return SubsetRef::range(metric, 0, left.size()); }
  SubsetRef right_part() const { return SubsetRef::range(metric, left.size(), right.size()); }
  double parts_hausdorff() const { return hausdorff_distance(left_part(), right_part()); }
};

/// Cross distance d(x, y) = min over (x', y') in R of d(x, x') + dis(R)/2 + eta + d(y', y).
GluedSpace glue(const Correspondence& r, double eta = 1e-6);

/// Restrictions equal the parts bitwise and the union passes validate_metric.
/// Returns an empty string when valid, otherwise a description of the failure.
std::string check_glued(const GluedSpace& z);

/// Product with the max metric; point (x, z) has index x * |Z| + z.
FiniteMetricSpace max_product(const FiniteMetricSpace& x, const FiniteMetricSpace& z);

/// R_Z = {((x, z), y) : (x, y) in R, z in Z} between max_product(X, Z) and Y.
/// Requires diameter(Z) <= distortion(R).
Correspondence lift_correspondence(const Correspondence& r, const FiniteMetricSpace& z);

/// Circle of n samples (n divisible by 4) glued to a sampled four-spoke star so
/// that every point of the i-th closed quarter arc is at pi/4 from spoke tip i.
/// Cross distance: min_i d(z, I_i) + pi/4 + d_star(p_i, x).
GluedSpace star4_embedding(std::size_t n);

}  // namespace ghforge
