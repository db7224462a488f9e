#pragma once

// Reference computations used to cross-check the main algorithms. Each one
// takes a deliberately different route (exhaustive enumeration, Dijkstra on a
// subdivided copy, angle unwrapping) and is only meant for small inputs.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ghforge/graph.hpp"
#include "ghforge/metric_space.hpp"

namespace ghforge::oracle {

/// Half the minimum distortion over every subset of X x Y that is a
/// correspondence. Requires |X| * |Y| <= 24.
double brute_force_gh(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Number of subsets of X x Y that are correspondences.
std::size_t count_correspondences(std::size_t nx, std::size_t ny);

/// True if some bijection maps one matrix onto the other within tol.
bool isometric_by_permutation(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                              double tol = 1e-12);

/// Pairwise distances between the given points, by splitting every edge at the
/// points and into pieces no longer than max_piece, then running Dijkstra on
/// the resulting combinatorial graph.
std::vector<std::vector<double>> subdivided_distances(const MetricGraph& g,
                                                      const std::vector<PointOnGraph>& points,
                                                      double max_piece);

/// Winding number of a closed point sequence on a cycle graph whose edges
/// 0..k-1 run head to tail; consecutive angle steps are unwrapped into
/// (-pi, pi].
double circle_winding(const MetricGraph& circle, const std::vector<PointOnGraph>& loop);

/// Shortest-path closure of random integer weights in [1, max_weight] on the
/// complete graph with n vertices. Deterministic for a given seed.
FiniteMetricSpace random_path_metric(std::uint64_t seed, std::size_t n, int max_weight = 6);

}  // namespace ghforge::oracle
