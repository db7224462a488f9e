#include "ghforge/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ghforge/errors.hpp"
#include "ghforge/graph.hpp"
#include "ghforge/parallel.hpp"

namespace ghforge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonempty(const FiniteMetricSpace& m, const char* what) {
  if (m.empty()) throw DomainError(std::string(what) + ": empty space");
}

FiniteMetricSpace disjoint_union(const FiniteMetricSpace& left, const FiniteMetricSpace& right,
                                 const std::vector<double>& cross) {
  const std::size_t nl = left.size();
  const std::size_t nr = right.size();
  const std::size_t n = nl + nr;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& l : left.labels()) labels.push_back("L:" + l);
  for (const auto& l : right.labels()) labels.push_back("R:" + l);
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < nl; ++i) {
    auto row = left.row(i);
    std::copy(row.begin(), row.end(), dist.begin() + i * n);
    for (std::size_t j = 0; j < nr; ++j) {
      dist[i * n + nl + j] = cross[i * nr + j];
      dist[(nl + j) * n + i] = cross[i * nr + j];
    }
  }
  for (std::size_t j = 0; j < nr; ++j) {
    auto row = right.row(j);
    std::copy(row.begin(), row.end(), dist.begin() + (nl + j) * n + nl);
  }
  return {std::move(labels), std::move(dist)};
}

// Half the Hausdorff distance between two finite subsets of the real line.
double line_hausdorff(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  auto one_sided = [](const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0.0;
    for (double v : from) {
      auto it = std::lower_bound(to.begin(), to.end(), v);
      double best = kInf;
      if (it != to.end()) best = *it - v;
      if (it != to.begin()) best = std::min(best, v - *std::prev(it));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace

double relation_distortion(const FiniteMetricSpace& left, const FiniteMetricSpace& right,
                           std::span<const IndexPair> pairs) {
  if (pairs.empty()) throw DomainError("distortion of an empty relation");
  const std::size_t k = pairs.size();
  std::vector<double> worst(k, 0.0);
  parallel_for(k, [&](std::size_t a) {
    auto lrow = left.row(pairs[a].first);
    auto rrow = right.row(pairs[a].second);
    double w = 0.0;
    for (std::size_t b = a + 1; b < k; ++b) {
      w = std::max(w, std::abs(lrow[pairs[b].first] - rrow[pairs[b].second]));
    }
    worst[a] = w;
  });
  return *std::max_element(worst.begin(), worst.end());
}

Correspondence::Correspondence(SpacePtr left, SpacePtr right, std::vector<IndexPair> pairs)
    : left_(std::move(left)), right_(std::move(right)), pairs_(std::move(pairs)) {
  if (!left_ || !right_) throw StructuralError("correspondence needs both spaces");
  if (pairs_.empty()) throw DomainError("correspondence must be nonempty");
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  std::vector<bool> hit_left(left_->size(), false);
  std::vector<bool> hit_right(right_->size(), false);
  for (const auto& [i, j] : pairs_) {
    if (i >= left_->size() || j >= right_->size()) {
      throw StructuralError("correspondence pair index out of range");
    }
    hit_left[i] = true;
    hit_right[j] = true;
  }
  auto missing = [](const std::vector<bool>& hit) {
    return std::find(hit.begin(), hit.end(), false) - hit.begin();
  };
  if (auto i = missing(hit_left); i != static_cast<std::ptrdiff_t>(hit_left.size())) {
    throw DomainError("relation is not a correspondence: left point " + std::to_string(i) +
                      " is unrelated");
  }
  if (auto j = missing(hit_right); j != static_cast<std::ptrdiff_t>(hit_right.size())) {
    throw DomainError("relation is not a correspondence: right point " + std::to_string(j) +
                      " is unrelated");
  }
}

Correspondence Correspondence::full(SpacePtr left, SpacePtr right) {
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < left->size(); ++i) {
    for (std::size_t j = 0; j < right->size(); ++j) pairs.emplace_back(i, j);
  }
  return {std::move(left), std::move(right), std::move(pairs)};
}

Correspondence Correspondence::identity(SpacePtr left, SpacePtr right) {
  if (left->size() != right->size()) throw DomainError("identity needs equal sizes");
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < left->size(); ++i) pairs.emplace_back(i, i);
  return {std::move(left), std::move(right), std::move(pairs)};
}

Correspondence Correspondence::transpose() const {
  std::vector<IndexPair> pairs;
  pairs.reserve(pairs_.size());
  for (const auto& [i, j] : pairs_) pairs.emplace_back(j, i);
  return {right_, left_, std::move(pairs)};
}

Correspondence Correspondence::rebind(SpacePtr left, SpacePtr right) const {
  if (left->size() != left_->size() || right->size() != right_->size()) {
    throw DomainError("rebind: space sizes differ");
  }
  return {std::move(left), std::move(right), pairs_};
}

double distortion(const Correspondence& r) {
  return relation_distortion(r.left(), r.right(), r.pairs());
}

double gh_lower_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  require_nonempty(x, "gh_lower_bounds");
  require_nonempty(y, "gh_lower_bounds");
  double diam_gap = std::abs(diameter(x) - diameter(y));

  std::vector<double> ecc_x(x.size()), ecc_y(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) ecc_x[i] = eccentricity(x, i);
  for (std::size_t j = 0; j < y.size(); ++j) ecc_y[j] = eccentricity(y, j);
  double ecc_gap = line_hausdorff(std::move(ecc_x), std::move(ecc_y));

  double dist_gap = line_hausdorff(x.data(), y.data());
  return 0.5 * std::max({diam_gap, ecc_gap, dist_gap});
}

namespace {

class GhSearch {
 public:
  GhSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::uint64_t budget,
           double floor)
      : x_(x), y_(y), budget_(budget), floor_(floor), covered_(y.size(), 0) {}

  void seed(std::vector<IndexPair> pairs, double dis) {
    best_pairs_ = std::move(pairs);
    best_ = dis;
  }

  void run() {
    pairs_.reserve(x_.size() + y_.size());
    assign_left(0, 0.0);
  }

  double best() const { return best_; }
  const std::vector<IndexPair>& best_pairs() const { return best_pairs_; }
  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  double added_cost(std::size_t xi, std::size_t yj) const {
    double worst = 0.0;
    auto xrow = x_.row(xi);
    auto yrow = y_.row(yj);
    for (const auto& [a, b] : pairs_) worst = std::max(worst, std::abs(xrow[a] - yrow[b]));
    return worst;
  }

  bool stop() const { return aborted_ || best_ <= floor_; }

  bool enter() {
    if (++nodes_ > budget_) aborted_ = true;
    return !aborted_;
  }

  void assign_left(std::size_t xi, double current) {
    if (xi == x_.size()) {
      assign_right(0, current);
      return;
    }
    for (std::size_t yj = 0; yj < y_.size() && !stop(); ++yj) {
      if (!enter()) return;
      double next = std::max(current, added_cost(xi, yj));
      if (next >= best_) continue;
      pairs_.emplace_back(xi, yj);
      ++covered_[yj];
      assign_left(xi + 1, next);
      --covered_[yj];
      pairs_.pop_back();
    }
  }

  void assign_right(std::size_t yj, double current) {
    while (yj < y_.size() && covered_[yj] > 0) ++yj;
    if (yj == y_.size()) {
      if (current < best_) {
        best_ = current;
        best_pairs_ = pairs_;
      }
      return;
    }
    for (std::size_t xi = 0; xi < x_.size() && !stop(); ++xi) {
      if (!enter()) return;
      double next = std::max(current, added_cost(xi, yj));
      if (next >= best_) continue;
      pairs_.emplace_back(xi, yj);
      assign_right(yj + 1, next);
      pairs_.pop_back();
    }
  }

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  std::uint64_t budget_;
  double floor_;
  std::vector<int> covered_;
  std::vector<IndexPair> pairs_;
  std::vector<IndexPair> best_pairs_;
  double best_ = kInf;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

GhBounds exact_gh(const SpacePtr& x, const SpacePtr& y, std::uint64_t budget) {
  if (!x || !y) throw StructuralError("exact_gh: missing space");
  require_nonempty(*x, "exact_gh");
  require_nonempty(*y, "exact_gh");
  const double floor = 2.0 * gh_lower_bounds(*x, *y);

  // X x Y is always a correspondence, so an upper bound exists before searching.
  Correspondence full = Correspondence::full(x, y);
  GhSearch search(*x, *y, budget, floor);
  search.seed(full.pairs(), distortion(full));
  search.run();

  std::vector<IndexPair> pairs = search.best_pairs();
  std::sort(pairs.begin(), pairs.end());
  GhBounds out;
  out.nodes = search.nodes();
  out.exact = !search.aborted();
  Correspondence witness(x, y, std::move(pairs));
  out.upper = 0.5 * distortion(witness);
  out.lower = out.exact ? out.upper : std::min(0.5 * floor, out.upper);
  out.witness = std::move(witness);
  return out;
}

GluedSpace glue(const Correspondence& r, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("glue: eta must be positive");
  const FiniteMetricSpace& x = r.left();
  const FiniteMetricSpace& y = r.right();
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const double offset = 0.5 * distortion(r) + eta;

  // min over (x', y') of d(x, x') + d(y', y), grouped by the smaller side.
  std::vector<double> cross(nx * ny, kInf);
  if (ny <= nx) {
    // near[x][y'] = min over x' related to y' of d(x, x')
    std::vector<double> near(nx * ny, kInf);
    parallel_for(nx, [&](std::size_t i) {
      auto row = x.row(i);
      for (const auto& [a, b] : r.pairs()) near[i * ny + b] = std::min(near[i * ny + b], row[a]);
    });
    parallel_for(nx, [&](std::size_t i) {
      double* out = cross.data() + i * ny;
      for (std::size_t b = 0; b < ny; ++b) {
        double base = near[i * ny + b];
        if (!std::isfinite(base)) continue;
        auto yrow = y.row(b);
        for (std::size_t j = 0; j < ny; ++j) out[j] = std::min(out[j], base + yrow[j]);
      }
    });
  } else {
    // near[x'][y] = min over y' related to x' of d(y', y)
    std::vector<double> near(nx * ny, kInf);
    for (const auto& [a, b] : r.pairs()) {
      auto yrow = y.row(b);
      for (std::size_t j = 0; j < ny; ++j) near[a * ny + j] = std::min(near[a * ny + j], yrow[j]);
    }
    parallel_for(nx, [&](std::size_t i) {
      double* out = cross.data() + i * ny;
      auto xrow = x.row(i);
      for (std::size_t a = 0; a < nx; ++a) {
        const double* nrow = near.data() + a * ny;
        for (std::size_t j = 0; j < ny; ++j) out[j] = std::min(out[j], xrow[a] + nrow[j]);
      }
    });
  }
  for (double& c : cross) c += offset;

  GluedSpace z;
  z.left = x;
  z.right = y;
  z.bridge = r.pairs();
  z.eta = eta;
  z.bridge_offset = offset;
  z.metric = disjoint_union(x, y, cross);
  return z;
}

std::string check_glued(const GluedSpace& z) {
  const std::size_t nl = z.left.size();
  const std::size_t nr = z.right.size();
  if (z.metric.size() != nl + nr) return "glued metric has the wrong size";
  for (std::size_t i = 0; i < nl; ++i) {
    for (std::size_t j = 0; j < nl; ++j) {
      if (z.metric(i, j) != z.left(i, j)) return "left restriction differs from the left part";
    }
  }
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nr; ++j) {
      if (z.metric(nl + i, nl + j) != z.right(i, j)) {
        return "right restriction differs from the right part";
      }
    }
  }
  auto report = validate_metric(z.metric);
  if (!report.ok()) return "glued matrix is not a metric: " + report.summary();
  return {};
}

FiniteMetricSpace max_product(const FiniteMetricSpace& x, const FiniteMetricSpace& z) {
  require_nonempty(x, "max_product");
  require_nonempty(z, "max_product");
  const std::size_t nx = x.size();
  const std::size_t nz = z.size();
  const std::size_t n = nx * nz;
  std::vector<std::string> labels(n);
  std::vector<double> dist(n * n);
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t c = 0; c < nz; ++c) labels[a * nz + c] = "(" + x.labels()[a] + "," + z.labels()[c] + ")";
  }
  parallel_for(n, [&](std::size_t p) {
    const std::size_t a = p / nz;
    const std::size_t c = p % nz;
    auto xrow = x.row(a);
    auto zrow = z.row(c);
    double* out = dist.data() + p * n;
    for (std::size_t b = 0; b < nx; ++b) {
      for (std::size_t d = 0; d < nz; ++d) out[b * nz + d] = std::max(xrow[b], zrow[d]);
    }
  });
  return {std::move(labels), std::move(dist)};
}

Correspondence lift_correspondence(const Correspondence& r, const FiniteMetricSpace& z) {
  const double dz = diameter(z);
  const double dr = distortion(r);
  // Same slack as the metric axioms so that diam(Z) == dis(R) up to rounding is accepted.
  if (dz > dr + kMetricTolerance) {
    std::ostringstream os;
    os << "lift_correspondence: diameter(Z) = " << dz << " exceeds distortion(R) = " << dr;
    throw PreconditionError(os.str());
  }
  const std::size_t nz = z.size();
  std::vector<IndexPair> pairs;
  pairs.reserve(r.size() * nz);
  for (const auto& [i, j] : r.pairs()) {
    for (std::size_t c = 0; c < nz; ++c) pairs.emplace_back(i * nz + c, j);
  }
  return {share(max_product(r.left(), z)), r.right_ptr(), std::move(pairs)};
}

GluedSpace star4_embedding(std::size_t n) {
  if (n < 4 || n % 4 != 0) throw DomainError("star4_embedding: n must be a positive multiple of 4");
  constexpr double quarter = std::numbers::pi / 4.0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  FiniteMetricSpace circle = circle_space(n);
  GeodesicTable star = sample_graph(build_star4(), step);
  const std::size_t ns = star.points.size();
  const std::size_t arc = n / 4;

  // Distance from sample k to the closed arc [i * arc, (i + 1) * arc].
  auto arc_distance = [&](std::size_t k, std::size_t i) {
    const std::size_t lo = i * arc;
    const std::size_t hi = (i + 1) * arc;
    if (k >= lo && k <= hi) return 0.0;
    auto circ = [&](std::size_t a, std::size_t b) {
      std::size_t g = a > b ? a - b : b - a;
      return std::min(g, n - g);
    };
    return step * static_cast<double>(std::min(circ(k, lo), circ(k, hi % n)));
  };

  std::vector<double> cross(n * ns, kInf);
  std::vector<IndexPair> bridge;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t tip = *star.index_of(PointOnGraph::at_vertex(i + 1));
      const double head = arc_distance(k, i) + quarter;
      if (head == quarter) bridge.emplace_back(k, tip);
      auto srow = star.metric.row(tip);
      for (std::size_t x = 0; x < ns; ++x) cross[k * ns + x] = std::min(cross[k * ns + x], head + srow[x]);
    }
  }

  GluedSpace z;
  z.left = std::move(circle);
  z.right = star.metric;
  z.bridge = std::move(bridge);
  z.bridge_offset = quarter;
  z.metric = disjoint_union(z.left, z.right, cross);
  auto report = validate_metric(z.metric);
  if (!report.ok()) throw ConstructionError("star4_embedding: " + report.summary());
  return z;
}

}  // namespace ghforge
