#include "ghforge/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <tuple>

#include "ghforge/errors.hpp"
#include "ghforge/parallel.hpp"

namespace ghforge {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)), n_(labels_.size()) {
  if (dist_.size() != n_ * n_) {
    std::ostringstream os;
    os << "distance matrix has " << dist_.size() << " entries, expected " << n_ << "x" << n_;
    throw StructuralError(os.str());
  }
}

FiniteMetricSpace FiniteMetricSpace::from_rows(std::vector<std::string> labels,
                                               const std::vector<std::vector<double>>& rows) {
  if (rows.size() != labels.size()) {
    throw StructuralError("distance matrix has " + std::to_string(rows.size()) + " rows for " +
                          std::to_string(labels.size()) + " labels");
  }
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw StructuralError("distance matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return {std::move(labels), std::move(flat)};
}

FiniteMetricSpace FiniteMetricSpace::from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) labels[i] = std::to_string(i);
  return from_rows(std::move(labels), rows);
}

FiniteMetricSpace FiniteMetricSpace::restrict_to(std::span<const std::size_t> members) const {
  std::vector<std::string> labels;
  std::vector<double> dist;
  labels.reserve(members.size());
  dist.reserve(members.size() * members.size());
  for (std::size_t a : members) {
    if (a >= n_) throw StructuralError("restriction index out of range");
    labels.push_back(labels_[a]);
    for (std::size_t b : members) dist.push_back((*this)(a, b));
  }
  return {std::move(labels), std::move(dist)};
}

const char* to_string(MetricViolation::Kind kind) {
  switch (kind) {
    case MetricViolation::Kind::NonFinite: return "non-finite";
    case MetricViolation::Kind::Negative: return "negative";
    case MetricViolation::Kind::NonzeroDiagonal: return "nonzero-diagonal";
    case MetricViolation::Kind::Asymmetry: return "asymmetry";
    case MetricViolation::Kind::Triangle: return "triangle";
    case MetricViolation::Kind::Indiscernible: return "indiscernible";
  }
  return "unknown";
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  os << violations.size() << (truncated ? "+" : "") << " violation(s)";
  for (std::size_t i = 0; i < std::min<std::size_t>(violations.size(), 4); ++i) {
    const auto& v = violations[i];
    os << "; " << to_string(v.kind);
    if (v.kind == MetricViolation::Kind::Triangle) {
      os << " (" << v.i << "," << v.k << ") via " << v.j;
    } else {
      os << " (" << v.i << "," << v.j << ")";
    }
    os << " excess " << v.excess;
  }
  return os.str();
}

ValidationReport validate_metric(const FiniteMetricSpace& m, double tol, std::size_t max_witnesses) {
  using Kind = MetricViolation::Kind;
  ValidationReport report;
  const std::size_t n = m.size();
  auto add = [&](MetricViolation v) {
    if (report.violations.size() < max_witnesses) {
      report.violations.push_back(v);
    } else {
      report.truncated = true;
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d = m(i, j);
      if (!std::isfinite(d)) {
        add({Kind::NonFinite, i, j, j, d});
        continue;
      }
      if (d < -tol) add({Kind::Negative, i, j, j, -d});
      if (i == j) {
        if (std::abs(d) > tol) add({Kind::NonzeroDiagonal, i, i, i, std::abs(d)});
        continue;
      }
      if (j > i) {
        double asym = std::abs(d - m(j, i));
        if (asym > tol) add({Kind::Asymmetry, i, j, j, asym});
        if (d <= tol) add({Kind::Indiscernible, i, j, j, d});
      }
    }
  }
  if (!report.ok()) return report;  // triangle witnesses are meaningless on a broken matrix

  // d(i, k) <= d(i, j) + d(j, k); row i scanned against row j.
  std::mutex mutex;
  parallel_for(n, [&](std::size_t i) {
    auto ri = m.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dij = ri[j];
      auto rj = m.row(j);
      double worst = 0.0;
      std::size_t worst_k = 0;
      for (std::size_t k = 0; k < n; ++k) {
        double excess = ri[k] - dij - rj[k];
        if (excess > worst) {
          worst = excess;
          worst_k = k;
        }
      }
      if (worst > tol) {
        std::lock_guard lock(mutex);
        add({Kind::Triangle, i, j, worst_k, worst});
      }
    }
  }, 4);
  std::sort(report.violations.begin(), report.violations.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  return report;
}

void require_metric(const FiniteMetricSpace& m, const std::string& what) {
  auto report = validate_metric(m);
  if (!report.ok()) throw DomainError(what + " is not a metric: " + report.summary());
}

double diameter(const FiniteMetricSpace& m) {
  if (m.empty()) throw DomainError("diameter of an empty space");
  return *std::max_element(m.data().begin(), m.data().end());
}

double eccentricity(const FiniteMetricSpace& m, std::size_t i) {
  if (i >= m.size()) throw StructuralError("point index out of range");
  auto r = m.row(i);
  return *std::max_element(r.begin(), r.end());
}

SubsetRef::SubsetRef(const FiniteMetricSpace& space, std::vector<std::size_t> members)
    : space_(&space), members_(std::move(members)) {
  if (members_.empty()) throw DomainError("subset must be nonempty");
  for (std::size_t i : members_) {
    if (i >= space.size()) throw StructuralError("subset index out of range");
  }
}

SubsetRef SubsetRef::whole(const FiniteMetricSpace& space) { return range(space, 0, space.size()); }

SubsetRef SubsetRef::range(const FiniteMetricSpace& space, std::size_t first, std::size_t count) {
  std::vector<std::size_t> members(count);
  for (std::size_t i = 0; i < count; ++i) members[i] = first + i;
  return {space, std::move(members)};
}

double point_to_set(const SubsetRef& a, std::size_t x) {
  auto r = a.space().row(x);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i : a.members()) best = std::min(best, r[i]);
  return best;
}

double one_sided_hausdorff(const SubsetRef& a, const SubsetRef& b) {
  if (&a.space() != &b.space()) throw DomainError("subsets live in different ambient spaces");
  double worst = 0.0;
  for (std::size_t x : a.members()) worst = std::max(worst, point_to_set(b, x));
  return worst;
}

double hausdorff_distance(const SubsetRef& a, const SubsetRef& b) {
  return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

}  // namespace ghforge
