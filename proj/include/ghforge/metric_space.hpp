#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ghforge {

/// Tolerance for metric axioms throughout the library.
inline constexpr double kMetricTolerance = 1e-9;

/// A finite set of labelled points with a dense distance matrix.
///
/// Points are identified by index; labels are opaque and only used for
/// reporting. The matrix is stored row-major. Construction checks shape only;
/// use validate_metric() to check the axioms.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist);

  static FiniteMetricSpace from_rows(std::vector<std::string> labels,
                                     const std::vector<std::vector<double>>& rows);
  /// Labels default to "0", "1", ...
  static FiniteMetricSpace from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  double operator()(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {dist_.data() + i * n_, n_};
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& data() const { return dist_; }

  /// Restriction to the given indices, in the given order.
  FiniteMetricSpace restrict_to(std::span<const std::size_t> members) const;

  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::size_t n_ = 0;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr share(FiniteMetricSpace m) {
  return std::make_shared<const FiniteMetricSpace>(std::move(m));
}

struct MetricViolation {
  enum class Kind { NonFinite, Negative, NonzeroDiagonal, Asymmetry, Triangle, Indiscernible };
  Kind kind;
  // For Triangle, dist(i, k) exceeds dist(i, j) + dist(j, k); otherwise k == j.
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double excess = 0.0;
};

const char* to_string(MetricViolation::Kind kind);

struct ValidationReport {
  std::vector<MetricViolation> violations;
  bool truncated = false;  // stopped collecting after the witness cap

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks symmetry, zero diagonal, positivity off the diagonal and the
/// triangle inequality, all within `tol`. At most `max_witnesses` violations
/// are collected.
ValidationReport validate_metric(const FiniteMetricSpace& m, double tol = kMetricTolerance,
                                 std::size_t max_witnesses = 32);

/// Throws DomainError carrying the report summary if `m` is not a metric.
void require_metric(const FiniteMetricSpace& m, const std::string& what);

double diameter(const FiniteMetricSpace& m);

/// Largest distance from point `i`.
double eccentricity(const FiniteMetricSpace& m, std::size_t i);

/// A nonempty subset of one ambient space. The ambient space must outlive it.
class SubsetRef {
 public:
  SubsetRef(const FiniteMetricSpace& space, std::vector<std::size_t> members);
  static SubsetRef whole(const FiniteMetricSpace& space);
  static SubsetRef range(const FiniteMetricSpace& space, std::size_t first, std::size_t count);

  const FiniteMetricSpace& space() const { return *space_; }
  const std::vector<std::size_t>& members() const { return members_; }

 private:
  const FiniteMetricSpace* space_;
  std::vector<std::size_t> members_;
};

/// d(x, A) for a point of the ambient space.
double point_to_set(const SubsetRef& a, std::size_t x);

/// Largest d(a, B) over a in A.
double one_sided_hausdorff(const SubsetRef& a, const SubsetRef& b);

/// max(sup_a d(a, B), sup_b d(b, A)). Both subsets must share one ambient space.
double hausdorff_distance(const SubsetRef& a, const SubsetRef& b);

}  // namespace ghforge
