#include "ghforge/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ghforge/constructions.hpp"
#include "ghforge/gh.hpp"
#include "ghforge/graph.hpp"
#include "ghforge/io.hpp"
#include "ghforge/oracle.hpp"

namespace ghforge {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t max_size) {
  const std::uint64_t seed = rng();
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
  return oracle::random_path_metric(seed, n);
}

// Random correspondence: every x gets one partner, every uncovered y gets
// one, plus a few extra pairs.
std::vector<IndexPair> random_relation(std::mt19937_64& rng, std::size_t nx, std::size_t ny) {
  std::uniform_int_distribution<std::size_t> pick_x(0, nx - 1), pick_y(0, ny - 1);
  std::vector<IndexPair> pairs;
  std::vector<bool> covered(ny, false);
  for (std::size_t x = 0; x < nx; ++x) {
    std::size_t y = pick_y(rng);
    covered[y] = true;
    pairs.emplace_back(x, y);
  }
  for (std::size_t y = 0; y < ny; ++y) {
    if (!covered[y]) pairs.emplace_back(pick_x(rng), y);
  }
  std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  for (std::size_t k = 0; k < extra; ++k) pairs.emplace_back(pick_x(rng), pick_y(rng));
  return pairs;
}

FiniteMetricSpace scaled(const FiniteMetricSpace& m, double factor) {
  std::vector<double> d = m.data();
  for (double& v : d) v *= factor;
  return FiniteMetricSpace(m.labels(), std::move(d));
}

std::size_t lift_violations(std::uint64_t seed, std::size_t instances) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  std::size_t violations = 0;
  for (std::size_t t = 0; t < instances; ++t) {
    auto x = share(random_space(rng, 5));
    auto y = share(random_space(rng, 5));
    Correspondence r(x, y, random_relation(rng, x->size(), y->size()));
    const double dis = distortion(r);
    auto z = random_space(rng, 4);
    const double diam = diameter(z);
    if (diam > 0.0) z = scaled(z, dis * fraction(rng) / diam);
    if (distortion(lift_correspondence(r, z)) > dis + 1e-9) ++violations;
  }
  return violations;
}

std::size_t exact_gh_mismatches(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SpacePtr> family;
  for (int i = 0; i < 30; ++i) family.push_back(share(random_space(rng, 4)));
  const auto point = share(FiniteMetricSpace::from_rows({{0.0}}));
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i; j < family.size(); ++j) {
      GhBounds b = exact_gh(family[i], family[j]);
      if (!b.exact || b.upper != oracle::brute_force_gh(*family[i], *family[j])) ++mismatches;
    }
    if (exact_gh(family[i], point).upper != diameter(*family[i]) / 2) ++mismatches;
    if (exact_gh(family[i], family[i]).upper != 0.0) ++mismatches;
  }
  return mismatches;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Finite numbers stay JSON numbers; infinities become the same strings the
// CSV uses so both outputs carry identical text.
nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return io::format_number(v);
}

}  // namespace

ReportRow make_row(std::string claim, std::string anchor, double value, double lower, double upper,
                   bool lower_open) {
  ReportRow row{std::move(claim), std::move(anchor), value, lower, upper, lower_open, false};
  row.pass = (lower_open ? value > lower : value >= lower) && value <= upper;
  return row;
}

std::vector<ReportRow> reproduce_report(const ReproduceOptions& options) {
  const double eps = options.eps;
  const std::size_t n = options.n;
  std::vector<ReportRow> rows;

  const SampledCorrespondence graph = phi_graph(n);
  const double dis = distortion(graph.relation);
  const double slack = std::max(0.02, 4.0 * kPi / static_cast<double>(n));
  rows.push_back(make_row("phi_distortion", "distortion of the graph of phi on the circle samples",
                          dis, kPi / 2 - slack, kPi / 2 + 1e-9));
  rows.push_back(make_row("gh_upper", "half the phi distortion bounds d_GH(E, S1) from above",
                          dis / 2, 0.0, kPi / 4 + 1e-9));

  const auto circle_count = static_cast<std::size_t>(std::ceil(2 * kPi / eps - 1e-9));
  const GeodesicTable e_net = sample_graph(build_E(), eps);
  rows.push_back(make_row("gh_lower", "certified lower bound for the circle and E nets",
                          gh_lower_bounds(circle_space(circle_count), e_net.metric), 0.0,
                          kPi / 4 + 2 * eps, true));

  const MetricGraph e = build_E();
  rows.push_back(make_row("E_length", "total length of E", e.total_length(), 5 * kPi / 4 - 1e-9,
                          5 * kPi / 4 + 1e-9));
  rows.push_back(make_row("E_diameter", "diameter of the sampled E", diameter(e_net.metric),
                          kPi - 1e-9, kPi + 1e-9));

  const SampledCorrespondence prime = phi_prime_graph(n);
  rows.push_back(make_row("E_prime_distortion", "distortion of the relation on E with branch pi/2",
                          distortion(prime.relation), kPi / 2 - slack, kPi / 2 + 1e-9));

  rows.push_back(make_row("lift_violations", "max product lifts on 200 random instances",
                          static_cast<double>(lift_violations(options.seed, 200)), 0.0, 0.0));

  {
    const SampledCorrespondence small = phi_graph(std::min<std::size_t>(n, 256));
    const GeodesicTable segment = sample_graph(build_segment(kPi / 2), kPi / 16);
    const double lifted = distortion(lift_correspondence(small.relation, segment.metric));
    rows.push_back(make_row("lift_segment", "phi correspondence lifted over a segment of length pi/2",
                            lifted, 0.0, kPi / 2 + 1e-9));
  }

  {
    const std::size_t star_n = 256;
    const GluedSpace star = star4_embedding(star_n);
    const double circle_side = one_sided_hausdorff(star.left_part(), star.right_part());
    double far = 0.0;
    for (std::size_t j = 0; j < star.right_size(); ++j) {
      far = std::max(far, point_to_set(star.left_part(), star.right_index(j)));
    }
    rows.push_back(make_row("star4_sup", "largest distance from a circle sample to the star",
                            circle_side, kPi / 4 - 1e-9, kPi / 4 + 2 * kPi / star_n));
    rows.push_back(make_row("star4_far_point", "largest distance from a star point to the circle",
                            far, kPi / 2 - 1e-9, kInf));
  }

  const double root = chordal_bound_root();
  rows.push_back(make_row("chordal_root", "root of D + sqrt(2 - 2 sqrt(1 - D^2)) = 1", root, 0.4916,
                          0.4917));
  rows.push_back(make_row("chordal_residual", "residual at the computed root",
                          std::abs(chordal_bound_residual(root)), 0.0, 1e-9));

  rows.push_back(make_row("exact_gh_mismatches", "exact_gh against exhaustive enumeration",
                          static_cast<double>(exact_gh_mismatches(options.seed + 1)), 0.0, 0.0));
  return rows;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "claim,anchor,value,lower,upper,lower_open,pass\n";
  for (const auto& r : rows) {
    out << csv_field(r.claim) << ',' << csv_field(r.anchor) << ',' << io::format_number(r.value)
        << ',' << io::format_number(r.lower) << ',' << io::format_number(r.upper) << ','
        << (r.lower_open ? "true" : "false") << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string rows_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"claim", r.claim},
                   {"anchor", r.anchor},
                   {"value", json_number(r.value)},
                   {"lower", json_number(r.lower)},
                   {"upper", json_number(r.upper)},
                   {"lower_open", r.lower_open},
                   {"pass", r.pass}});
  }
  return out.dump(2) + "\n";
}

}  // namespace ghforge
