#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ghforge/constructions.hpp"
#include "ghforge/errors.hpp"
#include "ghforge/gh.hpp"
#include "ghforge/graph.hpp"
#include "ghforge/report.hpp"
#include "ghforge/topology.hpp"

namespace py = pybind11;
using namespace ghforge;

namespace {

FiniteMetricSpace from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw StructuralError("expected a square matrix");
  const auto n = static_cast<std::size_t>(a.shape(0));
  std::vector<double> d(a.data(), a.data() + n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

py::array_t<double> to_array(const FiniteMetricSpace& m) {
  py::array_t<double> out({m.size(), m.size()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

py::dict bounds_dict(const GhBounds& b) {
  py::dict d;
  d["lower"] = b.lower;
  d["upper"] = b.upper;
  d["exact"] = b.exact;
  d["nodes"] = b.nodes;
  if (b.witness) d["witness"] = b.witness->pairs();
  return d;
}

}  // namespace

PYBIND11_MODULE(_ghforge, m) {
  m.doc() = "Gromov-Hausdorff computations on finite metric spaces and metric graphs";

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_RuntimeError);
  py::register_exception<AmbiguityError>(m, "AmbiguityError", PyExc_RuntimeError);

  m.def("validate_metric", [](py::array_t<double> a) {
    auto report = validate_metric(from_array(a));
    return py::make_tuple(report.ok(), report.summary());
  }, py::arg("dist"), "Returns (ok, summary) for a distance matrix.");

  m.def("diameter", [](py::array_t<double> a) { return diameter(from_array(a)); });

  m.def("hausdorff", [](py::array_t<double> a, std::vector<std::size_t> left, std::vector<std::size_t> right) {
    auto space = from_array(a);
    return hausdorff_distance(SubsetRef(space, std::move(left)), SubsetRef(space, std::move(right)));
  }, py::arg("dist"), py::arg("a"), py::arg("b"));

  m.def("circle_space", [](std::size_t n) { return to_array(circle_space(n)); });

  m.def("sample_space", [](const std::string& name, double eps) {
    MetricGraph g = name == "E"         ? build_E()
                    : name == "E-prime" ? build_E_prime()
                    : name == "star4"   ? build_star4()
                    : name == "circle"  ? build_circle_graph()
                                        : throw DomainError("unknown space '" + name + "'");
    return to_array(sample_graph(g, eps).metric);
  }, py::arg("name"), py::arg("eps"));

  m.def("distortion", [](py::array_t<double> a, py::array_t<double> b, std::vector<IndexPair> pairs) {
    return distortion(Correspondence(share(from_array(a)), share(from_array(b)), std::move(pairs)));
  }, py::arg("left"), py::arg("right"), py::arg("pairs"));

  m.def("exact_gh", [](py::array_t<double> a, py::array_t<double> b, std::uint64_t budget) {
    return bounds_dict(exact_gh(share(from_array(a)), share(from_array(b)), budget));
  }, py::arg("left"), py::arg("right"), py::arg("budget") = kDefaultGhBudget);

  m.def("gh_lower_bound", [](py::array_t<double> a, py::array_t<double> b) {
    return gh_lower_bounds(from_array(a), from_array(b));
  });

  m.def("glue", [](py::array_t<double> a, py::array_t<double> b, std::vector<IndexPair> pairs, double eta) {
    GluedSpace z = glue(Correspondence(share(from_array(a)), share(from_array(b)), std::move(pairs)), eta);
    return to_array(z.metric);
  }, py::arg("left"), py::arg("right"), py::arg("pairs"), py::arg("eta") = 1e-6);

  m.def("max_product", [](py::array_t<double> a, py::array_t<double> b) {
    return to_array(max_product(from_array(a), from_array(b)));
  });

  m.def("phi_distortion", [](std::size_t n) { return distortion(phi_graph(n).relation); }, py::arg("n"));
  m.def("phi_prime_distortion", [](std::size_t n) { return distortion(phi_prime_graph(n).relation); },
        py::arg("n"));
  m.def("chordal_bound_root", &chordal_bound_root);

  m.def("small_loops_contractible", [](const std::string& name, double c, std::size_t trials, std::uint64_t seed) {
    MetricGraph g = name == "circle"         ? build_circle_graph()
                    : name == "figure-eight" ? build_figure_eight()
                    : name == "E"            ? build_E()
                                             : throw DomainError("unknown graph '" + name + "'");
    auto r = small_loops_contractible(g, c, trials, seed);
    return py::make_tuple(r.trials, r.contractible);
  }, py::arg("graph"), py::arg("c"), py::arg("trials"), py::arg("seed") = 1);

  m.def("reproduce", [](double eps, std::size_t n, std::uint64_t seed) {
    ReproduceOptions options;
    options.eps = eps;
    options.n = n;
    options.seed = seed;
    py::list rows;
    for (const auto& r : reproduce_report(options)) {
      py::dict d;
      d["claim"] = r.claim;
      d["anchor"] = r.anchor;
      d["value"] = r.value;
      d["lower"] = r.lower;
      d["upper"] = r.upper;
      d["pass"] = r.pass;
      rows.append(d);
    }
    return rows;
  }, py::arg("eps") = ReproduceOptions{}.eps, py::arg("n") = ReproduceOptions{}.n,
     py::arg("seed") = ReproduceOptions{}.seed);
}
