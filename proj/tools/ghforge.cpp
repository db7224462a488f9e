#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghforge/constructions.hpp"
#include "ghforge/errors.hpp"
#include "ghforge/gh.hpp"
#include "ghforge/graph.hpp"
#include "ghforge/io.hpp"
#include "ghforge/report.hpp"
#include "ghforge/topology.hpp"

namespace {

using namespace ghforge;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw StructuralError("cannot write " + out);
  f << text;
}

void emit(const std::string& out, const json& doc) { emit(out, doc.dump(2) + "\n"); }

GeodesicTable named_table(const std::string& name, double eps, std::size_t n, double length) {
  if (name == "circle") return circle_net(n);
  if (name == "E") return sample_graph(build_E(), eps);
  if (name == "E-prime") return sample_graph(build_E_prime(), eps);
  if (name == "star4") return sample_graph(build_star4(), eps);
  if (name == "segment") return sample_graph(build_segment(length), eps);
  if (name == "tripod") return sample_graph(build_tripod(length, length, length), eps);
  if (name == "figure-eight") return sample_graph(build_figure_eight(), eps);
  throw DomainError("unknown space '" + name + "'");
}

// A document either carries a sampled graph or is a bare metric.
FiniteMetricSpace load_metric(const json& doc) {
  if (io::has_graph(doc)) return io::table_from_json(doc).metric;
  return io::metric_from_json(doc);
}

MetricGraph load_graph(const json& doc) {
  return io::graph_from_json(doc.contains("graph") ? doc.at("graph") : doc);
}

struct Options {
  std::string out;
  std::string format = "csv";
  std::string name;
  std::string a, b, r;
  std::string glued, loop, graph, from = "left";
  double eps = kPi / 64;
  double length = kPi / 2;
  double eta = 1e-6;
  double d = 0.0;
  double c = 1.0;
  std::size_t n = 2048;
  std::size_t trials = 100;
  std::uint64_t budget = kDefaultGhBudget;
  std::uint64_t seed = 20240601;
};

int run_spaces_build(const Options& o) {
  if (o.name == "circle-space") {
    emit(o.out, io::to_json(circle_space(o.n)));
  } else {
    emit(o.out, io::to_json(named_table(o.name, o.eps, o.n, o.length)));
  }
  return 0;
}

int run_spaces_validate(const Options& o) {
  auto doc = io::read_file(o.a);
  if (doc.contains("metric")) doc = doc.at("metric");
  std::vector<std::vector<double>> rows = doc.at("dist").get<std::vector<std::vector<double>>>();
  auto report = validate_metric(FiniteMetricSpace::from_rows(rows));
  std::cout << report.summary() << '\n';
  return report.ok() ? 0 : 1;
}

int run_gh_exact(const Options& o) {
  auto x = share(load_metric(io::read_file(o.a)));
  auto y = share(load_metric(io::read_file(o.b)));
  GhBounds result = exact_gh(x, y, o.budget);
  const std::size_t witness = result.witness ? result.witness->size() : 0;
  if (o.format == "json") {
    json doc{{"lower", result.lower},
             {"upper", result.upper},
             {"exact", result.exact},
             {"nodes", result.nodes},
             {"witness_size", witness}};
    if (result.witness) doc["witness"] = io::pairs_to_json(result.witness->pairs())["pairs"];
    emit(o.out, doc);
  } else {
    std::ostringstream text;
    text << "name,lower,upper,witness_size\n"
         << "gh," << io::format_number(result.lower) << ',' << io::format_number(result.upper) << ','
         << witness << '\n';
    emit(o.out, text.str());
  }
  return 0;
}

int run_gh_distortion(const Options& o) {
  auto x = share(load_metric(io::read_file(o.a)));
  auto y = share(load_metric(io::read_file(o.b)));
  Correspondence r(x, y, io::pairs_from_json(io::read_file(o.r)));
  emit(o.out, io::format_number(distortion(r)) + "\n");
  return 0;
}

int run_gh_glue(const Options& o) {
  auto left_doc = io::read_file(o.a);
  auto right_doc = io::read_file(o.b);
  auto x = share(load_metric(left_doc));
  auto y = share(load_metric(right_doc));
  Correspondence r(x, y, io::pairs_from_json(io::read_file(o.r)));
  GluedSpace z = glue(r, o.eta);
  emit(o.out, io::glued_to_json(z, left_doc, right_doc));
  return 0;
}

int run_phi_walk(const Options& o) {
  const EdgeWalk& walk = find_phi_walk();
  const MetricGraph& e = canonical_phi().tree();
  json steps = json::array();
  for (std::size_t k = 0; k < walk.steps.size(); ++k) {
    const Edge& edge = e.edge(walk.steps[k].edge);
    steps.push_back({{"edge", walk.steps[k].edge},
                     {"orientation", walk.steps[k].orientation},
                     {"from", e.vertex_names()[walk.vertex_after(e, k)]},
                     {"to", e.vertex_names()[walk.vertex_after(e, k + 1)]},
                     {"edge_ends", {e.vertex_names()[edge.u], e.vertex_names()[edge.v]}}});
  }
  emit(o.out, json{{"steps", steps},
                   {"start", e.describe(walk.start)},
                   {"end", e.describe(walk.end)},
                   {"jump", walk.jump}});
  return 0;
}

int run_phi_verify(const Options& o) {
  const double slack = std::max(0.02, 4.0 * kPi / static_cast<double>(o.n));
  const double dis = distortion(phi_graph(o.n).relation);
  const double prime = distortion(phi_prime_graph(o.n).relation);
  const bool ok = dis <= kPi / 2 + 1e-9 && dis >= kPi / 2 - slack && prime <= kPi / 2 + 1e-9 &&
                  prime >= kPi / 2 - slack;
  std::ostringstream text;
  text << "relation,n,distortion,lower,upper\n"
       << "phi," << o.n << ',' << io::format_number(dis) << ','
       << io::format_number(kPi / 2 - slack) << ',' << io::format_number(kPi / 2 + 1e-9) << '\n'
       << "phi_prime," << o.n << ',' << io::format_number(prime) << ','
       << io::format_number(kPi / 2 - slack) << ',' << io::format_number(kPi / 2 + 1e-9) << '\n';
  emit(o.out, text.str());
  return ok ? 0 : 1;
}

int run_phi_graph(const Options& o) {
  SampledCorrespondence graph = phi_graph(o.n);
  // The left part is written as the circle graph net so that loops can use it.
  GeodesicTable circle = *graph.circle;
  json left = io::to_json(circle);
  json right = io::to_json(*graph.tree);
  Correspondence r = graph.relation.rebind(share(circle.metric), share(graph.tree->metric));
  emit(o.out, io::glued_to_json(glue(r, o.eta), left, right));
  return 0;
}

int run_topo_transfer(const Options& o) {
  json doc = io::read_file(o.glued);
  if (!io::has_graph(doc.at("left")) || !io::has_graph(doc.at("right"))) {
    throw StructuralError("both parts of the glued document need \"graph\" and \"points\"");
  }
  GluedSpace z = io::glued_from_json(doc);
  GeodesicTable left = io::table_from_json(doc.at("left"));
  GeodesicTable right = io::table_from_json(doc.at("right"));
  const bool from_left = o.from == "left";
  const GeodesicTable& from = from_left ? left : right;
  const GeodesicTable& to = from_left ? right : left;
  LoopPath alpha = io::loop_from_json(from.graph, io::read_file(o.loop));
  TransferCertificate cert = transfer_loop(z, from_left ? Part::Left : Part::Right, from, to, alpha, o.d);
  json out{{"D", cert.d},
           {"hausdorff", cert.hausdorff},
           {"delta", cert.delta},
           {"sup_gap", cert.sup_gap},
           {"subdivisions", cert.subdivisions},
           {"input", io::to_json(from.graph, cert.input)},
           {"output", io::to_json(to.graph, cert.output)},
           {"output_class", loop_class(to.graph, cert.output).str()}};
  emit(o.out, out);
  return cert.sup_gap < 2 * cert.d ? 0 : 1;
}

int run_topo_class(const Options& o) {
  MetricGraph g = load_graph(io::read_file(o.graph));
  LoopPath loop = io::loop_from_json(g, io::read_file(o.loop));
  FreeWord word = loop_class(g, loop);
  json gens = json::array();
  for (EdgeId e : cycle_generators(g)) gens.push_back(e);
  emit(o.out, json{{"word", word.str()}, {"contractible", word.empty()}, {"generators", gens}});
  return 0;
}

int run_topo_contractible(const Options& o) {
  MetricGraph g = load_graph(io::read_file(o.graph));
  ContractibilityReport r = small_loops_contractible(g, o.c, o.trials, o.seed);
  emit(o.out, json{{"trials", r.trials},
                   {"contractible", r.contractible},
                   {"attempts", r.attempts},
                   {"girth", io::format_number(r.girth)},
                   {"fraction", r.fraction()}});
  return 0;
}

int run_chordal_root(const Options& o) {
  const double root = chordal_bound_root();
  emit(o.out, "root,residual\n" + io::format_number(root) + "," +
                  io::format_number(chordal_bound_residual(root)) + "\n");
  return 0;
}

int run_reproduce(const Options& o) {
  ReproduceOptions options;
  options.eps = o.eps;
  options.n = o.n;
  options.seed = o.seed;
  auto rows = reproduce_report(options);
  emit(o.out, o.format == "json" ? rows_to_json(rows) : rows_to_csv(rows));
  bool ok = true;
  for (const auto& row : rows) {
    if (!row.pass) {
      std::cerr << "failed: " << row.claim << " = " << io::format_number(row.value) << '\n';
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ghforge: Gromov-Hausdorff computations on finite metric spaces and metric graphs"};
  app.require_subcommand(1);
  Options o;
  int (*action)(const Options&) = nullptr;

  auto out_flag = [&](CLI::App* cmd) { cmd->add_option("--out", o.out, "Write output to this file"); };

  auto* spaces = app.add_subcommand("spaces", "Build and check metric spaces")->require_subcommand(1);
  auto* build = spaces->add_subcommand("build", "Write a named sampled space");
  build->add_option("name", o.name, "circle | circle-space | E | E-prime | star4 | segment | tripod | figure-eight")
      ->required();
  build->add_option("--eps", o.eps, "Net resolution");
  build->add_option("--n", o.n, "Circle sample count");
  build->add_option("--length", o.length, "Segment length or tripod leg length");
  out_flag(build);
  build->callback([&] { action = run_spaces_build; });
  auto* validate = spaces->add_subcommand("validate", "Check the metric axioms of a document");
  validate->add_option("space", o.a)->required()->check(CLI::ExistingFile);
  validate->callback([&] { action = run_spaces_validate; });

  auto* gh = app.add_subcommand("gh", "Correspondences and GH distance")->require_subcommand(1);
  auto* exact = gh->add_subcommand("exact", "Branch and bound GH distance");
  exact->add_option("A", o.a)->required()->check(CLI::ExistingFile);
  exact->add_option("B", o.b)->required()->check(CLI::ExistingFile);
  exact->add_option("--budget", o.budget, "Node budget");
  exact->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  out_flag(exact);
  exact->callback([&] { action = run_gh_exact; });
  auto* dist = gh->add_subcommand("distortion", "Distortion of a correspondence");
  dist->add_option("A", o.a)->required()->check(CLI::ExistingFile);
  dist->add_option("B", o.b)->required()->check(CLI::ExistingFile);
  dist->add_option("R", o.r)->required()->check(CLI::ExistingFile);
  out_flag(dist);
  dist->callback([&] { action = run_gh_distortion; });
  auto* gl = gh->add_subcommand("glue", "Metric on the disjoint union through a correspondence");
  gl->add_option("A", o.a)->required()->check(CLI::ExistingFile);
  gl->add_option("B", o.b)->required()->check(CLI::ExistingFile);
  gl->add_option("R", o.r)->required()->check(CLI::ExistingFile);
  gl->add_option("--eta", o.eta, "Extra bridge length");
  out_flag(gl);
  gl->callback([&] { action = run_gh_glue; });

  auto* ph = app.add_subcommand("phi", "The circle-to-tripod map")->require_subcommand(1);
  auto* walk = ph->add_subcommand("walk", "Print the edge walk");
  out_flag(walk);
  walk->callback([&] { action = run_phi_walk; });
  auto* verify = ph->add_subcommand("verify", "Distortion of both sampled relations");
  verify->add_option("--n", o.n, "Circle sample count (multiple of 8)");
  out_flag(verify);
  verify->callback([&] { action = run_phi_verify; });
  auto* pg = ph->add_subcommand("graph", "Glued document for the sampled graph of phi");
  pg->add_option("--n", o.n, "Circle sample count (multiple of 8)");
  pg->add_option("--eta", o.eta, "Extra bridge length");
  out_flag(pg);
  pg->callback([&] { action = run_phi_graph; });

  auto* topo = app.add_subcommand("topo", "Loops on metric graphs")->require_subcommand(1);
  auto* transfer = topo->add_subcommand("transfer", "Move a loop across a glued pair");
  transfer->add_option("--glued", o.glued)->required()->check(CLI::ExistingFile);
  transfer->add_option("--loop", o.loop)->required()->check(CLI::ExistingFile);
  transfer->add_option("--D", o.d, "Bound on the Hausdorff distance of the parts")->required();
  transfer->add_option("--from", o.from)->check(CLI::IsMember({"left", "right"}));
  out_flag(transfer);
  transfer->callback([&] { action = run_topo_transfer; });
  auto* cls = topo->add_subcommand("class", "Reduced word of a loop");
  cls->add_option("--graph", o.graph)->required()->check(CLI::ExistingFile);
  cls->add_option("--loop", o.loop)->required()->check(CLI::ExistingFile);
  out_flag(cls);
  cls->callback([&] { action = run_topo_class; });
  auto* con = topo->add_subcommand("contractible", "Classify random loops of small diameter");
  con->add_option("--graph", o.graph)->required()->check(CLI::ExistingFile);
  con->add_option("--C", o.c, "Diameter bound")->required();
  con->add_option("--trials", o.trials);
  con->add_option("--seed", o.seed);
  out_flag(con);
  con->callback([&] { action = run_topo_contractible; });

  auto* bounds = app.add_subcommand("bounds", "Numeric bounds")->require_subcommand(1);
  bounds->add_subcommand("chordal-root", "Root of the chordal bound equation")->callback([&] {
    action = run_chordal_root;
  });
  out_flag(bounds->get_subcommand("chordal-root"));

  auto* rep = app.add_subcommand("reproduce", "Recompute every checkable value");
  rep->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  rep->add_option("--eps", o.eps, "Net resolution");
  rep->add_option("--n", o.n, "Circle sample count (multiple of 8)");
  rep->add_option("--seed", o.seed, "Seed for the random batteries");
  out_flag(rep);
  rep->callback([&] { action = run_reproduce; });

  CLI11_PARSE(app, argc, argv);
  if (action == nullptr) return 2;
  try {
    return action(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
