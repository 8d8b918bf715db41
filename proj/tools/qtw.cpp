// Command-line driver: property suites, separator audits, partition search,
// bramble/staircase construction and exact treewidth.
//
// Exit codes: 0 pass, 1 property violation, 2 usage, 3 inconclusive.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtw/bramble_builder.hpp"
#include "qtw/harness.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

struct Global {
  std::uint64_t seed = 1;
  int guard = 40;
  std::string out;
  std::string format = "csv";

  qtw::SolverLimits limits() const {
    qtw::SolverLimits l;
    l.max_component_vertices = guard;
    return l;
  }
};

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw std::runtime_error("cannot write " + g.out);
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Edge list: "vertices edges" then one "u v" pair per line.
qtw::Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  int n = 0, m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0) throw qtw::PreconditionError("bad edge list header");
  std::vector<std::pair<qtw::Vertex, qtw::Vertex>> edges;
  for (int i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw qtw::PreconditionError("edge list truncated");
    edges.emplace_back(u, v);
  }
  return qtw::Graph(n, std::move(edges));
}

struct LemmaArgs {
  int n = 2;
  int samples = 0;
  bool exhaustive = false;
  int max_length = 5;
};

int run_lemmas(const Global& g, const LemmaArgs& a) {
  if (!a.exhaustive && a.samples <= 0) throw CLI::ValidationError("lemmas", "give --exhaustive or --samples");
  std::vector<qtw::SuiteResult> results;
  if (a.exhaustive) {
    results.push_back(qtw::suite_walk_integrals(a.n, a.max_length));
    results.push_back(qtw::suite_triangles(std::max(a.n, 2)));
  }
  if (a.samples > 0) {
    results.push_back(qtw::suite_homotopy(a.samples, g.seed));
    results.push_back(qtw::suite_path_weights(a.samples, g.seed + 1));
    results.push_back(qtw::suite_balanced_separation(a.samples, g.seed + 2));
    results.push_back(qtw::suite_minimal_separators(std::min(a.samples, 200), g.seed + 3));
    results.push_back(qtw::suite_separator_mass(a.n, qtw::default_box_length(a.n), std::min(a.samples, 200),
                                                g.seed + 4));
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.ok();
  if (g.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results)
      j.push_back({{"suite", r.name}, {"cases", r.cases}, {"violations", r.violations}, {"special", r.special},
                   {"detail", r.detail}});
    emit(g, j.dump(2));
  } else {
    emit(g, qtw::suites_csv(results));
  }
  return ok ? kPass : kViolation;
}

struct AuditArgs {
  int n = 3;
  int length = 0;
  int samples = 1;
  std::string separator = "sampled";
  std::optional<int> certify_width;
};

int run_audit(const Global& g, const AuditArgs& a) {
  qtw::AuditConfig config;
  config.n = a.n;
  config.length = a.length;
  config.samples = a.separator == "plane" ? 1 : a.samples;
  config.seed = g.seed;
  config.plane = a.separator == "plane";
  config.certify_width = a.certify_width;
  config.limits = g.limits();
  auto reports = qtw::run_audits(config);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.pass();
  if (g.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) j.push_back(nlohmann::json::parse(qtw::to_json_string(r)));
    emit(g, j.dump(2));
  } else {
    std::string text = qtw::audit_csv_header() + "\n";
    for (const auto& r : reports) text += qtw::audit_csv_row(r) + "\n";
    emit(g, text);
  }
  return ok ? kPass : kViolation;
}

struct SearchArgs {
  int n = 2;
  std::string mode = "exhaustive";
  int iterations = 2000;
  int max_n = 3;
};

int run_search(const Global& g, const SearchArgs& a) {
  qtw::SearchResult r = a.mode == "exhaustive"
                            ? qtw::exhaustive_partition_search(a.n, g.limits(), a.max_n)
                            : qtw::heuristic_partition_search(a.n, g.seed, a.iterations);
  if (g.format == "json") {
    emit(g, nlohmann::json::parse(qtw::to_json_string(r)).dump(2));
  } else {
    std::ostringstream out;
    out << "n,mode,value,symmetries,antipodal_symmetries\n"
        << r.n << ',' << r.mode << ',' << r.value << ',' << r.symmetries << ',' << r.antipodal_symmetries << '\n';
    emit(g, out.str());
  }
  return kPass;
}

struct BuildArgs {
  int n = 0;
  int t = 0;
  int b = 1;
  int cls = 1;
  std::string partition = "random";
  bool override_schedule = false;
  bool certify = false;
};

int run_build(const Global& g, const BuildArgs& a) {
  const std::int64_t need = qtw::layout_size(a.t, a.b);
  const int n = a.n > 0 ? a.n : static_cast<int>(std::min<std::int64_t>(need, 1 << 10));
  if (n < need && !a.override_schedule) {
    std::cerr << "grid size " << n << " is below the required " << need << "; pass --override to run anyway\n";
    return kUsage;
  }
  const int vc = n * n * n;
  qtw::Partition2 part;
  if (a.partition == "random") {
    std::mt19937_64 rng(g.seed);
    part = qtw::Partition2::random(n, vc, rng);
  } else if (a.partition == "uniform1" || a.partition == "uniform2") {
    part = qtw::Partition2::uniform(n, vc, a.partition == "uniform1" ? 1 : 2);
  } else {
    part = qtw::partition_from_json_string(read_file(a.partition));
    if (part.side() != n) throw qtw::PreconditionError("partition file has a different grid size");
  }

  if (a.certify) {
    qtw::PartitionCertificate cert = qtw::certify_partition(part, a.t, g.limits());
    emit(g, nlohmann::json::parse(qtw::to_json_string(cert)).dump(2));
    return cert.certified() ? kPass : kInconclusive;
  }
  qtw::BuildOptions options;
  options.allow_sub_schedule = a.override_schedule;
  qtw::BuildResult r = qtw::find_blocked_or_bramble(part, a.t, a.b, a.cls, options);
  emit(g, nlohmann::json::parse(qtw::to_json_string(r)).dump(2));
  switch (r.kind) {
    case qtw::BuildResult::Kind::Staircase:
      return qtw::verify_staircase(part, *r.staircase, r.b, r.blocked_class) ? kPass : kViolation;
    case qtw::BuildResult::Kind::Bramble:
      return qtw::verify_bramble(part, *r.bramble).ok(a.t) ? kPass : kViolation;
    case qtw::BuildResult::Kind::Inconclusive:
      return kInconclusive;
  }
  return kInconclusive;
}

struct TreewidthArgs {
  std::string input;
  int qn = 0;
  int grid = 0;
  std::optional<int> at_most;
};

int run_treewidth(const Global& g, const TreewidthArgs& a) {
  qtw::Graph graph;
  if (a.qn > 0)
    graph = qtw::build_qn(a.qn).to_graph();
  else if (a.grid > 0)
    graph = qtw::triangulated_grid(a.grid);
  else if (!a.input.empty())
    graph = read_edge_list(read_file(a.input));
  else
    throw CLI::ValidationError("treewidth", "give --qn, --grid or --input");

  if (a.at_most) {
    qtw::WidthDecision dec = qtw::treewidth_at_most(graph, *a.at_most, g.limits());
    const char* verdict = dec.verdict == qtw::WidthVerdict::AtMost    ? "at_most"
                          : dec.verdict == qtw::WidthVerdict::Exceeds ? "exceeds"
                                                                      : "unknown";
    if (g.format == "json") {
      emit(g, nlohmann::json{{"k", *a.at_most}, {"verdict", verdict}, {"method", dec.method}}.dump(2));
    } else {
      emit(g, "k,verdict,method\n" + std::to_string(*a.at_most) + "," + verdict + "," + dec.method + "\n");
    }
    return dec.verdict == qtw::WidthVerdict::Unknown ? kInconclusive : kPass;
  }
  qtw::TreewidthResult r = qtw::exact_treewidth(graph, g.limits());
  std::string why;
  if (!qtw::validate_decomposition(graph, r.decomposition, &why)) {
    std::cerr << "decomposition failed validation: " << why << '\n';
    return kViolation;
  }
  if (g.format == "json") {
    emit(g, nlohmann::json{{"vertices", graph.vertex_count()}, {"edges", graph.edge_count()}, {"width", r.width},
                           {"decomposition", qtw::to_text(r.decomposition)}}
                .dump(2));
  } else {
    emit(g, "vertices,edges,width\n" + std::to_string(graph.vertex_count()) + "," +
                std::to_string(graph.edge_count()) + "," + std::to_string(r.width) + "\n");
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Treewidth experiments on the diagonal cube grid"};
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_option("--seed", global.seed, "random seed");
  app.add_option("--guard-vertices", global.guard, "largest component handed to the exact solver")
      ->check(CLI::Range(1, 64));
  app.add_option("--out", global.out, "write output to this file");
  app.add_option("--format", global.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  LemmaArgs lemma;
  auto* lemmas = app.add_subcommand("lemmas", "run the property suites");
  lemmas->add_option("--n", lemma.n, "cube side")->check(CLI::Range(1, 6));
  lemmas->add_option("--samples", lemma.samples, "randomized cases per suite")->check(CLI::NonNegativeNumber);
  lemmas->add_flag("--exhaustive", lemma.exhaustive, "run the exhaustive walk and triangle suites");
  lemmas->add_option("--max-length", lemma.max_length, "longest walk in the exhaustive suite")
      ->check(CLI::Range(0, 6));

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "audit separators of an n x n slab");
  audit_cmd->add_option("--n", audit.n, "slab size")->check(CLI::Range(1, 40));
  audit_cmd->add_option("--length", audit.length, "box length (0 picks a default)")->check(CLI::NonNegativeNumber);
  audit_cmd->add_option("--samples", audit.samples, "separators to sample")->check(CLI::PositiveNumber);
  audit_cmd->add_option("--separator", audit.separator, "plane or sampled")
      ->check(CLI::IsMember({"plane", "sampled"}));
  audit_cmd->add_option("--certify-width", audit.certify_width, "certify tw(G[X]) >= k");

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "min over partitions of the larger class treewidth");
  search_cmd->add_option("--n", search.n, "cube side")->check(CLI::Range(1, 12));
  search_cmd->add_option("--mode", search.mode, "exhaustive or heuristic")
      ->check(CLI::IsMember({"exhaustive", "heuristic"}));
  search_cmd->add_option("--iterations", search.iterations, "local search steps")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-n", search.max_n, "size guard for exhaustive mode")->check(CLI::Range(1, 4));

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "find a blocked staircase or a bramble");
  build_cmd->add_option("--n", build.n, "grid size (default: the required size)")->check(CLI::NonNegativeNumber);
  build_cmd->add_option("--t", build.t, "target order minus one")->check(CLI::Range(0, 8));
  build_cmd->add_option("--b", build.b, "blocking level")->check(CLI::Range(0, 16));
  build_cmd->add_option("--class", build.cls, "colour class")->check(CLI::Range(1, 2));
  build_cmd->add_option("--partition", build.partition, "random, uniform1, uniform2 or a JSON file");
  build_cmd->add_flag("--override", build.override_schedule, "allow grids below the required size");
  build_cmd->add_flag("--certify", build.certify, "certify tw >= t for some class instead");

  TreewidthArgs tw;
  auto* tw_cmd = app.add_subcommand("treewidth", "exact treewidth of a graph");
  tw_cmd->add_option("--input", tw.input, "edge list file");
  tw_cmd->add_option("--qn", tw.qn, "use Q_n")->check(CLI::Range(1, 6));
  tw_cmd->add_option("--grid", tw.grid, "use the triangulated m x m grid")->check(CLI::Range(1, 64));
  tw_cmd->add_option("--at-most", tw.at_most, "decide tw <= k instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*lemmas) return run_lemmas(global, lemma);
    if (*audit_cmd) return run_audit(global, audit);
    if (*search_cmd) return run_search(global, search);
    if (*build_cmd) return run_build(global, build);
    if (*tw_cmd) return run_treewidth(global, tw);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const qtw::PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kUsage;
  } catch (const qtw::GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kUsage;
}
