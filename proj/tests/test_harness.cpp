#include <doctest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"
#include "qtw/harness.hpp"

using namespace qtw;

namespace {

// Is there a partition of Q_n into two induced forests? Plain DFS over the
// vertices in id order with a union-find check at the leaves pruned by
// prefix checks; no symmetry reduction.
bool two_forests(int n) {
  Graph g = build_qn(n).to_graph();
  const int vc = g.vertex_count();
  std::vector<char> one(vc, 0), two(vc, 0);
  std::function<bool(int)> go = [&](int v) {
    if (v == vc) return true;
    for (int cls = 0; cls < 2; ++cls) {
      auto& side = cls == 0 ? one : two;
      side[v] = 1;
      if (oracle::induced_forest(g, side) && go(v + 1)) return true;
      side[v] = 0;
    }
    return false;
  };
  return go(0);
}

std::string archived_q3() {
  std::ifstream in(std::string(QTW_TEST_DATA) + "/q3_search.json");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("symmetries are verified automorphisms") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(verified_symmetries(n, false).size() == 6);
    CHECK(verified_symmetries(n, true).size() == 12);
  }
}

TEST_CASE("exhaustive search on Q_1 and Q_2") {
  SearchResult r1 = exhaustive_partition_search(1);
  CHECK(r1.value == 0);
  SearchResult r2 = exhaustive_partition_search(2);
  CHECK(r2.value == 1);
  CHECK(max_class_treewidth(r2.witness) == 1);
  // Brute force over all 256 colourings.
  Graph g = build_qn(2).to_graph();
  int best = 100;
  for (int mask = 0; mask < 256; ++mask) {
    int worst = -1;
    for (int cls = 0; cls < 2; ++cls) {
      std::vector<Vertex> vs;
      for (int v = 0; v < 8; ++v)
        if (((mask >> v) & 1) == cls) vs.push_back(v);
      worst = std::max(worst, oracle::brute_force_treewidth(induced_subgraph(g, vs).graph));
    }
    best = std::min(best, worst);
  }
  CHECK(best == r2.value);
}

TEST_CASE("exhaustive search on Q_3 matches the archived value") {
  SearchResult r = exhaustive_partition_search(3);
  CHECK(max_class_treewidth(r.witness) == r.value);
  auto archived = nlohmann::json::parse(archived_q3());
  CHECK(archived["value"].get<int>() == r.value);
  CHECK(to_json_string(r) == to_json_string(exhaustive_partition_search(3)));
  // Independent check of the lower side: no split into two forests.
  CHECK_FALSE(two_forests(3));
  CHECK(two_forests(2));
}

TEST_CASE("exhaustive search respects its guard") {
  CHECK_THROWS_AS(exhaustive_partition_search(4), GuardExceeded);
  CHECK_THROWS_AS(exhaustive_partition_search(5, {}, 5), GuardExceeded);
}

TEST_CASE("heuristic search is deterministic") {
  SearchResult a = heuristic_partition_search(5, 42, 300);
  SearchResult b = heuristic_partition_search(5, 42, 300);
  CHECK(to_json_string(a) == to_json_string(b));
  CHECK(a.value >= 1);
}

TEST_CASE("property suites pass at small scale") {
  CHECK(suite_walk_integrals(2, 3).ok());
  CHECK(suite_triangles(2).ok());
  CHECK(suite_homotopy(100, 1).ok());
  CHECK(suite_path_weights(100, 2).ok());
  CHECK(suite_balanced_separation(200, 3).ok());
  CHECK(suite_minimal_separators(20, 4).ok());
  CHECK(suite_separator_mass(2, 5, 20, 5).ok());
  std::string csv = suites_csv({suite_triangles(2)});
  CHECK(csv.rfind("suite,cases,violations,special\ntriangles,", 0) == 0);
}

TEST_CASE("audits are deterministic for a seed") {
  AuditConfig config;
  config.n = 3;
  config.samples = 5;
  config.seed = 9;
  auto a = run_audits(config);
  auto b = run_audits(config);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(to_json_string(a[i]) == to_json_string(b[i]));
    CHECK(a[i].pass());
    CHECK(a[i].lambda_total2 == 18);
  }
  CHECK(default_box_length(2) == 5);
  CHECK(default_box_length(3) == 3);
}
