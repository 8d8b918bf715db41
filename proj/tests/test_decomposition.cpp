#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qtw/decomposition.hpp"
#include "qtw/grid.hpp"

using namespace qtw;

namespace {

Graph complete(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph cycle(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph path(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

}  // namespace

TEST_CASE("known treewidths") {
  CHECK(exact_treewidth(Graph(0)).width == -1);
  CHECK(exact_treewidth(Graph(5)).width == 0);
  CHECK(exact_treewidth(path(12)).width == 1);
  CHECK(exact_treewidth(cycle(9)).width == 2);
  CHECK(exact_treewidth(complete(6)).width == 5);
  Graph q2 = build_qn(2).to_graph();
  CHECK(exact_treewidth(q2).width == oracle::brute_force_treewidth(q2));
  CHECK(exact_treewidth(triangulated_grid(1)).width == 0);
  for (int m = 2; m <= 5; ++m) CHECK(exact_treewidth(triangulated_grid(m)).width == m);
}

TEST_CASE("exact treewidth agrees with brute force on random graphs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    Graph g = oracle::random_graph(n, 0.2 + 0.1 * (i % 6), rng);
    TreewidthResult r = exact_treewidth(g);
    CHECK(r.width == oracle::brute_force_treewidth(g));
    std::string why;
    CHECK_MESSAGE(validate_decomposition(g, r.decomposition, &why), why);
    CHECK(r.decomposition.width() == r.width);
    CHECK(ordering_width(g, r.order) == r.width);
  }
}

TEST_CASE("ordering width matches an explicit fill computation") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    Graph g = oracle::random_graph(10, 0.35, rng);
    std::vector<Vertex> order(10);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(ordering_width(g, order) == oracle::elimination_width(oracle::matrix(g), order));
    TreeDecomposition td = decomposition_from_ordering(g, order);
    CHECK(validate_decomposition(g, td));
    CHECK(td.width() == ordering_width(g, order));
  }
}

TEST_CASE("bounds bracket the exact width") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    Graph g = oracle::random_graph(12, 0.3, rng);
    int tw = exact_treewidth(g).width;
    CHECK(minor_min_width(g) <= tw);
    CHECK(min_fill_ordering(g).width >= tw);
  }
}

TEST_CASE("validation rejects broken decompositions") {
  Graph g = cycle(4);
  TreeDecomposition ok{{{0, 1, 2}, {0, 2, 3}}, {{0, 1}}};
  CHECK(validate_decomposition(g, ok));
  TreeDecomposition missing_edge{{{0, 1, 2}, {2, 3}}, {{0, 1}}};
  CHECK_FALSE(validate_decomposition(g, missing_edge));
  TreeDecomposition split{{{0, 1}, {1, 2, 3}, {3, 0}}, {{0, 1}, {1, 2}}};
  std::string why;
  CHECK_FALSE(validate_decomposition(g, split, &why));
  CHECK_FALSE(why.empty());
  TreeDecomposition not_tree{{{0, 1, 2}, {0, 2, 3}}, {}};
  CHECK_FALSE(validate_decomposition(g, not_tree));
}

TEST_CASE("guards are explicit") {
  SolverLimits tight;
  tight.max_component_vertices = 8;
  CHECK_THROWS_AS(exact_treewidth(build_qn(3).to_graph(), tight), GuardExceeded);
  // Small components stay within the guard even if the graph is large.
  CHECK(exact_treewidth(Graph(100), tight).width == 0);
}

TEST_CASE("low width decisions are exact at any size") {
  Graph grid = triangulated_grid(9);
  CHECK(treewidth_at_most(grid, 1).verdict == WidthVerdict::Exceeds);
  CHECK(treewidth_at_most(grid, 2).verdict == WidthVerdict::Exceeds);
  Graph long_cycle = cycle(500);
  WidthDecision two = treewidth_at_most(long_cycle, 2);
  REQUIRE(two.verdict == WidthVerdict::AtMost);
  REQUIRE(two.witness.has_value());
  CHECK(validate_decomposition(long_cycle, *two.witness));
  CHECK(two.witness->width() <= 2);
  CHECK(treewidth_at_most(long_cycle, 1).verdict == WidthVerdict::Exceeds);
  CHECK(treewidth_at_most(Graph(0), -1).verdict == WidthVerdict::AtMost);
}

TEST_CASE("balanced separation of a star splits the leaves") {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int leaf = 1; leaf <= 6; ++leaf) e.emplace_back(0, leaf);
  Graph star(7, e);
  TreeDecomposition td = exact_treewidth(star).decomposition;
  WeightFunction w = WeightFunction::uniform(7, 1);
  w.numerator[0] = 0;
  BalancedSeparation bs = balanced_separation(star, td, w);
  CHECK(is_separation(star, bs.separation));
  VertexSet cut = set_intersection(bs.separation.k, bs.separation.l);
  CHECK(cut.size() <= 2);
  std::int64_t left = w.numerator_of(set_difference(bs.separation.k, bs.separation.l));
  CHECK(3 * left >= 6);
  CHECK(3 * left <= 12);
}

TEST_CASE("balanced separation of a long path") {
  Graph p = path(12);
  TreeDecomposition td = exact_treewidth(p).decomposition;
  WeightFunction w = WeightFunction::uniform(12, 1);
  BalancedSeparation bs = balanced_separation(p, td, w);
  std::int64_t left = w.numerator_of(set_difference(bs.separation.k, bs.separation.l));
  CHECK(is_separation(p, bs.separation));
  CHECK(3 * left >= 12);
  CHECK(3 * left <= 24);
  CHECK(set_intersection(bs.separation.k, bs.separation.l).size() <= 2);
}

TEST_CASE("balanced separation with fractional and negative weights") {
  Graph p = path(12);
  TreeDecomposition td = exact_treewidth(p).decomposition;
  WeightFunction w{{2, 2, -1, 2, 2, 2, 1, 2, 2, -2, 2, 2}, 2};
  BalancedSeparation bs = balanced_separation(p, td, w);
  const std::int64_t total = w.numerator_total();
  std::int64_t left = w.numerator_of(set_difference(bs.separation.k, bs.separation.l));
  CHECK(3 * left >= total);
  CHECK(3 * left <= 2 * total);
  WeightFunction too_light = WeightFunction::uniform(12, 0);
  CHECK_THROWS_AS(balanced_separation(p, td, too_light), PreconditionError);
  WeightFunction too_heavy = WeightFunction::uniform(12, 2);
  CHECK_THROWS_AS(balanced_separation(p, td, too_heavy), PreconditionError);
}

TEST_CASE("bramble order is the minimum hitting set") {
  Graph g = triangulated_grid(3);
  Bramble crosses;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      std::vector<Vertex> s;
      for (int x = 0; x < 3; ++x) s.push_back(x + 3 * r);
      for (int z = 0; z < 3; ++z) s.push_back(c + 3 * z);
      crosses.push_back(make_vertex_set(s));
    }
  CHECK(validate_bramble(g, crosses));
  CHECK(bramble_order(crosses) == 3);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::vector<int>> sets;
    Bramble b;
    for (int s = 0; s < 6; ++s) {
      std::vector<Vertex> vs;
      for (int v = 0; v < 12; ++v)
        if (rng() % 4 == 0) vs.push_back(v);
      if (vs.empty()) vs.push_back(static_cast<Vertex>(rng() % 12));
      sets.push_back(vs);
      b.push_back(make_vertex_set(vs));
    }
    CHECK(bramble_order(b) == oracle::brute_force_hitting_set(sets));
  }
  // Disconnected or non-touching families are not brambles.
  CHECK_FALSE(validate_bramble(g, {{0, 8}}));
  CHECK_FALSE(validate_bramble(g, {{0}, {8}}));
}

TEST_CASE("text and JSON round trips") {
  Graph g = cycle(7);
  TreeDecomposition td = exact_treewidth(g).decomposition;
  TreeDecomposition back = decomposition_from_text(to_text(td));
  CHECK(back.bags == td.bags);
  CHECK(back.tree_edges == td.tree_edges);
  Bramble b{{0, 1}, {1, 2, 3}};
  CHECK(bramble_from_json_string(to_json_string(b)) == b);
}
