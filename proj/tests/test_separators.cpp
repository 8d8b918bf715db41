#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qtw/separators.hpp"
#include "qtw/slab.hpp"

using namespace qtw;

namespace {

bool separates_by_search(const Graph& g, const VertexSet& s1, const VertexSet& s2, const VertexSet& x) {
  auto a = oracle::matrix(g);
  std::vector<char> blocked = membership(g.vertex_count(), x);
  auto seen = oracle::reach(a, std::vector<int>(s1.begin(), s1.end()), blocked);
  for (Vertex v : s2)
    if (seen[v]) return false;
  return true;
}

// Smallest separator avoiding both sides, by trying all subsets.
int brute_force_cut(const Graph& g, const VertexSet& s1, const VertexSet& s2) {
  std::vector<Vertex> free;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!std::binary_search(s1.begin(), s1.end(), v) && !std::binary_search(s2.begin(), s2.end(), v))
      free.push_back(v);
  int best = -1;
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    int size = __builtin_popcount(mask);
    if (best >= 0 && size >= best) continue;
    VertexSet x;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask & (1u << i)) x.push_back(free[i]);
    if (separates_by_search(g, s1, s2, x)) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("min side separator matches brute force on random graphs") {
  std::mt19937_64 rng(21);
  int tested = 0;
  while (tested < 40) {
    Graph g = oracle::random_graph(12, 0.3, rng);
    VertexSet s1{0, 1}, s2{10, 11};
    bool adjacent = false;
    for (Vertex a : s1)
      for (Vertex b : s2) adjacent = adjacent || g.adjacent(a, b);
    if (adjacent) {
      CHECK_THROWS_AS(min_side_separator(g, s1, s2), PreconditionError);
      continue;
    }
    ++tested;
    SideCut cut = min_side_separator(g, s1, s2);
    CHECK(static_cast<int>(cut.cut.size()) == brute_force_cut(g, s1, s2));
    CHECK(cut.paths.size() == cut.cut.size());
    CHECK(separates_by_search(g, s1, s2, cut.cut));
  }
}

TEST_CASE("box slab cut equals the number of straight lines") {
  for (int n : {1, 2, 3, 4}) {
    Slab s = box_slab(n, 2 * n + 1);
    SideCut cut = min_side_separator(s.graph, s.s1, s.s2);
    // n^2 straight x-lines are vertex disjoint, and a constant-x plane has n^2
    // vertices, so both bounds meet at n^2.
    CHECK(cut.cut.size() == static_cast<std::size_t>(n * n));
    CHECK(is_separator(s.graph, s.s1, s.s2, cut.cut));
  }
}

TEST_CASE("separator predicate and side overlap") {
  Graph p(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  VertexSet s1{0}, s2{4};
  CHECK(is_separator(p, s1, s2, VertexSet{2}));
  CHECK_FALSE(is_separator(p, s1, s2, VertexSet{}));
  CHECK_THROWS_AS(is_separator(p, s1, s2, VertexSet{0}), PreconditionError);
  CHECK_THROWS_AS(min_side_separator(p, VertexSet{0, 1}, VertexSet{1, 4}), PreconditionError);
}

TEST_CASE("minimalize keeps a minimal subset") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) {
    Graph g = oracle::random_graph(14, 0.25, rng);
    VertexSet s1{0}, s2{13};
    if (g.adjacent(0, 13)) continue;
    VertexSet x;
    for (Vertex v = 1; v < 13; ++v) x.push_back(v);
    VertexSet m = minimalize(g, s1, s2, x);
    CHECK(std::includes(x.begin(), x.end(), m.begin(), m.end()));
    CHECK(separates_by_search(g, s1, s2, m));
    for (Vertex v : m) {
      VertexSet smaller = set_difference(m, VertexSet{v});
      CHECK_FALSE(separates_by_search(g, s1, s2, smaller));
    }
    CHECK(is_minimal_separator(g, s1, s2, m));
  }
}

TEST_CASE("sampled separators of enlargements are minimal and connected") {
  GridGraph host = build_qn(10);
  std::mt19937_64 rng(8);
  Staircase st({{1, 1, 1}, {2, 2, 1}, {3, 2, 2}, {4, 3, 2}, {5, 3, 2}, {6, 4, 3}});
  for (int b = 0; b <= 2; ++b) {
    LocalEnlargement le = local_enlargement(host, st, b);
    std::vector<Vertex> plane;
    for (Coord c : b_square(st.vertices()[3], b)) plane.push_back(le.enlargement.graph.index(c));
    for (int i = 0; i < 20; ++i) {
      VertexSet x = sample_separator(le.graph, le.enlargement.left, le.enlargement.right,
                                     make_vertex_set(plane), rng);
      CHECK(is_minimal_separator(le.graph, le.enlargement.left, le.enlargement.right, x));
      CHECK(separator_is_connected(le.graph, x));
    }
  }
}

TEST_CASE("blocked staircases") {
  GridGraph host = build_qn(6);
  Staircase st({{1, 1, 1}, {2, 1, 1}, {3, 1, 1}, {4, 1, 1}});
  const int vc = host.vertex_count();

  Partition2 all2 = Partition2::uniform(6, vc, 2);
  CHECK_FALSE(is_blocked(host, st, 1, 1, all2));
  auto path = unblocking_path(host, st, 1, 1, all2);
  REQUIRE(path.size() >= 2);
  CHECK(host.coord(path.front()).x == 1);
  CHECK(host.coord(path.back()).x == 4);
  CHECK_THROWS_AS(blocked_component(host, st, 1, 1, all2), PreconditionError);

  // Colouring the x = 3 plane with class 1 blocks every route.
  Partition2 wall = all2;
  for (Vertex v = 0; v < vc; ++v)
    if (host.coord(v).x == 3) wall.set(v, 1);
  CHECK(is_blocked(host, st, 1, 1, wall));
  CHECK(unblocking_path(host, st, 1, 1, wall).empty());
  VertexSet comp = blocked_component(host, st, 1, 1, wall);
  for (Vertex v : comp) {
    CHECK(wall[v] == 1);
    CHECK(host.coord(v).x == 3);
  }
  CHECK(comp.size() == 9);  // the 2-square at x = 3
}

TEST_CASE("partition JSON") {
  std::mt19937_64 rng(2);
  Partition2 p = Partition2::random(3, 27, rng);
  Partition2 back = partition_from_json_string(to_json_string(p));
  CHECK(back.classes() == p.classes());
  CHECK(back.side() == 3);
  CHECK_THROWS(partition_from_json_string(R"({"n": 2, "class": [1, 2]})"));
  CHECK_THROWS(Partition2(2, std::vector<std::int8_t>(8, 3)));
}
