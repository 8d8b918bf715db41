#include <doctest.h>

#include <random>

#include "qtw/calculus.hpp"
#include "qtw/grid.hpp"

using namespace qtw;

namespace {

constexpr LValue M = LValue::Minus, Z = LValue::Zero, P = LValue::Plus, S = LValue::Star;

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph path(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

}  // namespace

TEST_CASE("smoothness predicates") {
  Graph g = path(3);
  CHECK(is_continuous(g, LFunction({P, Z, M})));
  CHECK_FALSE(is_continuous(g, LFunction({P, M, Z})));
  CHECK(is_continuous(g, LFunction({P, S, M})));
  CHECK_FALSE(is_holomorphic(g, LFunction({Z, S, P})));
  CHECK(is_holomorphic(g, LFunction({S, S, P})));
  CHECK_FALSE(is_entire(g, LFunction({S, S, P})));
  CHECK(is_entire(g, LFunction({Z, Z, P})));
  // Restricting to a vertex set ignores edges leaving it.
  std::vector<Vertex> on{0, 1};
  CHECK(is_entire(g, LFunction({P, Z, S}), on));
}

TEST_CASE("d ignores star edges and integrates along walks") {
  Graph g = path(4);
  LFunction f({M, Z, P, S});
  OneChain df = d(g, f);
  CHECK(df[*g.find_edge(0, 1)] == 1);
  CHECK(df[*g.find_edge(1, 2)] == 1);
  CHECK(df[*g.find_edge(2, 3)] == 0);

  std::vector<Vertex> forward{0, 1, 2};
  std::vector<Vertex> back_and_forth{0, 1, 0, 1, 2, 1};
  CHECK(integrate(g, Walk::from_vertices(g, forward), df) == 2);
  CHECK(integrate(g, Walk::from_vertices(g, back_and_forth), df) == 1);
  CHECK(integrate(g, Walk::trivial(2), df) == 0);
}

TEST_CASE("orientation flips d and the indicator together") {
  Graph g = build_qn(2).to_graph();
  std::mt19937_64 rng(5);
  LFunction f(8, Z);
  f[0] = M;
  f[7] = P;
  std::vector<Vertex> vs{0, 3, 7, 5, 4};
  Walk w = Walk::from_vertices(g, vs);
  for (int i = 0; i < 10; ++i) {
    Orientation o = Orientation::random(g, rng);
    CHECK(integrate(g, w, d(g, f, o), o) == numeric(f[4]) - numeric(f[0]));
    OneChain ind = indicator(g, w, o);
    std::int64_t pairing = 0;
    OneChain df = d(g, f, o);
    for (EdgeId e = 0; e < g.edge_count(); ++e) pairing += ind[e] * df[e];
    CHECK(pairing == integrate(g, w, df, o));
  }
}

TEST_CASE("walk construction") {
  Graph g = path(3);
  std::vector<Vertex> bad{0, 2};
  CHECK_THROWS_AS(Walk::from_vertices(g, bad), PreconditionError);
  std::vector<Vertex> vs{0, 1, 2};
  Walk w = Walk::from_vertices(g, vs);
  CHECK(w.length() == 2);
  CHECK(w.reversed().start() == 2);
  CHECK(w.then(w.reversed()).is_closed());
  CHECK(walk_from_json_string(g, to_json_string(w)).vertices() == w.vertices());
}

TEST_CASE("contractible triangles integrate to zero") {
  Graph g = triangle();
  std::vector<Vertex> vs{0, 1, 2, 0};
  Walk t = Walk::from_vertices(g, vs);
  CHECK(is_triangle(t));
  LFunction hol({P, Z, Z});
  CHECK(is_contractible(g, t, hol));
  CHECK(integrate(g, t, d(g, hol)) == 0);
  // 0-* edges break holomorphy; the integral is then +-1.
  LFunction cont({P, Z, S});
  CHECK_FALSE(is_contractible(g, t, cont));
  std::int64_t v = integrate(g, t, d(g, cont));
  CHECK((v == 1 || v == -1));
}

TEST_CASE("almost contractible certificates") {
  // A 4-cycle with a chord splits into two triangles.
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  std::vector<Vertex> loop{0, 1, 2, 3, 0};
  std::vector<Vertex> t1{0, 1, 2, 0};
  std::vector<Vertex> t2{0, 2, 3, 0};
  // The exceptions come first: only the first k triangles may be non-contractible.
  std::vector<Walk> tris{Walk::from_vertices(g, t2), Walk::from_vertices(g, t1)};
  Walk w = Walk::from_vertices(g, loop);
  LFunction f({Z, P, Z, S});
  CHECK(verify_almost_contractible(g, w, tris, f, 1));
  CHECK_FALSE(verify_almost_contractible(g, w, tris, f, 0));
  std::vector<Walk> late{Walk::from_vertices(g, t1), Walk::from_vertices(g, t2)};
  CHECK_FALSE(verify_almost_contractible(g, w, late, f, 1));
  CHECK(verify_almost_contractible(g, w, late, f, 2));
  // Wrong orientation of a triangle does not sum to the loop.
  std::vector<Walk> wrong{Walk::from_vertices(g, t1), Walk::from_vertices(g, t2).reversed()};
  CHECK_FALSE(verify_almost_contractible(g, w, wrong, f, 2));
}

TEST_CASE("almost homotopic walks need constant integer ends") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  std::vector<Vertex> a{0, 1}, b{3, 2}, q{0, 3}, r{1, 2};
  std::vector<Vertex> t1{0, 1, 2, 0}, t2{0, 2, 3, 0};
  std::vector<Walk> tris{Walk::from_vertices(g, t1).reversed(), Walk::from_vertices(g, t2).reversed()};
  Walk w1 = Walk::from_vertices(g, a), w2 = Walk::from_vertices(g, b);
  Walk wq = Walk::from_vertices(g, q), wr = Walk::from_vertices(g, r);
  LFunction f({Z, P, P, Z});
  CHECK(verify_almost_homotopic(g, w1, w2, wq, wr, tris, f, 0));
  LFunction g2({Z, P, P, M});
  CHECK_FALSE(verify_almost_homotopic(g, w1, w2, wq, wr, tris, g2, 2));
  CHECK_THROWS_AS(verify_almost_homotopic(g, w1, w2, wr, wq, tris, f, 0), PreconditionError);
}

TEST_CASE("path weights recover the integral of a starred copy") {
  Graph g = path(6);
  LFunction f({P, Z, Z, M, Z, P});
  std::vector<Vertex> vs{0, 1, 2, 3, 4, 5};
  Walk w = Walk::from_vertices(g, vs);
  auto weights = path_weights(g, w, f);
  REQUIRE(weights.size() == 4);
  CHECK(weights[0].doubled == -1);
  CHECK(weights[1].doubled == -1);
  CHECK(weights[2].doubled == 0);
  CHECK(weights[3].doubled == 2);
  LFunction g_fn({P, Z, S, M, Z, P});
  std::vector<char> x{0, 1, 0, 0, 1, 0};
  CHECK(integrate(g, w, d(g, g_fn)) == doubled_weight_of(weights, x));
  CHECK_THROWS_AS(path_weights(g, w, LFunction({P, S, Z, M, Z, P})), PreconditionError);
}

TEST_CASE("L-function JSON round trip") {
  LFunction f({M, Z, P, S});
  CHECK(lfunction_from_json_string(to_json_string(f)) == f);
}
