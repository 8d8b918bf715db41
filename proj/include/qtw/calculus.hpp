#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtw/graph.hpp"

namespace qtw {

// Vertex labels {-1, 0, +1, star}. Star is a separate tag, never an integer.
enum class LValue : std::int8_t { Minus = -1, Zero = 0, Plus = 1, Star = 2 };

inline bool is_star(LValue v) { return v == LValue::Star; }
// Integer value of a non-star label.
int numeric(LValue v);
LValue lvalue_from_int(int v);

// A total map V(G) -> {-1, 0, +1, star}.
class LFunction {
 public:
  LFunction() = default;
  LFunction(int vertex_count, LValue fill) : values_(vertex_count, fill) {}
  explicit LFunction(std::vector<LValue> values) : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  LValue operator[](Vertex v) const { return values_[v]; }
  LValue& operator[](Vertex v) { return values_[v]; }
  const std::vector<LValue>& values() const { return values_; }

  bool operator==(const LFunction&) const = default;

 private:
  std::vector<LValue> values_;
};

// The predicates restricted to the subgraph induced by `on`; an empty span
// means the whole vertex set.
bool is_continuous(const Graph& g, const LFunction& f, std::span<const Vertex> on = {});
bool is_holomorphic(const Graph& g, const LFunction& f, std::span<const Vertex> on = {});
bool is_entire(const Graph& g, const LFunction& f, std::span<const Vertex> on = {});

// Which end of each edge is its head. The default orientation points from the
// smaller to the larger vertex id.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(const Graph& g) : flipped_(g.edge_count(), 0) {}
  static Orientation random(const Graph& g, std::mt19937_64& rng);

  Vertex tail(const Graph& g, EdgeId e) const {
    return flipped_[e] ? g.edge(e).v : g.edge(e).u;
  }
  Vertex head(const Graph& g, EdgeId e) const {
    return flipped_[e] ? g.edge(e).u : g.edge(e).v;
  }
  int edge_count() const { return static_cast<int>(flipped_.size()); }

 private:
  std::vector<char> flipped_;
};

// Integer edge function.
class OneChain {
 public:
  OneChain() = default;
  explicit OneChain(int edge_count) : values_(edge_count, 0) {}

  int size() const { return static_cast<int>(values_.size()); }
  std::int64_t operator[](EdgeId e) const { return values_[e]; }
  std::int64_t& operator[](EdgeId e) { return values_[e]; }
  bool is_zero() const;

  OneChain& operator+=(const OneChain& other);
  OneChain& operator-=(const OneChain& other);
  bool operator==(const OneChain&) const = default;

 private:
  std::vector<std::int64_t> values_;
};

// Directed walk v0 e1 v1 ... en vn. A walk without vertices is the empty walk.
class Walk {
 public:
  Walk() = default;
  static Walk trivial(Vertex v);
  // Edges are looked up in g; throws if consecutive vertices are not adjacent.
  static Walk from_vertices(const Graph& g, std::span<const Vertex> vertices);
  static Walk from_parts(const Graph& g, std::vector<Vertex> vertices, std::vector<EdgeId> edges);

  bool empty() const { return vertices_.empty(); }
  int length() const { return static_cast<int>(edges_.size()); }
  Vertex start() const { return vertices_.front(); }
  Vertex end() const { return vertices_.back(); }
  bool is_closed() const { return !empty() && start() == end(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<EdgeId>& edges() const { return edges_; }
  VertexSet vertex_set() const { return make_vertex_set(vertices_); }

  Walk reversed() const;
  // Concatenation; this->end() must equal next.start().
  Walk then(const Walk& next) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<EdgeId> edges_;
};

// df(e) = f(head) - f(tail), or 0 when either end is star.
OneChain d(const Graph& g, const LFunction& f, const Orientation& orient);
// I_W: +1 per traversal toward the head, -1 per traversal toward the tail.
OneChain indicator(const Graph& g, const Walk& w, const Orientation& orient);
std::int64_t integrate(const Graph& g, const Walk& w, const OneChain& h, const Orientation& orient);

inline OneChain d(const Graph& g, const LFunction& f) { return d(g, f, Orientation(g)); }
inline OneChain indicator(const Graph& g, const Walk& w) { return indicator(g, w, Orientation(g)); }
inline std::int64_t integrate(const Graph& g, const Walk& w, const OneChain& h) {
  return integrate(g, w, h, Orientation(g));
}

bool is_triangle(const Walk& t);
// Triangle whose vertices carry a holomorphic restriction of f.
bool is_contractible(const Graph& g, const Walk& triangle, const LFunction& f);

// I_W equals the sum of the triangles' indicators and every triangle from
// index k on is f-contractible.
bool verify_almost_contractible(const Graph& g, const Walk& w, std::span<const Walk> triangles,
                                const LFunction& f, int k, const Orientation& orient);
inline bool verify_almost_contractible(const Graph& g, const Walk& w,
                                       std::span<const Walk> triangles, const LFunction& f,
                                       int k) {
  return verify_almost_contractible(g, w, triangles, f, k, Orientation(g));
}

// Q joins the starts of w1 and w2, R their ends; f must be constant and
// integer on V(Q) and on V(R), and Q w2 R^-1 w1^-1 must be (f,k)-almost
// contractible via `triangles`.
bool verify_almost_homotopic(const Graph& g, const Walk& w1, const Walk& w2, const Walk& q,
                             const Walk& r, std::span<const Walk> triangles, const LFunction& f,
                             int k, const Orientation& orient);
inline bool verify_almost_homotopic(const Graph& g, const Walk& w1, const Walk& w2,
                                    const Walk& q, const Walk& r,
                                    std::span<const Walk> triangles, const LFunction& f, int k) {
  return verify_almost_homotopic(g, w1, w2, q, r, triangles, f, k, Orientation(g));
}

// Doubled path weights 2*lambda(v_i) = f(v_{i+1}) - f(v_{i-1}) for the
// interior vertices of a path on which f is entire.
struct PathWeight {
  Vertex vertex;
  int doubled;
};
std::vector<PathWeight> path_weights(const Graph& g, const Walk& path, const LFunction& f);
// 2 * lambda(X) for X given as a membership mask.
std::int64_t doubled_weight_of(std::span<const PathWeight> weights, const std::vector<char>& in_set);

std::string to_json_string(const LFunction& f);
LFunction lfunction_from_json_string(const std::string& text);
std::string to_json_string(const Walk& w);
Walk walk_from_json_string(const Graph& g, const std::string& text);

}  // namespace qtw
