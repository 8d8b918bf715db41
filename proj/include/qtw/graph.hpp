#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtw {

using Vertex = int;
using EdgeId = int;
using VertexSet = std::vector<Vertex>;  // sorted, no duplicates

// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an exponential routine is asked to run beyond its size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  Vertex u;
  Vertex v;  // u < v; the stored order is the default orientation u -> v
};

struct Incidence {
  Vertex to;
  EdgeId edge;
};

// Simple undirected graph on vertices 0..n-1. Immutable after construction;
// incidence lists are sorted by neighbour.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count) : Graph(vertex_count, {}) {}
  Graph(int vertex_count, std::vector<std::pair<Vertex, Vertex>> edges);

  int vertex_count() const { return static_cast<int>(incidence_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Incidence> incident(Vertex v) const { return incidence_[v]; }
  int degree(Vertex v) const { return static_cast<int>(incidence_[v].size()); }
  int max_degree() const;

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

  // Vertex other than `from` on edge e.
  Vertex opposite(EdgeId e, Vertex from) const {
    return edges_[e].u == from ? edges_[e].v : edges_[e].u;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incidence_;
};

// Induced subgraph together with the map back to the parent's vertex ids.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> original;  // local id -> parent id
  std::vector<int> local;        // parent id -> local id, or -1

  Vertex to_local(Vertex parent) const { return local[parent]; }
  VertexSet to_parent(std::span<const Vertex> local_ids) const;
};

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

VertexSet make_vertex_set(std::vector<Vertex> vertices);
VertexSet set_union(std::span<const Vertex> a, std::span<const Vertex> b);
VertexSet set_difference(std::span<const Vertex> a, std::span<const Vertex> b);
VertexSet set_intersection(std::span<const Vertex> a, std::span<const Vertex> b);
std::vector<char> membership(int vertex_count, std::span<const Vertex> vertices);

// Vertices reachable from `sources` without entering a vertex marked in
// `blocked` (blocked sources are not expanded).
std::vector<char> reachable(const Graph& g, std::span<const Vertex> sources,
                            const std::vector<char>& blocked = {});

bool is_connected(const Graph& g);
// Is the induced subgraph on `vertices` connected (empty set counts as connected)?
bool is_connected_subset(const Graph& g, std::span<const Vertex> vertices);
// Component label per vertex (labels 0..k-1); returns k.
int connected_components(const Graph& g, std::vector<int>& label);
bool is_forest(const Graph& g);

std::string to_dot(const Graph& g, const std::string& name = "G");

}  // namespace qtw
