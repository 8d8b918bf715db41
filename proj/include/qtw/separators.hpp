#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qtw/graph.hpp"
#include "qtw/grid.hpp"

namespace qtw {

// Two-colouring of the vertices of a graph, classes 1 and 2.
class Partition2 {
 public:
  Partition2() = default;
  Partition2(int n, std::vector<std::int8_t> classes);
  static Partition2 uniform(int n, int vertex_count, int cls);
  static Partition2 random(int n, int vertex_count, std::mt19937_64& rng);

  int side() const { return n_; }
  int vertex_count() const { return static_cast<int>(class_.size()); }
  int operator[](Vertex v) const { return class_[v]; }
  void set(Vertex v, int cls);
  VertexSet members(int cls) const;
  const std::vector<std::int8_t>& classes() const { return class_; }

 private:
  int n_ = 0;
  std::vector<std::int8_t> class_;
};

std::string to_json_string(const Partition2& p);
Partition2 partition_from_json_string(const std::string& text);

// Does every s1-s2 path of g meet x? Throws if x meets a side.
bool is_separator(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                  std::span<const Vertex> x);

struct SideCut {
  VertexSet cut;
  // Vertex-disjoint paths, each from s1 to s2 with interior off the sides;
  // there are exactly cut.size() of them.
  std::vector<std::vector<Vertex>> paths;
};

// Minimum vertex set off the sides meeting every s1-s2 path (unit vertex
// capacities, node splitting). Throws when a side vertex is adjacent to the
// other side or the sides overlap.
SideCut min_side_separator(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2);

// Inclusion-minimal separator inside x, found by trying to drop vertices in
// `order` (ascending vertex id when empty). Throws if x is not a separator.
VertexSet minimalize(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                     std::span<const Vertex> x, std::span<const Vertex> order = {});
// Is x inclusion-minimal? (every single-vertex removal breaks separation)
bool is_minimal_separator(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                          std::span<const Vertex> x);

// The induced subgraph on a minimal separator is connected.
bool separator_is_connected(const Graph& g, std::span<const Vertex> x);

// Family of separators for property suites: a random subset of the interior
// completed by a minimum cut of the rest, or a noisy copy of `plane`; both
// minimalised in a random order.
VertexSet sample_separator(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                           std::span<const Vertex> plane, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Blocking in enlargements of staircases inside a host grid. The partition
// is indexed by host vertex ids.

struct LocalEnlargement {
  Enlargement enlargement;
  Graph graph;                 // adjacency of enlargement.graph
  std::vector<Vertex> host;    // local id -> host id
};

LocalEnlargement local_enlargement(const GridGraph& host, const Staircase& path, int b);

// Every left-right path of the b-enlargement meets A_i minus the sides.
bool is_blocked(const GridGraph& host, const Staircase& path, int b, int cls,
                const Partition2& part);

// A left-right path of the b-enlargement whose vertices strictly between the
// sides avoid A_i, trimmed to start at its last left-side vertex and end at
// its first right-side vertex. Empty when the staircase is blocked.
std::vector<Vertex> unblocking_path(const GridGraph& host, const Staircase& path, int b, int cls,
                                    const Partition2& part);

// For a (b,i)-blocked staircase: the component of the (b+1)-enlargement
// induced on A_i that contains every left-right path there. Host ids.
// Throws PreconditionError when the staircase is not blocked.
VertexSet blocked_component(const GridGraph& host, const Staircase& path, int b, int cls,
                            const Partition2& part);

}  // namespace qtw
