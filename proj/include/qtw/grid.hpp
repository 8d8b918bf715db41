#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtw/graph.hpp"

namespace qtw {

struct Coord {
  int x = 0;
  int y = 0;
  int z = 0;

  auto operator<=>(const Coord&) const = default;
  friend Coord operator+(Coord a, Coord b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Coord operator-(Coord a, Coord b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
};

std::string to_string(Coord c);

// The seven non-zero vectors of {0,1}^3.
inline constexpr std::array<Coord, 7> kForwardSteps = {{
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}};

// Adjacency rule of Q_n: distinct, and one is reached from the other by a
// vector in {0,1}^3.
bool qn_adjacent(Coord a, Coord b);

inline bool in_cube(int n, Coord c) {
  return c.x >= 0 && c.y >= 0 && c.z >= 0 && c.x < n && c.y < n && c.z < n;
}

// Identifier of c inside the full Q_n: x + n*y + n^2*z.
inline std::int64_t qn_index(int n, Coord c) {
  return c.x + static_cast<std::int64_t>(n) * (c.y + static_cast<std::int64_t>(n) * c.z);
}

// Q_n or an induced subgraph of it. Full grids compute adjacency on the fly;
// induced subgraphs store it. Vertex ids of an induced subgraph follow the
// order of qn_index.
class GridGraph {
 public:
  static GridGraph full(int n);
  static GridGraph induced(int n, std::vector<Coord> coords);

  int side() const { return n_; }
  bool is_full() const { return full_; }
  int vertex_count() const;
  Coord coord(Vertex v) const;
  // -1 when c is not a vertex.
  Vertex index(Coord c) const;
  bool contains(Coord c) const { return index(c) >= 0; }
  std::vector<Vertex> neighbors(Vertex v) const;
  std::vector<Coord> coords() const;
  std::int64_t edge_count() const;

  // Adjacency as a plain Graph (materialised for full grids).
  Graph to_graph() const;
  // Stored adjacency; only available for induced subgraphs.
  const Graph& graph() const;

  // Vertex ids sorted by (x, y, z).
  std::vector<Vertex> lexicographic_order() const;

 private:
  int n_ = 0;
  bool full_ = true;
  std::vector<Coord> coords_;
  std::vector<std::int64_t> keys_;  // qn_index of coords_, ascending
  Graph graph_;
};

GridGraph build_qn(int n);
// Induced m^3 cube anchored at v.
GridGraph subgrid(const GridGraph& g, Coord v, int m);
// Induced subgraph on coordinate `axis` (0=x,1=y,2=z) equal to `value`.
GridGraph plane(const GridGraph& g, int axis, int value);
// The plane y=0 of Q_m: the triangulated m x m grid, indexed x + m*z.
Graph triangulated_grid(int m);

std::vector<Coord> b_square(Coord v, int b);

// Path with x increasing by one per step and y, z non-decreasing by at most one.
class Staircase {
 public:
  explicit Staircase(std::vector<Coord> vertices);
  static bool is_valid(std::span<const Coord> vertices);

  const std::vector<Coord>& vertices() const { return vertices_; }
  int length() const { return static_cast<int>(vertices_.size()); }
  Coord front() const { return vertices_.front(); }
  Coord back() const { return vertices_.back(); }
  // Vertex at a given x, if any.
  std::optional<Coord> at_x(int x) const;
  Staircase translated(Coord offset) const;

 private:
  std::vector<Coord> vertices_;
};

// Induced subgraph of Q_N on the union of b-squares along a staircase.
struct Enlargement {
  Staircase base;
  int b = 0;
  GridGraph graph;
  VertexSet left;   // square of base.front()
  VertexSet right;  // square of base.back()

  struct Position {
    int step;
    int dy;
    int dz;
  };
  std::optional<Position> locate(Coord c) const;
};

// Requires every square to lie inside g.
Enlargement enlarge(const GridGraph& g, const Staircase& path, int b);

// Projection of a vertex of a (b+1)-enlargement onto the b-enlargement of the
// same staircase (e.b >= 1 is the b+1 of the caller).
Coord project(Coord u, const Enlargement& e);

// Anchor p_d(j, k) = (4dj + 4dk, 2dj + dk, dj + 2dk).
Coord anchor(int d, int j, int k);

// Staircase with `first` as its initial and `second` as its final segment,
// ordered by x. The connector advances x by one per step and moves y, then z,
// greedily toward the start of the later staircase. When `g` is given the
// b-enlargement of the result must fit inside it.
Staircase join_staircases(const Staircase& first, const Staircase& second);
Staircase join_staircases(const GridGraph& g, const Staircase& first, const Staircase& second,
                          int b);

// Coordinate permutation: result component k is c[perm[k]].
Coord permute(Coord c, const std::array<int, 3>& perm);
// (x,y,z) -> (n-1-x, n-1-y, n-1-z)
Coord antipode(int n, Coord c);
// Does the vertex map (given per vertex id) preserve adjacency both ways?
bool is_automorphism(const GridGraph& g, std::span<const Vertex> mapping);

std::string to_json_string(const GridGraph& g);
GridGraph grid_from_json_string(const std::string& text);
std::string to_dot(const GridGraph& g, const std::string& name = "Q");

}  // namespace qtw
