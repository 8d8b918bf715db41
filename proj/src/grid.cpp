#include "qtw/grid.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace qtw {

std::string to_string(Coord c) {
  std::ostringstream out;
  out << '(' << c.x << ',' << c.y << ',' << c.z << ')';
  return out.str();
}

bool qn_adjacent(Coord a, Coord b) {
  if (a == b) return false;
  Coord d = b - a;
  auto unit = [](int v) { return v == 0 || v == 1; };
  if (unit(d.x) && unit(d.y) && unit(d.z)) return true;
  return unit(-d.x) && unit(-d.y) && unit(-d.z);
}

// ---------------------------------------------------------------------------

GridGraph GridGraph::full(int n) {
  if (n < 1) throw PreconditionError("Q_n needs n >= 1");
  GridGraph g;
  g.n_ = n;
  g.full_ = true;
  return g;
}

GridGraph GridGraph::induced(int n, std::vector<Coord> coords) {
  if (n < 1) throw PreconditionError("Q_n needs n >= 1");
  GridGraph g;
  g.n_ = n;
  g.full_ = false;
  for (Coord c : coords)
    if (!in_cube(n, c)) throw PreconditionError("coordinate " + to_string(c) + " outside Q_n");
  std::sort(coords.begin(), coords.end(), [n](Coord a, Coord b) {
    return qn_index(n, a) < qn_index(n, b);
  });
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  g.coords_ = std::move(coords);
  g.keys_.reserve(g.coords_.size());
  for (Coord c : g.coords_) g.keys_.push_back(qn_index(n, c));

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < static_cast<Vertex>(g.coords_.size()); ++v) {
    for (Coord step : kForwardSteps) {
      Vertex w = g.index(g.coords_[v] + step);
      if (w >= 0) edges.emplace_back(v, w);
    }
  }
  g.graph_ = Graph(static_cast<int>(g.coords_.size()), std::move(edges));
  return g;
}

int GridGraph::vertex_count() const {
  return full_ ? n_ * n_ * n_ : static_cast<int>(coords_.size());
}

Coord GridGraph::coord(Vertex v) const {
  if (!full_) return coords_[v];
  return {v % n_, (v / n_) % n_, v / (n_ * n_)};
}

Vertex GridGraph::index(Coord c) const {
  if (!in_cube(n_, c)) return -1;
  std::int64_t key = qn_index(n_, c);
  if (full_) return static_cast<Vertex>(key);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return -1;
  return static_cast<Vertex>(it - keys_.begin());
}

std::vector<Vertex> GridGraph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  if (!full_) {
    for (const Incidence& inc : graph_.incident(v)) out.push_back(inc.to);
    return out;
  }
  Coord c = coord(v);
  for (Coord step : kForwardSteps) {
    if (Vertex w = index(c + step); w >= 0) out.push_back(w);
    if (Vertex w = index(c - step); w >= 0) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Coord> GridGraph::coords() const {
  if (!full_) return coords_;
  std::vector<Coord> out;
  out.reserve(vertex_count());
  for (Vertex v = 0; v < vertex_count(); ++v) out.push_back(coord(v));
  return out;
}

std::int64_t GridGraph::edge_count() const {
  if (!full_) return graph_.edge_count();
  std::int64_t total = 0;
  for (Coord d : kForwardSteps) {
    std::int64_t term = 1;
    for (int k : {d.x, d.y, d.z}) term *= k ? (n_ - 1) : n_;
    total += term;
  }
  return total;
}

Graph GridGraph::to_graph() const {
  if (!full_) return graph_;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    Coord c = coord(v);
    for (Coord step : kForwardSteps)
      if (Vertex w = index(c + step); w >= 0) edges.emplace_back(v, w);
  }
  return Graph(vertex_count(), std::move(edges));
}

const Graph& GridGraph::graph() const {
  if (full_) throw PreconditionError("full grids do not store adjacency; use to_graph()");
  return graph_;
}

std::vector<Vertex> GridGraph::lexicographic_order() const {
  std::vector<Vertex> order(vertex_count());
  for (Vertex v = 0; v < vertex_count(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [this](Vertex a, Vertex b) { return coord(a) < coord(b); });
  return order;
}

// ---------------------------------------------------------------------------

GridGraph build_qn(int n) { return GridGraph::full(n); }

GridGraph subgrid(const GridGraph& g, Coord v, int m) {
  if (m < 1) throw PreconditionError("subgrid side must be positive");
  std::vector<Coord> coords;
  coords.reserve(static_cast<std::size_t>(m) * m * m);
  for (int dz = 0; dz < m; ++dz)
    for (int dy = 0; dy < m; ++dy)
      for (int dx = 0; dx < m; ++dx) {
        Coord c = v + Coord{dx, dy, dz};
        if (!g.contains(c)) throw PreconditionError("subgrid at " + to_string(v) + " leaves the grid");
        coords.push_back(c);
      }
  return GridGraph::induced(g.side(), std::move(coords));
}

GridGraph plane(const GridGraph& g, int axis, int value) {
  if (axis < 0 || axis > 2) throw PreconditionError("axis must be 0, 1 or 2");
  std::vector<Coord> coords;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    Coord c = g.coord(v);
    int k = axis == 0 ? c.x : axis == 1 ? c.y : c.z;
    if (k == value) coords.push_back(c);
  }
  return GridGraph::induced(g.side(), std::move(coords));
}

Graph triangulated_grid(int m) {
  if (m < 1) throw PreconditionError("grid side must be positive");
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto id = [m](int x, int z) { return x + m * z; };
  for (int z = 0; z < m; ++z)
    for (int x = 0; x < m; ++x) {
      if (x + 1 < m) edges.emplace_back(id(x, z), id(x + 1, z));
      if (z + 1 < m) edges.emplace_back(id(x, z), id(x, z + 1));
      if (x + 1 < m && z + 1 < m) edges.emplace_back(id(x, z), id(x + 1, z + 1));
    }
  return Graph(m * m, std::move(edges));
}

std::vector<Coord> b_square(Coord v, int b) {
  if (b < 0) throw PreconditionError("square size must be non-negative");
  std::vector<Coord> out;
  out.reserve(static_cast<std::size_t>(b + 1) * (b + 1));
  for (int dy = 0; dy <= b; ++dy)
    for (int dz = 0; dz <= b; ++dz) out.push_back(v + Coord{0, dy, dz});
  return out;
}

// ---------------------------------------------------------------------------

bool Staircase::is_valid(std::span<const Coord> vertices) {
  if (vertices.empty()) return false;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    Coord d = vertices[i + 1] - vertices[i];
    if (d.x != 1 || d.y < 0 || d.y > 1 || d.z < 0 || d.z > 1) return false;
  }
  return true;
}

Staircase::Staircase(std::vector<Coord> vertices) : vertices_(std::move(vertices)) {
  if (!is_valid(vertices_)) throw PreconditionError("not a staircase");
}

std::optional<Coord> Staircase::at_x(int x) const {
  int step = x - vertices_.front().x;
  if (step < 0 || step >= length()) return std::nullopt;
  return vertices_[step];
}

Staircase Staircase::translated(Coord offset) const {
  std::vector<Coord> moved;
  moved.reserve(vertices_.size());
  for (Coord c : vertices_) moved.push_back(c + offset);
  return Staircase(std::move(moved));
}

std::optional<Enlargement::Position> Enlargement::locate(Coord c) const {
  auto base_vertex = base.at_x(c.x);
  if (!base_vertex) return std::nullopt;
  int dy = c.y - base_vertex->y;
  int dz = c.z - base_vertex->z;
  if (dy < 0 || dz < 0 || dy > b || dz > b) return std::nullopt;
  return Position{c.x - base.front().x, dy, dz};
}

Enlargement enlarge(const GridGraph& g, const Staircase& path, int b) {
  if (b < 0) throw PreconditionError("enlargement size must be non-negative");
  std::vector<Coord> coords;
  for (Coord v : path.vertices())
    for (Coord c : b_square(v, b)) {
      if (!g.contains(c))
        throw PreconditionError("b-square of " + to_string(v) + " leaves the grid");
      coords.push_back(c);
    }
  Enlargement e{path, b, GridGraph::induced(g.side(), std::move(coords)), {}, {}};
  for (Coord c : b_square(path.front(), b)) e.left.push_back(e.graph.index(c));
  for (Coord c : b_square(path.back(), b)) e.right.push_back(e.graph.index(c));
  e.left = make_vertex_set(std::move(e.left));
  e.right = make_vertex_set(std::move(e.right));
  return e;
}

Coord project(Coord u, const Enlargement& e) {
  if (e.b < 1) throw PreconditionError("projection needs an enlargement with b >= 1");
  auto pos = e.locate(u);
  if (!pos) throw PreconditionError(to_string(u) + " is not in the enlargement");
  Coord v = e.base.vertices()[pos->step];
  int b = e.b - 1;
  return {u.x, std::min(u.y, v.y + b), std::min(u.z, v.z + b)};
}

Coord anchor(int d, int j, int k) {
  if (d < 1) throw PreconditionError("anchor spacing must be positive");
  return {4 * d * j + 4 * d * k, 2 * d * j + d * k, d * j + 2 * d * k};
}

Staircase join_staircases(const Staircase& first, const Staircase& second) {
  const Staircase* lo = &first;
  const Staircase* hi = &second;
  if (lo->back().x >= hi->front().x) std::swap(lo, hi);
  Coord from = lo->back();
  Coord to = hi->front();
  int dx = to.x - from.x;
  int dy = to.y - from.y;
  int dz = to.z - from.z;
  if (dx < 1 || dy < 0 || dz < 0 || dy > dx || dz > dx)
    throw PreconditionError("no monotone route from " + to_string(from) + " to " + to_string(to));

  std::vector<Coord> joined = lo->vertices();
  Coord cur = from;
  for (int step = 1; step < dx; ++step) {
    cur.x += 1;
    if (cur.y < to.y) cur.y += 1;
    if (cur.z < to.z) cur.z += 1;
    joined.push_back(cur);
  }
  joined.insert(joined.end(), hi->vertices().begin(), hi->vertices().end());
  return Staircase(std::move(joined));
}

Staircase join_staircases(const GridGraph& g, const Staircase& first, const Staircase& second,
                          int b) {
  Staircase joined = join_staircases(first, second);
  for (Coord v : joined.vertices())
    if (!g.contains(v) || !g.contains(v + Coord{0, b, b}))
      throw PreconditionError("joined staircase does not fit at " + to_string(v));
  return joined;
}

Coord permute(Coord c, const std::array<int, 3>& perm) {
  const int k[3] = {c.x, c.y, c.z};
  return {k[perm[0]], k[perm[1]], k[perm[2]]};
}

Coord antipode(int n, Coord c) { return {n - 1 - c.x, n - 1 - c.y, n - 1 - c.z}; }

bool is_automorphism(const GridGraph& g, std::span<const Vertex> mapping) {
  const int n = g.vertex_count();
  if (static_cast<int>(mapping.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (Vertex m : mapping) {
    if (m < 0 || m >= n || hit[m]) return false;
    hit[m] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    std::vector<Vertex> image;
    for (Vertex w : nb) image.push_back(mapping[w]);
    std::sort(image.begin(), image.end());
    if (image != g.neighbors(mapping[v])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::string to_json_string(const GridGraph& g) {
  nlohmann::json j;
  j["n"] = g.side();
  if (g.is_full()) {
    j["vertices"] = "full";
    j["edges"] = "implicit";
  } else {
    auto verts = nlohmann::json::array();
    for (Coord c : g.coords()) verts.push_back({c.x, c.y, c.z});
    j["vertices"] = std::move(verts);
    auto edges = nlohmann::json::array();
    for (const Edge& e : g.graph().edges()) edges.push_back({e.u, e.v});
    j["edges"] = std::move(edges);
  }
  return j.dump();
}

GridGraph grid_from_json_string(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int n = j.at("n").get<int>();
  const auto& verts = j.at("vertices");
  if (verts.is_string()) {
    if (verts.get<std::string>() != "full") throw PreconditionError("vertices must be \"full\" or a list");
    return GridGraph::full(n);
  }
  std::vector<Coord> coords;
  for (const auto& c : verts) coords.push_back({c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<int>()});
  const std::size_t listed = coords.size();
  GridGraph g = GridGraph::induced(n, std::move(coords));
  if (static_cast<std::size_t>(g.vertex_count()) != listed)
    throw PreconditionError("duplicate vertices in graph JSON");
  const auto& edges = j.value("edges", nlohmann::json("implicit"));
  if (edges.is_array()) {
    // Listed edges use the file's vertex order, which must already be canonical.
    std::vector<std::pair<Vertex, Vertex>> listed_edges;
    for (const auto& e : edges) listed_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Graph declared(g.vertex_count(), std::move(listed_edges));
    const Graph& actual = g.graph();
    bool same = declared.edge_count() == actual.edge_count();
    for (EdgeId e = 0; same && e < declared.edge_count(); ++e)
      same = declared.edge(e).u == actual.edge(e).u && declared.edge(e).v == actual.edge(e).v;
    if (!same) throw PreconditionError("edge list disagrees with the Q_n adjacency rule");
  }
  return g;
}

std::string to_dot(const GridGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    out << "  " << v << " [label=\"" << to_string(g.coord(v)) << "\"];\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (Vertex w : g.neighbors(v))
      if (v < w) out << "  " << v << " -- " << w << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace qtw
