#include "qtw/slab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qtw/separators.hpp"

namespace qtw {

namespace {

bool fail(std::string* why, const std::string& message) {
  if (why) *why = message;
  return false;
}

using Point = std::array<int, 2>;

std::int64_t cross(Point o, Point a, Point b) {
  return static_cast<std::int64_t>(a[0] - o[0]) * (b[1] - o[1]) -
         static_cast<std::int64_t>(a[1] - o[1]) * (b[0] - o[0]);
}

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

bool on_segment(Point p, Point a, Point b) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

bool segments_meet(Point a, Point b, Point c, Point d) {
  int d1 = sign(cross(a, b, c));
  int d2 = sign(cross(a, b, d));
  int d3 = sign(cross(c, d, a));
  int d4 = sign(cross(c, d, b));
  if (d1 != d2 && d3 != d4 && d1 * d2 <= 0 && d3 * d4 <= 0) {
    if (d1 != 0 || d2 != 0 || d3 != 0 || d4 != 0) return true;
  }
  if (d1 == 0 && on_segment(c, a, b)) return true;
  if (d2 == 0 && on_segment(d, a, b)) return true;
  if (d3 == 0 && on_segment(a, c, d)) return true;
  if (d4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

// Upper half-plane first, then by angle: a strict ccw order of directions.
bool angle_less(Point a, Point b) {
  auto half = [](Point p) { return (p[1] < 0 || (p[1] == 0 && p[0] < 0)) ? 1 : 0; };
  int ha = half(a);
  int hb = half(b);
  if (ha != hb) return ha < hb;
  return cross({0, 0}, a, b) > 0;
}

struct Faces {
  std::vector<std::vector<Vertex>> walks;  // vertex sequence of each face
  std::vector<std::int64_t> area2;          // doubled signed area
};

Faces trace_faces(const Graph& g, const std::vector<Point>& pos) {
  const int n = g.vertex_count();
  std::vector<std::vector<Vertex>> rotation(n);
  for (Vertex v = 0; v < n; ++v) {
    for (const Incidence& inc : g.incident(v)) rotation[v].push_back(inc.to);
    std::sort(rotation[v].begin(), rotation[v].end(), [&](Vertex a, Vertex b) {
      Point da{pos[a][0] - pos[v][0], pos[a][1] - pos[v][1]};
      Point db{pos[b][0] - pos[v][0], pos[b][1] - pos[v][1]};
      return angle_less(da, db);
    });
  }
  auto slot = [&](Vertex v, Vertex w) {
    auto it = std::find(rotation[v].begin(), rotation[v].end(), w);
    return static_cast<int>(it - rotation[v].begin());
  };
  std::map<std::pair<Vertex, Vertex>, char> used;
  Faces faces;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : rotation[u]) {
      if (used[{u, v}]) continue;
      std::vector<Vertex> walk;
      std::int64_t area = 0;
      Vertex a = u;
      Vertex b = v;
      while (!used[{a, b}]) {
        used[{a, b}] = 1;
        walk.push_back(a);
        area += static_cast<std::int64_t>(pos[a][0]) * pos[b][1] -
                static_cast<std::int64_t>(pos[b][0]) * pos[a][1];
        const auto& rot = rotation[b];
        int k = slot(b, a);
        Vertex c = rot[(k + static_cast<int>(rot.size()) - 1) % rot.size()];
        a = b;
        b = c;
      }
      faces.walks.push_back(std::move(walk));
      faces.area2.push_back(area);
    }
  return faces;
}

Subgraph layer_graph(const Graph& g, const Layer& layer) { return induced_subgraph(g, layer.vertices); }

}  // namespace

bool is_near_triangulation(const Graph& g, const std::vector<Point>& position, std::string* why) {
  const int n = g.vertex_count();
  if (static_cast<int>(position.size()) != n) throw PreconditionError("missing embedding");
  {
    std::vector<Point> sorted = position;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return fail(why, "two vertices share a position");
  }
  if (n <= 1) return true;
  if (!is_connected(g)) return fail(why, "disconnected");
  const auto& edges = g.edges();
  for (std::size_t a = 0; a < edges.size(); ++a)
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const Edge& e = edges[a];
      const Edge& f = edges[b];
      bool shared = e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v;
      if (!shared) {
        if (segments_meet(position[e.u], position[e.v], position[f.u], position[f.v]))
          return fail(why, "edges cross");
        continue;
      }
      Vertex common = (e.u == f.u || e.u == f.v) ? e.u : e.v;
      Vertex x = e.u == common ? e.v : e.u;
      Vertex y = f.u == common ? f.v : f.u;
      Point dx{position[x][0] - position[common][0], position[x][1] - position[common][1]};
      Point dy{position[y][0] - position[common][0], position[y][1] - position[common][1]};
      if (cross({0, 0}, dx, dy) == 0 &&
          static_cast<std::int64_t>(dx[0]) * dy[0] + static_cast<std::int64_t>(dx[1]) * dy[1] > 0)
        return fail(why, "edges overlap");
    }
  Faces faces = trace_faces(g, position);
  int outer = 0;
  for (std::size_t f = 0; f < faces.walks.size(); ++f) {
    if (faces.area2[f] <= 0) {
      ++outer;
      continue;
    }
    if (faces.walks[f].size() != 3) return fail(why, "bounded face of length " + std::to_string(faces.walks[f].size()));
  }
  if (outer != 1) return fail(why, "embedding has " + std::to_string(outer) + " unbounded faces");
  if (n - g.edge_count() + static_cast<int>(faces.walks.size()) != 2)
    return fail(why, "Euler formula fails");
  return true;
}

int Slab::delta() const {
  int best = 3;
  for (const auto* group : {&rows, &columns})
    for (const Layer& layer : *group) best = std::max(best, layer_graph(graph, layer).graph.max_degree());
  return best;
}

namespace {

bool layer_ok(const Slab& s, const Layer& layer, const std::string& name, std::string* why) {
  if (layer.position.size() != layer.vertices.size()) throw PreconditionError("missing embedding of " + name);
  Subgraph sub = layer_graph(s.graph, layer);
  std::string reason;
  if (!is_near_triangulation(sub.graph, layer.position, &reason))
    return fail(why, name + " is not a near-triangulation: " + reason);

  Faces faces = trace_faces(sub.graph, layer.position);
  std::set<std::pair<Vertex, Vertex>> outer_darts;
  std::vector<char> on_outer(sub.graph.vertex_count(), 0);
  for (std::size_t f = 0; f < faces.walks.size(); ++f) {
    if (faces.area2[f] > 0) continue;
    const auto& w = faces.walks[f];
    for (std::size_t k = 0; k < w.size(); ++k) {
      on_outer[w[k]] = 1;
      Vertex a = w[k];
      Vertex b = w[(k + 1) % w.size()];
      outer_darts.insert({std::min(a, b), std::max(a, b)});
    }
  }
  if (sub.graph.vertex_count() == 1) on_outer[0] = 1;
  for (const VertexSet* side : {&s.s1, &s.s2}) {
    VertexSet meet = set_intersection(layer.vertices, *side);
    if (meet.empty()) return fail(why, name + " misses a side");
    std::vector<Vertex> local;
    for (Vertex v : meet) local.push_back(sub.to_local(v));
    Subgraph part = induced_subgraph(sub.graph, local);
    if (!is_connected(part.graph) || !is_forest(part.graph) || part.graph.max_degree() > 2)
      return fail(why, name + " meets a side in something other than a path");
    for (Vertex v : local)
      if (!on_outer[v]) return fail(why, name + " meets a side off the outer face");
    for (const Edge& e : part.graph.edges()) {
      Vertex a = part.original[e.u];
      Vertex b = part.original[e.v];
      if (!outer_darts.count({std::min(a, b), std::max(a, b)}))
        return fail(why, name + " side path uses an inner edge");
    }
  }
  return true;
}

bool pairwise_disjoint(const std::vector<Layer>& layers, int vertex_count) {
  std::vector<char> seen(vertex_count, 0);
  for (const Layer& l : layers)
    for (Vertex v : l.vertices) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  return true;
}

}  // namespace

bool validate_slab(const Slab& s, std::string* why) {
  const int vc = s.graph.vertex_count();
  if (s.n < 1) return fail(why, "n must be positive");
  if (static_cast<int>(s.rows.size()) != s.n || static_cast<int>(s.columns.size()) != s.n)
    return fail(why, "need n rows and n columns");
  if (!set_intersection(s.s1, s.s2).empty()) return fail(why, "sides overlap");
  if (!is_connected_subset(s.graph, s.s1) || !is_connected_subset(s.graph, s.s2) || s.s1.empty() ||
      s.s2.empty())
    return fail(why, "sides must be non-empty and connected");
  if (!pairwise_disjoint(s.rows, vc)) return fail(why, "rows overlap");
  if (!pairwise_disjoint(s.columns, vc)) return fail(why, "columns overlap");
  for (int i = 0; i < s.n; ++i) {
    if (!layer_ok(s, s.rows[i], "row " + std::to_string(i), why)) return false;
    if (!layer_ok(s, s.columns[i], "column " + std::to_string(i), why)) return false;
  }
  if (static_cast<int>(s.paths.size()) != s.n) return fail(why, "path matrix has wrong size");
  std::vector<char> in1 = membership(vc, s.s1);
  std::vector<char> in2 = membership(vc, s.s2);
  for (int i = 0; i < s.n; ++i) {
    if (static_cast<int>(s.paths[i].size()) != s.n) return fail(why, "path matrix has wrong size");
    for (int j = 0; j < s.n; ++j) {
      const auto& p = s.paths[i][j];
      std::string name = "path (" + std::to_string(i) + "," + std::to_string(j) + ")";
      VertexSet meet = set_intersection(s.rows[i].vertices, s.columns[j].vertices);
      if (p.empty() || make_vertex_set(p) != meet || meet.size() != p.size())
        return fail(why, name + " is not the row-column intersection");
      Subgraph sub = induced_subgraph(s.graph, meet);
      if (!is_connected(sub.graph) || sub.graph.edge_count() != sub.graph.vertex_count() - 1 ||
          sub.graph.max_degree() > 2)
        return fail(why, name + " is not a path");
      for (std::size_t k = 0; k + 1 < p.size(); ++k)
        if (!s.graph.adjacent(p[k], p[k + 1])) return fail(why, name + " is listed out of order");
      if (!in1[p.front()] || !in2[p.back()]) return fail(why, name + " does not run from s1 to s2");
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Slab enlargement_as_slab(const Enlargement& e) {
  Slab s;
  s.n = e.b + 1;
  s.graph = e.graph.graph();
  s.coords = e.graph.coords();
  s.s1 = e.left;
  s.s2 = e.right;
  s.rows.resize(s.n);
  s.columns.resize(s.n);
  s.paths.assign(s.n, std::vector<std::vector<Vertex>>(s.n));
  for (Vertex v = 0; v < e.graph.vertex_count(); ++v) {
    auto pos = e.locate(s.coords[v]);
    if (!pos) throw std::logic_error("enlargement vertex outside every square");
    s.rows[pos->dy].vertices.push_back(v);
    s.rows[pos->dy].position.push_back({pos->step, pos->dz});
    s.columns[pos->dz].vertices.push_back(v);
    s.columns[pos->dz].position.push_back({pos->step, pos->dy});
    auto& path = s.paths[pos->dy][pos->dz];
    if (static_cast<int>(path.size()) <= pos->step) path.resize(pos->step + 1, -1);
    path[pos->step] = v;
  }
  // Vertex ids ascend, so the layers are already sorted.
  return s;
}

Slab box_slab(int n, int length) {
  if (n < 1 || length < 2) throw PreconditionError("box slab needs n >= 1 and length >= 2");
  std::vector<Coord> line;
  for (int x = 0; x < length; ++x) line.push_back({x, 0, 0});
  GridGraph host = build_qn(std::max(n, length));
  return enlargement_as_slab(enlarge(host, Staircase(line), n - 1));
}

Slab qn_as_slab(int n) {
  if (n < 1) throw PreconditionError("n must be positive");
  return box_slab(n, n == 1 ? 2 : n);
}

LFunction separation_function(const Slab& s, const VertexSet& x) {
  if (!is_separator(s.graph, s.s1, s.s2, x)) throw PreconditionError("set is not a side separator");
  std::vector<char> blocked = membership(s.graph.vertex_count(), x);
  std::vector<char> left = reachable(s.graph, s.s1, blocked);
  LFunction f(s.graph.vertex_count(), LValue::Plus);
  for (Vertex v = 0; v < s.graph.vertex_count(); ++v) {
    if (blocked[v])
      f[v] = LValue::Zero;
    else if (left[v])
      f[v] = LValue::Minus;
  }
  return f;
}

WeightFunction lambda_assignment(const Slab& s, const VertexSet& x, const LFunction& f) {
  const int vc = s.graph.vertex_count();
  WeightFunction w{std::vector<std::int64_t>(vc, 0), 2};
  std::vector<char> in_x = membership(vc, x);
  std::vector<char> on_path(vc, 0);
  for (const auto& row : s.paths)
    for (const auto& p : row) {
      for (Vertex v : p) {
        if (on_path[v]) throw PreconditionError("vertex lies on two slab paths");
        on_path[v] = 1;
      }
      Walk walk = Walk::from_vertices(s.graph, p);
      for (const PathWeight& pw : path_weights(s.graph, walk, f))
        if (in_x[pw.vertex]) w.numerator[pw.vertex] = pw.doubled;
    }
  return w;
}

std::vector<Walk> strip_triangles(const Slab& s, const Layer& layer, int j1, int j2) {
  std::map<Point, Vertex> at;
  for (std::size_t k = 0; k < layer.vertices.size(); ++k) at[layer.position[k]] = layer.vertices[k];
  auto find = [&](int a, int b) {
    auto it = at.find({a, b});
    return it == at.end() ? -1 : it->second;
  };
  // The loop Q w2 R^-1 w1^-1 runs clockwise when w2 lies above w1.
  const int want = j2 > j1 ? -1 : 1;
  std::vector<Walk> out;
  auto add = [&](Point p, Point q, Point r) {
    if (sign(cross(p, q, r)) != want) std::swap(q, r);
    std::vector<Vertex> vs{at.at(p), at.at(q), at.at(r), at.at(p)};
    out.push_back(Walk::from_vertices(s.graph, vs));
  };
  for (int b = std::min(j1, j2); b < std::max(j1, j2); ++b)
    for (int a = 0; find(a + 1, b) >= 0 || find(a + 1, b + 1) >= 0; ++a) {
      Vertex p00 = find(a, b), p10 = find(a + 1, b), p01 = find(a, b + 1), p11 = find(a + 1, b + 1);
      if (p00 < 0 || p10 < 0 || p01 < 0 || p11 < 0) throw PreconditionError("layer is not a lattice strip");
      if (s.graph.adjacent(p00, p11)) {
        add({a, b}, {a + 1, b}, {a + 1, b + 1});
        add({a, b}, {a + 1, b + 1}, {a, b + 1});
      } else if (s.graph.adjacent(p10, p01)) {
        add({a, b}, {a + 1, b}, {a, b + 1});
        add({a + 1, b}, {a + 1, b + 1}, {a, b + 1});
      } else {
        throw PreconditionError("strip quad has no diagonal");
      }
    }
  return out;
}

int required_width(int n, int delta) {
  // (k+1)^2 * 3 delta >= n^2, exactly.
  int k = -1;
  while (static_cast<std::int64_t>(k + 1) * (k + 1) * 3 * delta < static_cast<std::int64_t>(n) * n) ++k;
  return k;
}

std::string to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::Certified: return "certified";
    case AuditStatus::Consistent: return "consistent";
    case AuditStatus::Violated: return "violated";
  }
  return "?";
}

bool AuditReport::pass() const {
  if (status == AuditStatus::Violated || !f_entire || !lines_integrate_to_two || !mass_identity) return false;
  if (!replay.applicable) return true;
  return replay.balanced && replay.weights_match_integrals && replay.integral_off_cut && replay.homotopies_verified &&
         replay.h_constant_on_s && replay.row_bounds_hold && replay.final_bound_holds;
}

namespace {

bool line_matches(const Layer& layer, const std::vector<Vertex>& path, int line) {
  std::map<Vertex, Point> pos;
  for (std::size_t k = 0; k < layer.vertices.size(); ++k) pos[layer.vertices[k]] = layer.position[k];
  for (std::size_t k = 0; k < path.size(); ++k) {
    auto it = pos.find(path[k]);
    if (it == pos.end() || it->second != Point{static_cast<int>(k), line}) return false;
  }
  return true;
}

bool lattice_slab(const Slab& s) {
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      if (!line_matches(s.rows[i], s.paths[i][j], j) || !line_matches(s.columns[j], s.paths[i][j], i))
        return false;
  return true;
}

// Walk along the side between the starts (or ends) of two lines of a layer.
Walk side_connector(const Slab& s, const Layer& layer, int step, int from_line, int to_line) {
  std::map<Point, Vertex> at;
  for (std::size_t k = 0; k < layer.vertices.size(); ++k) at[layer.position[k]] = layer.vertices[k];
  std::vector<Vertex> vs;
  int dir = to_line >= from_line ? 1 : -1;
  for (int b = from_line;; b += dir) {
    vs.push_back(at.at({step, b}));
    if (b == to_line) break;
  }
  return Walk::from_vertices(s.graph, vs);
}

struct HomotopyCheck {
  bool verified = false;
  int noncontractible = 0;
};

// Certificate that lines j1 and j2 of a layer are (g,k)-almost homotopic with
// k the number of non-contractible strip triangles.
HomotopyCheck line_homotopy(const Slab& s, const Layer& layer, const std::vector<Vertex>& w1,
                            const std::vector<Vertex>& w2, int j1, int j2, const LFunction& g) {
  HomotopyCheck out;
  std::vector<Walk> triangles = strip_triangles(s, layer, j1, j2);
  std::stable_partition(triangles.begin(), triangles.end(),
                        [&](const Walk& t) { return !is_contractible(s.graph, t, g); });
  for (const Walk& t : triangles)
    if (!is_contractible(s.graph, t, g)) ++out.noncontractible;
  const int last = static_cast<int>(w1.size()) - 1;
  Walk q = side_connector(s, layer, 0, j1, j2);
  Walk r = side_connector(s, layer, last, j1, j2);
  out.verified = verify_almost_homotopic(s.graph, Walk::from_vertices(s.graph, w1),
                                         Walk::from_vertices(s.graph, w2), q, r, triangles, g,
                                         out.noncontractible);
  return out;
}

void replay_pipeline(const Slab& s, const LFunction& f,
                     const WeightFunction& lambda, const Subgraph& h, const TreewidthResult& exact,
                     AuditReport& report) {
  PipelineReplay& rp = report.replay;
  const int n = s.n;
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
  const int t = exact.width;
  rp.t = t;
  if (n2 < 3 * static_cast<std::int64_t>(t) + 3 || t >= n - 1) {
    rp.reason = "width is already at least the bound";
    return;
  }
  if (!lattice_slab(s)) {
    rp.reason = "slab layers are not lattice strips";
    return;
  }
  rp.applicable = true;
  const int vc = s.graph.vertex_count();

  WeightFunction local{std::vector<std::int64_t>(h.graph.vertex_count()), lambda.denominator};
  for (Vertex v = 0; v < h.graph.vertex_count(); ++v) local.numerator[v] = lambda.numerator[h.original[v]];
  BalancedSeparation bs = balanced_separation(h.graph, exact.decomposition, local);
  rp.center = bs.center;
  VertexSet k = h.to_parent(bs.separation.k);
  VertexSet l = h.to_parent(bs.separation.l);
  VertexSet cut = set_intersection(k, l);
  VertexSet k_only = set_difference(k, l);
  rp.k_and_l = static_cast<int>(cut.size());
  rp.lambda_k_minus_l2 = lambda.numerator_of(k_only);
  rp.balanced = 3 * rp.lambda_k_minus_l2 >= 2 * n2 && 3 * rp.lambda_k_minus_l2 <= 4 * n2 &&
                rp.k_and_l <= t + 1;

  LFunction g = f;
  for (Vertex v : l) g[v] = LValue::Star;
  OneChain dg = d(s.graph, g);
  std::vector<char> in_cut = membership(vc, cut);
  std::vector<char> in_k_only = membership(vc, k_only);

  rp.h2.assign(n, std::vector<std::int64_t>(n, 0));
  rp.weights_match_integrals = true;
  rp.integral_off_cut = true;
  std::vector<char> row_free(n, 1), col_free(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& p = s.paths[i][j];
      rp.h2[i][j] = integrate(s.graph, Walk::from_vertices(s.graph, p), dg);
      std::int64_t expected = 0;
      for (Vertex v : p)
        if (in_k_only[v]) expected += lambda.numerator[v];
      if (rp.h2[i][j] != expected) rp.weights_match_integrals = false;
      bool avoids = std::none_of(p.begin(), p.end(), [&](Vertex v) { return in_cut[v]; });
      if (avoids && rp.h2[i][j] % 2 != 0) rp.integral_off_cut = false;
    }
  for (Vertex v : cut) {
    for (int i = 0; i < n; ++i)
      if (std::binary_search(s.rows[i].vertices.begin(), s.rows[i].vertices.end(), v)) row_free[i] = 0;
    for (int j = 0; j < n; ++j)
      if (std::binary_search(s.columns[j].vertices.begin(), s.columns[j].vertices.end(), v)) col_free[j] = 0;
  }
  for (int i = 0; i < n; ++i) {
    if (row_free[i]) rp.free_rows.push_back(i);
    if (col_free[i]) rp.free_columns.push_back(i);
  }
  if (rp.free_rows.empty() || rp.free_columns.empty()) {
    rp.reason = "no row or column avoids the cut";
    return;
  }

  // Constancy on S: neighbouring lines of free rows and free columns.
  rp.homotopies_verified = true;
  for (int i : rp.free_rows)
    for (int j = 0; j + 1 < n; ++j) {
      HomotopyCheck c = line_homotopy(s, s.rows[i], s.paths[i][j], s.paths[i][j + 1], j, j + 1, g);
      if (!c.verified || c.noncontractible != 0) rp.homotopies_verified = false;
    }
  for (int c : rp.free_columns)
    for (int i = 0; i + 1 < n; ++i) {
      HomotopyCheck hc = line_homotopy(s, s.columns[c], s.paths[i][c], s.paths[i + 1][c], i, i + 1, g);
      if (!hc.verified || hc.noncontractible != 0) rp.homotopies_verified = false;
    }
  const std::int64_t reference = rp.h2[rp.free_rows.front()][0];
  rp.h_constant_on_s = reference % 2 == 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((row_free[i] || col_free[j]) && rp.h2[i][j] != reference) rp.h_constant_on_s = false;
  rp.h_constant = reference / 2;

  const int delta = report.delta;
  const int c = rp.free_columns.front();
  rp.row_bounds_hold = true;
  for (int i = 0; i < n; ++i) {
    int ti = 0;
    for (Vertex v : cut)
      if (std::binary_search(s.rows[i].vertices.begin(), s.rows[i].vertices.end(), v)) ++ti;
    for (int j = 0; j < n; ++j) {
      if (col_free[j]) continue;
      HomotopyCheck hc = line_homotopy(s, s.rows[i], s.paths[i][j], s.paths[i][c], j, c, g);
      if (!hc.verified) rp.homotopies_verified = false;
      std::int64_t gap = std::llabs(rp.h2[i][j] - rp.h2[i][c]);
      if (hc.noncontractible > delta * ti || gap > hc.noncontractible) rp.row_bounds_hold = false;
    }
  }
  rp.deviation2 = std::llabs(rp.lambda_k_minus_l2 - 2 * rp.h_constant * n2);
  rp.allowance2 = 2 * static_cast<std::int64_t>(delta) * (t + 1) * (t + 1);
  rp.final_bound_holds = rp.deviation2 <= rp.allowance2;
}

}  // namespace

AuditReport audit_separator(const Slab& s, const VertexSet& x, const AuditOptions& options) {
  AuditReport report;
  report.n = s.n;
  report.delta = s.delta();
  report.separator = x;
  LFunction f = separation_function(s, x);
  report.f_entire = is_entire(s.graph, f);

  report.lines_integrate_to_two = true;
  OneChain df = d(s.graph, f);
  report.path_integrals.assign(s.n, std::vector<std::int64_t>(s.n, 0));
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      report.path_integrals[i][j] = integrate(s.graph, Walk::from_vertices(s.graph, s.paths[i][j]), df);
      if (report.path_integrals[i][j] != 2) report.lines_integrate_to_two = false;
    }
  WeightFunction lambda = lambda_assignment(s, x, f);
  for (Vertex v : x) report.lambda2.push_back(static_cast<int>(lambda.numerator[v]));
  report.lambda_total2 = lambda.numerator_of(x);
  report.mass_identity = report.lambda_total2 == 2 * static_cast<std::int64_t>(s.n) * s.n;
  report.separator_connected = is_connected_subset(s.graph, x);

  report.bound = s.n / std::sqrt(3.0 * report.delta) - 1.0;
  report.required = required_width(s.n, report.delta);

  Subgraph h = induced_subgraph(s.graph, x);
  std::optional<int> upper;  // known tw(G[X]) <= upper
  std::optional<TreewidthResult> exact;
  try {
    exact = exact_treewidth(h.graph, options.limits);
    report.exact_width = exact->width;
    report.certified_lower = exact->width;
    upper = exact->width;
    report.method = "exact";
  } catch (const GuardExceeded&) {
    report.method = "guard";
  }
  auto refute = [&](int w) {
    WidthDecision dec = treewidth_at_most(h.graph, w - 1, options.limits);
    if (dec.verdict == WidthVerdict::Exceeds) {
      if (w > report.certified_lower) {
        report.certified_lower = w;
        report.method = "refuted width " + std::to_string(w - 1) + " (" + dec.method + ")";
      }
    } else if (dec.verdict == WidthVerdict::AtMost) {
      upper = upper ? std::min(*upper, w - 1) : w - 1;
    }
  };
  if (options.certify_width) refute(*options.certify_width);
  if (report.certified_lower < report.required && !upper) {
    if (report.required <= 0 && !x.empty()) {
      report.certified_lower = std::max(report.certified_lower, 0);
      report.method = "non-empty separator";
    } else {
      refute(report.required);
    }
  }
  if (report.certified_lower >= report.required)
    report.status = AuditStatus::Certified;
  else if (upper && *upper < report.required)
    report.status = AuditStatus::Violated;
  else
    report.status = AuditStatus::Consistent;

  if (options.replay && exact) replay_pipeline(s, f, lambda, h, *exact, report);
  else if (options.replay) report.replay.reason = "exact decomposition unavailable";
  return report;
}

// ---------------------------------------------------------------------------

std::string to_json_string(const AuditReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["delta"] = r.delta;
  j["separator"] = r.separator;
  j["lambda2"] = r.lambda2;
  j["lambda_total2"] = r.lambda_total2;
  j["path_integrals"] = r.path_integrals;
  j["f_entire"] = r.f_entire;
  j["lines_integrate_to_two"] = r.lines_integrate_to_two;
  j["mass_identity"] = r.mass_identity;
  j["separator_connected"] = r.separator_connected;
  j["bound_milli"] = std::llround(r.bound * 1000.0);
  j["required_width"] = r.required;
  j["exact_width"] = r.exact_width ? nlohmann::json(*r.exact_width) : nlohmann::json(nullptr);
  j["certified_lower"] = r.certified_lower;
  j["method"] = r.method;
  j["status"] = to_string(r.status);
  j["pass"] = r.pass();
  const PipelineReplay& p = r.replay;
  nlohmann::json rp;
  rp["applicable"] = p.applicable;
  rp["reason"] = p.reason;
  if (p.applicable) {
    rp["t"] = p.t;
    rp["center"] = p.center;
    rp["cut_size"] = p.k_and_l;
    rp["lambda_k_minus_l2"] = p.lambda_k_minus_l2;
    rp["balanced"] = p.balanced;
    rp["h2"] = p.h2;
    rp["weights_match_integrals"] = p.weights_match_integrals;
    rp["integral_off_cut"] = p.integral_off_cut;
    rp["free_rows"] = p.free_rows;
    rp["free_columns"] = p.free_columns;
    rp["homotopies_verified"] = p.homotopies_verified;
    rp["h_constant"] = p.h_constant;
    rp["h_constant_on_s"] = p.h_constant_on_s;
    rp["row_bounds_hold"] = p.row_bounds_hold;
    rp["deviation2"] = p.deviation2;
    rp["allowance2"] = p.allowance2;
    rp["final_bound_holds"] = p.final_bound_holds;
  } else if (p.t >= 0) {
    rp["t"] = p.t;
  }
  j["replay"] = rp;
  return j.dump();
}

std::string audit_csv_header() { return "n,separator_size,lambda2,bound_milli,tw_certified,pass"; }

std::string audit_csv_row(const AuditReport& r) {
  std::ostringstream out;
  out << r.n << ',' << r.separator.size() << ',' << r.lambda_total2 << ','
      << std::llround(r.bound * 1000.0) << ',' << r.certified_lower << ',' << (r.pass() ? 1 : 0);
  return out.str();
}

}  // namespace qtw
