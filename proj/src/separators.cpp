#include "qtw/separators.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "json.hpp"

namespace qtw {

Partition2::Partition2(int n, std::vector<std::int8_t> classes) : n_(n), class_(std::move(classes)) {
  for (std::int8_t c : class_)
    if (c != 1 && c != 2) throw PreconditionError("partition classes must be 1 or 2");
}

Partition2 Partition2::uniform(int n, int vertex_count, int cls) {
  return Partition2(n, std::vector<std::int8_t>(vertex_count, static_cast<std::int8_t>(cls)));
}

Partition2 Partition2::random(int n, int vertex_count, std::mt19937_64& rng) {
  std::vector<std::int8_t> classes(vertex_count);
  for (auto& c : classes) c = static_cast<std::int8_t>(1 + (rng() & 1u));
  return Partition2(n, std::move(classes));
}

void Partition2::set(Vertex v, int cls) {
  if (cls != 1 && cls != 2) throw PreconditionError("partition classes must be 1 or 2");
  class_[v] = static_cast<std::int8_t>(cls);
}

VertexSet Partition2::members(int cls) const {
  VertexSet out;
  for (Vertex v = 0; v < vertex_count(); ++v)
    if (class_[v] == cls) out.push_back(v);
  return out;
}

std::string to_json_string(const Partition2& p) {
  nlohmann::json j;
  j["n"] = p.side();
  std::vector<int> classes(p.classes().begin(), p.classes().end());
  j["class"] = classes;
  return j.dump();
}

Partition2 partition_from_json_string(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto classes = j.at("class").get<std::vector<int>>();
  std::vector<std::int8_t> out(classes.begin(), classes.end());
  int n = j.at("n").get<int>();
  if (static_cast<std::int64_t>(n) * n * n != static_cast<std::int64_t>(out.size()))
    throw PreconditionError("partition length does not match n^3");
  return Partition2(n, std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

void check_sides(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2) {
  for (Vertex v : s1)
    if (v < 0 || v >= g.vertex_count()) throw PreconditionError("side vertex out of range");
  for (Vertex v : s2)
    if (v < 0 || v >= g.vertex_count()) throw PreconditionError("side vertex out of range");
  if (!set_intersection(make_vertex_set({s1.begin(), s1.end()}), make_vertex_set({s2.begin(), s2.end()}))
           .empty())
    throw PreconditionError("sides overlap");
}

bool separates(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
               const std::vector<char>& blocked) {
  std::vector<char> seen = reachable(g, s1, blocked);
  return std::none_of(s2.begin(), s2.end(), [&](Vertex v) { return seen[v] && !blocked[v]; });
}

std::vector<char> interior_mask(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                                std::span<const Vertex> x) {
  std::vector<char> side = membership(g.vertex_count(), s1);
  for (Vertex v : s2) side[v] = 1;
  for (Vertex v : x) {
    if (v < 0 || v >= g.vertex_count()) throw PreconditionError("separator vertex out of range");
    if (side[v]) throw PreconditionError("separator meets a side");
  }
  return membership(g.vertex_count(), x);
}

}  // namespace

bool is_separator(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                  std::span<const Vertex> x) {
  check_sides(g, s1, s2);
  std::vector<char> blocked = interior_mask(g, s1, s2, x);
  return separates(g, s1, s2, blocked);
}

SideCut min_side_separator(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2) {
  check_sides(g, s1, s2);
  const int n = g.vertex_count();
  std::vector<char> in1 = membership(n, s1);
  std::vector<char> in2 = membership(n, s2);
  for (Vertex v : s1)
    for (const Incidence& inc : g.incident(v))
      if (in2[inc.to]) throw PreconditionError("sides are adjacent; no separator exists");

  // Node v becomes v_in = 2v and v_out = 2v+1; source 2n, sink 2n+1.
  struct Arc {
    int to;
    int cap;
  };
  constexpr int kInfinite = std::numeric_limits<int>::max() / 4;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out(2 * n + 2);
  auto add_arc = [&](int a, int b, int cap) {
    out[a].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({b, cap});
    out[b].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({a, 0});
  };
  const int source = 2 * n;
  const int sink = 2 * n + 1;
  for (Vertex v = 0; v < n; ++v) add_arc(2 * v, 2 * v + 1, (in1[v] || in2[v]) ? kInfinite : 1);
  for (const Edge& e : g.edges()) {
    add_arc(2 * e.u + 1, 2 * e.v, kInfinite);
    add_arc(2 * e.v + 1, 2 * e.u, kInfinite);
  }
  for (Vertex v : s1) add_arc(source, 2 * v, kInfinite);
  for (Vertex v : s2) add_arc(2 * v + 1, sink, kInfinite);

  std::vector<int> parent_arc(2 * n + 2);
  auto bfs = [&]() {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    std::vector<char> seen(2 * n + 2, 0);
    std::deque<int> queue{source};
    seen[source] = 1;
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (int id : out[a]) {
        const Arc& arc = arcs[id];
        if (arc.cap > 0 && !seen[arc.to]) {
          seen[arc.to] = 1;
          parent_arc[arc.to] = id;
          if (arc.to == sink) return seen;
          queue.push_back(arc.to);
        }
      }
    }
    return seen;
  };

  std::vector<char> seen;
  while (true) {
    seen = bfs();
    if (!seen[sink]) break;
    // All augmenting paths cross a unit arc, so each carries one unit.
    for (int node = sink; node != source;) {
      int id = parent_arc[node];
      arcs[id].cap -= 1;
      arcs[id ^ 1].cap += 1;
      node = arcs[id ^ 1].to;
    }
  }

  SideCut result;
  for (Vertex v = 0; v < n; ++v)
    if (seen[2 * v] && !seen[2 * v + 1]) result.cut.push_back(v);

  // Decompose the flow into paths along saturated vertex arcs.
  std::vector<int> flow_used(arcs.size(), 0);
  auto flow_on = [&](int id) { return (id % 2 == 0) ? arcs[id ^ 1].cap - flow_used[id] : 0; };
  while (true) {
    std::vector<Vertex> path;
    int node = source;
    bool found = false;
    while (node != sink) {
      int next = -1;
      for (int id : out[node])
        if (flow_on(id) > 0) {
          next = id;
          break;
        }
      if (next < 0) break;
      flow_used[next] += 1;
      node = arcs[next].to;
      if (node != sink && node % 2 == 0) path.push_back(node / 2);
      if (node == sink) found = true;
    }
    if (!found) break;
    // Keep the part between the last s1 vertex and the first s2 vertex.
    std::size_t start = 0;
    for (std::size_t i = 0; i < path.size(); ++i)
      if (in1[path[i]]) start = i;
    std::size_t stop = start;
    while (!in2[path[stop]]) ++stop;
    result.paths.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(start),
                              path.begin() + static_cast<std::ptrdiff_t>(stop) + 1);
  }
  if (result.paths.size() != result.cut.size())
    throw std::logic_error("flow decomposition does not match the cut size");
  return result;
}

VertexSet minimalize(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                     std::span<const Vertex> x, std::span<const Vertex> order) {
  check_sides(g, s1, s2);
  std::vector<char> blocked = interior_mask(g, s1, s2, x);
  if (!separates(g, s1, s2, blocked)) throw PreconditionError("set is not a separator");
  std::vector<Vertex> scan;
  if (order.empty())
    scan.assign(x.begin(), x.end());
  else
    scan.assign(order.begin(), order.end());
  std::vector<char> in_x = membership(g.vertex_count(), x);
  for (Vertex v : scan) {
    if (!in_x[v] || !blocked[v]) continue;
    blocked[v] = 0;
    if (!separates(g, s1, s2, blocked)) blocked[v] = 1;
  }
  // Separation is monotone in the set, so one pass leaves a minimal set.
  VertexSet out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (blocked[v]) out.push_back(v);
  return out;
}

bool is_minimal_separator(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                          std::span<const Vertex> x) {
  check_sides(g, s1, s2);
  std::vector<char> blocked = interior_mask(g, s1, s2, x);
  if (!separates(g, s1, s2, blocked)) return false;
  for (Vertex v : x) {
    blocked[v] = 0;
    bool still = separates(g, s1, s2, blocked);
    blocked[v] = 1;
    if (still) return false;
  }
  return true;
}

bool separator_is_connected(const Graph& g, std::span<const Vertex> x) { return is_connected_subset(g, x); }

VertexSet sample_separator(const Graph& g, std::span<const Vertex> s1, std::span<const Vertex> s2,
                           std::span<const Vertex> plane, std::mt19937_64& rng) {
  const int n = g.vertex_count();
  std::vector<char> side = membership(n, s1);
  for (Vertex v : s2) side[v] = 1;
  std::vector<Vertex> interior;
  for (Vertex v = 0; v < n; ++v)
    if (!side[v]) interior.push_back(v);

  // Density in percent, drawn per sample.
  const unsigned density = static_cast<unsigned>(rng() % 60);
  std::vector<char> chosen(n, 0);
  const bool noisy_plane = !plane.empty() && (rng() & 1u);
  if (noisy_plane)
    for (Vertex v : plane) chosen[v] = 1;
  for (Vertex v : interior)
    if (rng() % 100 < density) chosen[v] = 1;

  if (!separates(g, s1, s2, chosen)) {
    // Complete with a minimum cut of the graph with the chosen set removed.
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < n; ++v)
      if (!chosen[v]) keep.push_back(v);
    Subgraph rest = induced_subgraph(g, keep);
    std::vector<Vertex> a;
    std::vector<Vertex> b;
    for (Vertex v : s1) a.push_back(rest.to_local(v));
    for (Vertex v : s2) b.push_back(rest.to_local(v));
    SideCut cut = min_side_separator(rest.graph, a, b);
    for (Vertex v : cut.cut) chosen[rest.original[v]] = 1;
  }
  VertexSet x;
  for (Vertex v = 0; v < n; ++v)
    if (chosen[v]) x.push_back(v);
  std::vector<Vertex> order = x;
  std::shuffle(order.begin(), order.end(), rng);
  return minimalize(g, s1, s2, x, order);
}

// ---------------------------------------------------------------------------

LocalEnlargement local_enlargement(const GridGraph& host, const Staircase& path, int b) {
  if (path.length() < 2) throw PreconditionError("staircase needs at least two vertices");
  Enlargement e = enlarge(host, path, b);
  LocalEnlargement out{e, e.graph.graph(), {}};
  out.host.reserve(e.graph.vertex_count());
  for (Vertex v = 0; v < e.graph.vertex_count(); ++v) out.host.push_back(host.index(e.graph.coord(v)));
  return out;
}

namespace {

// Local vertices of A_i that lie strictly between the sides.
std::vector<char> class_interior(const LocalEnlargement& le, int cls, const Partition2& part) {
  const int n = le.graph.vertex_count();
  std::vector<char> side = membership(n, le.enlargement.left);
  for (Vertex v : le.enlargement.right) side[v] = 1;
  std::vector<char> out(n, 0);
  for (Vertex v = 0; v < n; ++v) out[v] = !side[v] && part[le.host[v]] == cls;
  return out;
}

}  // namespace

bool is_blocked(const GridGraph& host, const Staircase& path, int b, int cls, const Partition2& part) {
  LocalEnlargement le = local_enlargement(host, path, b);
  std::vector<char> blocked = class_interior(le, cls, part);
  return separates(le.graph, le.enlargement.left, le.enlargement.right, blocked);
}

std::vector<Vertex> unblocking_path(const GridGraph& host, const Staircase& path, int b, int cls,
                                    const Partition2& part) {
  LocalEnlargement le = local_enlargement(host, path, b);
  const Graph& g = le.graph;
  std::vector<char> blocked = class_interior(le, cls, part);
  std::vector<char> in_left = membership(g.vertex_count(), le.enlargement.left);
  std::vector<char> in_right = membership(g.vertex_count(), le.enlargement.right);

  std::vector<Vertex> parent(g.vertex_count(), -1);
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<Vertex> queue;
  for (Vertex v : le.enlargement.left) {
    seen[v] = 1;
    queue.push_back(v);
  }
  Vertex hit = -1;
  while (!queue.empty() && hit < 0) {
    Vertex u = queue.front();
    queue.pop_front();
    for (const Incidence& inc : g.incident(u)) {
      Vertex w = inc.to;
      if (seen[w] || blocked[w]) continue;
      seen[w] = 1;
      parent[w] = u;
      if (in_right[w]) {
        hit = w;
        break;
      }
      queue.push_back(w);
    }
  }
  if (hit < 0) return {};
  std::vector<Vertex> local{hit};
  while (!in_left[local.back()]) local.push_back(parent[local.back()]);
  std::reverse(local.begin(), local.end());
  // BFS from the whole left side never re-enters it and stops at the first
  // right-side vertex, so the interior already avoids both sides.
  std::vector<Vertex> out;
  for (Vertex v : local) out.push_back(le.host[v]);
  return out;
}

VertexSet blocked_component(const GridGraph& host, const Staircase& path, int b, int cls,
                            const Partition2& part) {
  LocalEnlargement inner = local_enlargement(host, path, b);
  std::vector<char> blocked = class_interior(inner, cls, part);
  if (!separates(inner.graph, inner.enlargement.left, inner.enlargement.right, blocked))
    throw PreconditionError("staircase is not blocked");
  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < inner.graph.vertex_count(); ++v)
    if (blocked[v]) candidates.push_back(v);
  VertexSet x = minimalize(inner.graph, inner.enlargement.left, inner.enlargement.right, candidates);

  LocalEnlargement outer = local_enlargement(host, path, b + 1);
  const int m = outer.graph.vertex_count();
  std::vector<Vertex> in_class;
  for (Vertex v = 0; v < m; ++v)
    if (part[outer.host[v]] == cls) in_class.push_back(v);
  Subgraph mi = induced_subgraph(outer.graph, in_class);
  std::vector<int> label;
  connected_components(mi.graph, label);

  Vertex seed_local = outer.enlargement.graph.index(inner.enlargement.graph.coord(x.front()));
  const int target = label[mi.to_local(seed_local)];
  for (Vertex v : x) {
    Vertex o = outer.enlargement.graph.index(inner.enlargement.graph.coord(v));
    if (label[mi.to_local(o)] != target) throw std::logic_error("minimal blocking set is disconnected");
  }

  // Components of M_i touching both sides must be the chosen one.
  std::vector<char> touches_left(label.size(), 0);
  std::vector<char> touches_right(label.size(), 0);
  for (Vertex v : outer.enlargement.left)
    if (int l = mi.to_local(v); l >= 0) touches_left[label[l]] = 1;
  for (Vertex v : outer.enlargement.right)
    if (int l = mi.to_local(v); l >= 0) touches_right[label[l]] = 1;
  for (std::size_t c = 0; c < touches_left.size(); ++c)
    if (touches_left[c] && touches_right[c] && static_cast<int>(c) != target)
      throw std::logic_error("a second component joins the sides");

  VertexSet out;
  for (Vertex v = 0; v < mi.graph.vertex_count(); ++v)
    if (label[v] == target) out.push_back(outer.host[mi.original[v]]);
  return make_vertex_set(std::move(out));
}

}  // namespace qtw
