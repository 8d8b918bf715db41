#include "qtw/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qtw {

Graph::Graph(int vertex_count, std::vector<std::pair<Vertex, Vertex>> edges) {
  if (vertex_count < 0) throw PreconditionError("negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw PreconditionError("edge endpoint out of range");
    if (u == v) throw PreconditionError("self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  incidence_.assign(vertex_count, {});
  edges_.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v});
    incidence_[u].push_back({v, id});
    incidence_[v].push_back({u, id});
  }
  for (auto& list : incidence_)
    std::sort(list.begin(), list.end(),
              [](const Incidence& a, const Incidence& b) { return a.to < b.to; });
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& list : incidence_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u < 0 || u >= vertex_count()) return std::nullopt;
  const auto& list = incidence_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Incidence& a, Vertex x) { return a.to < x; });
  if (it == list.end() || it->to != v) return std::nullopt;
  return it->edge;
}

VertexSet Subgraph::to_parent(std::span<const Vertex> local_ids) const {
  std::vector<Vertex> out;
  out.reserve(local_ids.size());
  for (Vertex v : local_ids) out.push_back(original[v]);
  return make_vertex_set(std::move(out));
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  Subgraph sub;
  sub.original = make_vertex_set({vertices.begin(), vertices.end()});
  sub.local.assign(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(sub.original.size()); ++i) sub.local[sub.original[i]] = i;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < static_cast<int>(sub.original.size()); ++i) {
    for (const Incidence& inc : g.incident(sub.original[i])) {
      int j = sub.local[inc.to];
      if (j > i) edges.emplace_back(i, j);
    }
  }
  sub.graph = Graph(static_cast<int>(sub.original.size()), std::move(edges));
  return sub;
}

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

VertexSet set_union(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<char> membership(int vertex_count, std::span<const Vertex> vertices) {
  std::vector<char> mark(vertex_count, 0);
  for (Vertex v : vertices) mark[v] = 1;
  return mark;
}

std::vector<char> reachable(const Graph& g, std::span<const Vertex> sources,
                            const std::vector<char>& blocked) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (!blocked.empty() && blocked[s]) continue;
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Incidence& inc : g.incident(queue[head])) {
      if (seen[inc.to] || (!blocked.empty() && blocked[inc.to])) continue;
      seen[inc.to] = 1;
      queue.push_back(inc.to);
    }
  }
  return seen;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  Vertex start = 0;
  auto seen = reachable(g, std::span<const Vertex>(&start, 1));
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool is_connected_subset(const Graph& g, std::span<const Vertex> vertices) {
  if (vertices.empty()) return true;
  std::vector<char> blocked(g.vertex_count(), 1);
  for (Vertex v : vertices) blocked[v] = 0;
  auto seen = reachable(g, vertices.first(1), blocked);
  return std::all_of(vertices.begin(), vertices.end(), [&](Vertex v) { return seen[v] != 0; });
}

int connected_components(const Graph& g, std::vector<int>& label) {
  label.assign(g.vertex_count(), -1);
  int count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.incident(v)) {
        if (label[inc.to] < 0) {
          label[inc.to] = count;
          stack.push_back(inc.to);
        }
      }
    }
    ++count;
  }
  return count;
}

bool is_forest(const Graph& g) {
  std::vector<int> label;
  int components = connected_components(g, label);
  return g.edge_count() == g.vertex_count() - components;
}

std::string to_dot(const Graph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace qtw
