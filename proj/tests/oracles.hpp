#pragma once

// Slow, direct reference implementations used to check the library.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qtw/graph.hpp"

namespace oracle {

using AdjMatrix = std::vector<std::vector<char>>;

inline AdjMatrix matrix(const qtw::Graph& g) {
  AdjMatrix a(g.vertex_count(), std::vector<char>(g.vertex_count(), 0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

// Width of an elimination order computed on an explicit fill matrix.
inline int elimination_width(AdjMatrix a, const std::vector<int>& order) {
  const int n = static_cast<int>(a.size());
  std::vector<char> gone(n, 0);
  int width = -1;
  for (int v : order) {
    std::vector<int> nb;
    for (int u = 0; u < n; ++u)
      if (!gone[u] && u != v && a[v][u]) nb.push_back(u);
    width = std::max(width, static_cast<int>(nb.size()));
    for (int x : nb)
      for (int y : nb)
        if (x != y) a[x][y] = 1;
    gone[v] = 1;
  }
  return width;
}

// Minimum over all n! elimination orders. -1 for the empty graph.
inline int brute_force_treewidth(const qtw::Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return -1;
  AdjMatrix a = matrix(g);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  int best = n;
  do {
    best = std::min(best, elimination_width(a, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline qtw::Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return qtw::Graph(n, edges);
}

// Union-find acyclicity test on the subgraph induced by `in`.
inline bool induced_forest(const qtw::Graph& g, const std::vector<char>& in) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    if (!in[e.u] || !in[e.v]) continue;
    int a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

// Vertices reachable from `from` avoiding `blocked`, by plain DFS on the
// adjacency matrix.
inline std::vector<char> reach(const AdjMatrix& a, const std::vector<int>& from, const std::vector<char>& blocked) {
  std::vector<char> seen(a.size(), 0);
  std::vector<int> stack;
  for (int v : from)
    if (!blocked[v] && !seen[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (std::size_t u = 0; u < a.size(); ++u)
      if (a[v][u] && !blocked[u] && !seen[u]) {
        seen[u] = 1;
        stack.push_back(static_cast<int>(u));
      }
  }
  return seen;
}

// Minimum hitting set by trying all subsets of the union, smallest first.
inline int brute_force_hitting_set(const std::vector<std::vector<int>>& sets) {
  std::set<int> all;
  for (const auto& s : sets) all.insert(s.begin(), s.end());
  std::vector<int> u(all.begin(), all.end());
  const int m = static_cast<int>(u.size());
  if (m > 20) return -1;
  int best = m;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best) continue;
    bool hits = true;
    for (const auto& s : sets) {
      bool any = false;
      for (int v : s) {
        int i = static_cast<int>(std::lower_bound(u.begin(), u.end(), v) - u.begin());
        if (mask & (1u << i)) any = true;
      }
      if (!any) hits = false;
    }
    if (hits) best = size;
  }
  return best;
}

}  // namespace oracle
