#include "qtw/decomposition.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace qtw {

int TreeDecomposition::width() const {
  int best = -1;
  for (const auto& bag : bags) best = std::max(best, static_cast<int>(bag.size()) - 1);
  return best;
}

namespace {

bool fail(std::string* why, const std::string& message) {
  if (why) *why = message;
  return false;
}

std::vector<std::vector<int>> tree_adjacency(const TreeDecomposition& td) {
  std::vector<std::vector<int>> adj(td.node_count());
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

}  // namespace

bool validate_decomposition(const Graph& g, const TreeDecomposition& td, std::string* why) {
  const int nodes = td.node_count();
  const int n = g.vertex_count();
  if (nodes == 0) {
    if (n == 0 && td.tree_edges.empty()) return true;
    return fail(why, "no bags for a non-empty graph");
  }
  if (static_cast<int>(td.tree_edges.size()) != nodes - 1) return fail(why, "tree has wrong edge count");
  for (auto [a, b] : td.tree_edges)
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) return fail(why, "bad tree edge");
  auto adj = tree_adjacency(td);
  {
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    if (count != nodes) return fail(why, "tree is disconnected");
  }

  std::vector<std::vector<int>> holders(n);
  for (int node = 0; node < nodes; ++node)
    for (Vertex v : td.bags[node]) {
      if (v < 0 || v >= n) return fail(why, "bag holds an unknown vertex");
      holders[v].push_back(node);
    }
  for (Vertex v = 0; v < n; ++v)
    if (holders[v].empty()) return fail(why, "vertex " + std::to_string(v) + " is in no bag");

  for (const Edge& e : g.edges()) {
    bool covered = false;
    for (int node : holders[e.u])
      if (std::binary_search(td.bags[node].begin(), td.bags[node].end(), e.v)) {
        covered = true;
        break;
      }
    if (!covered)
      return fail(why, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is in no bag");
  }

  std::vector<char> holds(nodes, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (int node : holders[v]) holds[node] = 1;
    std::vector<int> stack{holders[v].front()};
    std::vector<char> seen(nodes, 0);
    seen[stack.back()] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (holds[w] && !seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    for (int node : holders[v]) holds[node] = 0;
    if (count != holders[v].size())
      return fail(why, "bags holding vertex " + std::to_string(v) + " are not connected");
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

using AdjSets = std::vector<std::set<Vertex>>;

AdjSets adjacency_sets(const Graph& g) {
  AdjSets adj(g.vertex_count());
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return adj;
}

// Removes v and turns its neighbourhood into a clique.
void eliminate(AdjSets& adj, Vertex v) {
  std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
  for (Vertex a : nb) {
    adj[a].erase(v);
    for (Vertex b : nb)
      if (a != b) adj[a].insert(b);
  }
  adj[v].clear();
}

}  // namespace

int ordering_width(const Graph& g, std::span<const Vertex> order) {
  if (static_cast<int>(order.size()) != g.vertex_count()) throw PreconditionError("ordering size mismatch");
  AdjSets adj = adjacency_sets(g);
  int width = -1;
  for (Vertex v : order) {
    width = std::max(width, static_cast<int>(adj[v].size()));
    eliminate(adj, v);
  }
  return width;
}

TreeDecomposition decomposition_from_ordering(const Graph& g, std::span<const Vertex> order) {
  const int n = g.vertex_count();
  if (static_cast<int>(order.size()) != n) throw PreconditionError("ordering size mismatch");
  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || position[order[i]] >= 0)
      throw PreconditionError("ordering is not a permutation");
    position[order[i]] = i;
  }
  AdjSets adj = adjacency_sets(g);
  TreeDecomposition td;
  td.bags.resize(n);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    Vertex v = order[i];
    std::vector<Vertex> bag(adj[v].begin(), adj[v].end());
    // Node i is the bag of the i-th eliminated vertex.
    if (bag.empty()) {
      roots.push_back(i);
    } else {
      Vertex parent = *std::min_element(bag.begin(), bag.end(), [&](Vertex a, Vertex b) {
        return position[a] < position[b];
      });
      td.tree_edges.emplace_back(i, position[parent]);
    }
    bag.push_back(v);
    td.bags[i] = make_vertex_set(std::move(bag));
    eliminate(adj, v);
  }
  for (std::size_t r = 1; r < roots.size(); ++r) td.tree_edges.emplace_back(roots[r - 1], roots[r]);
  return td;
}

OrderingResult min_fill_ordering(const Graph& g) {
  const int n = g.vertex_count();
  AdjSets adj = adjacency_sets(g);
  std::vector<char> done(n, 0);
  OrderingResult result{-1, {}};
  for (int step = 0; step < n; ++step) {
    Vertex pick = -1;
    long best_fill = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (done[v]) continue;
      long fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      if (pick < 0 || fill < best_fill ||
          (fill == best_fill && adj[v].size() < adj[pick].size())) {
        pick = v;
        best_fill = fill;
      }
    }
    result.width = std::max(result.width, static_cast<int>(adj[pick].size()));
    result.order.push_back(pick);
    eliminate(adj, pick);
    done[pick] = 1;
  }
  return result;
}

int minor_min_width(const Graph& g) {
  AdjSets adj = adjacency_sets(g);
  std::set<Vertex> alive;
  for (Vertex v = 0; v < g.vertex_count(); ++v) alive.insert(v);
  int bound = g.vertex_count() > 0 ? 0 : -1;
  while (alive.size() > 1) {
    Vertex v = *std::min_element(alive.begin(), alive.end(), [&](Vertex a, Vertex b) {
      return adj[a].size() < adj[b].size();
    });
    bound = std::max(bound, static_cast<int>(adj[v].size()));
    if (!adj[v].empty()) {
      Vertex u = *std::min_element(adj[v].begin(), adj[v].end(), [&](Vertex a, Vertex b) {
        return adj[a].size() < adj[b].size();
      });
      // Contract v into u.
      for (Vertex w : adj[v]) {
        adj[w].erase(v);
        if (w != u) {
          adj[w].insert(u);
          adj[u].insert(w);
        }
      }
    }
    adj[v].clear();
    alive.erase(v);
  }
  return bound;
}

// ---------------------------------------------------------------------------
// Exact search on components of at most 64 vertices, adjacency as bitmasks.

namespace {

using Mask = std::uint64_t;
using MaskAdj = std::array<Mask, 64>;

inline Mask bit(int v) { return Mask{1} << v; }

int mask_mmw(Mask rem, MaskAdj adj) {
  int bound = 0;
  while (std::popcount(rem) > 1) {
    int v = -1;
    int deg_v = 65;
    for (Mask it = rem; it; it &= it - 1) {
      int w = std::countr_zero(it);
      int d = std::popcount(adj[w]);
      if (d < deg_v) {
        deg_v = d;
        v = w;
      }
    }
    bound = std::max(bound, deg_v);
    if (deg_v > 0) {
      int u = -1;
      int deg_u = 65;
      for (Mask it = adj[v]; it; it &= it - 1) {
        int w = std::countr_zero(it);
        int d = std::popcount(adj[w]);
        if (d < deg_u) {
          deg_u = d;
          u = w;
        }
      }
      for (Mask it = adj[v]; it; it &= it - 1) {
        int w = std::countr_zero(it);
        adj[w] &= ~bit(v);
        if (w != u) {
          adj[w] |= bit(u);
          adj[u] |= bit(w);
        }
      }
    }
    adj[v] = 0;
    rem &= ~bit(v);
  }
  return bound;
}

void mask_eliminate(MaskAdj& adj, int v) {
  Mask nb = adj[v];
  for (Mask it = nb; it; it &= it - 1) {
    int w = std::countr_zero(it);
    adj[w] = (adj[w] | nb) & ~bit(w) & ~bit(v);
  }
  adj[v] = 0;
}

bool is_clique(const MaskAdj& adj, Mask set) {
  for (Mask it = set; it; it &= it - 1) {
    int w = std::countr_zero(it);
    if ((adj[w] & set) != (set & ~bit(w))) return false;
  }
  return true;
}

class EliminationSearch {
 public:
  EliminationSearch(int m, const MaskAdj& adj, int best, std::vector<int> best_order,
                    int stop_at, std::uint64_t budget)
      : m_(m), adj0_(adj), best_(best), best_order_(std::move(best_order)),
        stop_at_(stop_at), budget_(budget) {}

  void run() {
    Mask all = m_ == 64 ? ~Mask{0} : bit(m_) - 1;
    MaskAdj adj = adj0_;
    dfs(all, adj, -1);
  }

  int best() const { return best_; }
  const std::vector<int>& best_order() const { return best_order_; }
  bool aborted() const { return aborted_; }

 private:
  bool finished() const { return aborted_ || best_ <= stop_at_; }

  void record(int width, Mask rem) {
    best_ = width;
    best_order_ = path_;
    for (Mask it = rem; it; it &= it - 1) best_order_.push_back(std::countr_zero(it));
  }

  void dfs(Mask rem, MaskAdj& adj, int width) {
    if (finished()) return;
    if (budget_ && ++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    int left = std::popcount(rem);
    if (std::max(width, left - 1) < best_) {
      // Any order of the remaining vertices is within left-1.
      if (left - 1 <= width || left <= 1) {
        record(std::max(width, left - 1), rem);
        return;
      }
    }
    if (width >= best_) return;
    if (auto it = memo_.find(rem); it != memo_.end() && it->second <= width) return;
    memo_[rem] = width;

    int lower = mask_mmw(rem, adj);
    if (std::max(width, lower) >= best_) return;
    if (std::max(width, left - 1) < best_) {
      record(std::max(width, left - 1), rem);
      if (finished() || best_ <= std::max(width, lower)) return;
    }

    // Safe reductions: simplicial vertices, and almost simplicial vertices
    // whose degree does not exceed the lower bound.
    for (Mask it = rem; it; it &= it - 1) {
      int v = std::countr_zero(it);
      Mask nb = adj[v];
      int deg = std::popcount(nb);
      bool safe = is_clique(adj, nb);
      if (!safe && deg <= std::max(width, lower)) {
        for (Mask jt = nb; jt && !safe; jt &= jt - 1)
          safe = is_clique(adj, nb & ~bit(std::countr_zero(jt)));
      }
      if (safe) {
        MaskAdj next = adj;
        mask_eliminate(next, v);
        path_.push_back(v);
        dfs(rem & ~bit(v), next, std::max(width, deg));
        path_.pop_back();
        return;
      }
    }

    std::vector<std::pair<int, int>> candidates;
    for (Mask it = rem; it; it &= it - 1) {
      int v = std::countr_zero(it);
      candidates.emplace_back(std::popcount(adj[v]), v);
    }
    std::sort(candidates.begin(), candidates.end());
    for (auto [deg, v] : candidates) {
      int next_width = std::max(width, deg);
      if (next_width >= best_) continue;
      MaskAdj next = adj;
      mask_eliminate(next, v);
      path_.push_back(v);
      dfs(rem & ~bit(v), next, next_width);
      path_.pop_back();
      if (finished() || best_ <= std::max(width, lower)) return;
    }
  }

  int m_;
  MaskAdj adj0_;
  int best_;
  std::vector<int> best_order_;
  int stop_at_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<int> path_;
  std::unordered_map<Mask, int> memo_;
};

struct ComponentSolve {
  int width;
  std::vector<Vertex> order;  // parent ids
  bool aborted;
};

// Searches for an ordering of the component strictly better than `ceiling`
// (or optimal when ceiling is large), stopping once width <= stop_at.
ComponentSolve solve_component(const Subgraph& comp, int stop_at, int ceiling,
                               std::uint64_t budget) {
  const Graph& h = comp.graph;
  const int m = h.vertex_count();
  MaskAdj adj{};
  for (const Edge& e : h.edges()) {
    adj[e.u] |= bit(e.v);
    adj[e.v] |= bit(e.u);
  }
  OrderingResult heuristic = min_fill_ordering(h);
  int start_best = heuristic.width;
  std::vector<int> start_order = heuristic.order;
  if (ceiling <= start_best) {
    start_best = ceiling;
    start_order.clear();
  }
  EliminationSearch search(m, adj, start_best, start_order, stop_at, budget);
  if (start_best > stop_at) search.run();
  ComponentSolve out{search.best(), {}, search.aborted()};
  for (int v : search.best_order()) out.order.push_back(comp.original[v]);
  return out;
}

std::vector<VertexSet> component_sets(const Graph& g) {
  std::vector<int> label;
  int k = connected_components(g, label);
  std::vector<VertexSet> comps(k);
  for (Vertex v = 0; v < g.vertex_count(); ++v) comps[label[v]].push_back(v);
  return comps;
}

}  // namespace

TreewidthResult exact_treewidth(const Graph& g, const SolverLimits& limits) {
  std::vector<Vertex> order;
  int width = -1;
  for (const VertexSet& comp : component_sets(g)) {
    const int size = static_cast<int>(comp.size());
    if (size > std::min(limits.max_component_vertices, 64))
      throw GuardExceeded("component with " + std::to_string(size) +
                          " vertices exceeds the exact treewidth guard");
    Subgraph sub = induced_subgraph(g, comp);
    ComponentSolve solved = solve_component(sub, -1, size, limits.node_budget);
    if (solved.aborted) throw GuardExceeded("exact treewidth search ran out of budget");
    width = std::max(width, solved.width);
    order.insert(order.end(), solved.order.begin(), solved.order.end());
  }
  TreewidthResult result{width, decomposition_from_ordering(g, order), std::move(order)};
  return result;
}

namespace {

// Greedy elimination of vertices of degree <= k. For k <= 2 the graph has
// treewidth <= k exactly when this empties it.
std::optional<std::vector<Vertex>> low_degree_elimination(const Graph& g, int k) {
  AdjSets adj = adjacency_sets(g);
  std::vector<char> done(g.vertex_count(), 0);
  std::vector<Vertex> order;
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (static_cast<int>(adj[v].size()) <= k) queue.push_back(v);
  while (!queue.empty()) {
    Vertex v = queue.back();
    queue.pop_back();
    if (done[v] || static_cast<int>(adj[v].size()) > k) continue;
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    eliminate(adj, v);
    done[v] = 1;
    order.push_back(v);
    for (Vertex w : nb)
      if (!done[w] && static_cast<int>(adj[w].size()) <= k) queue.push_back(w);
  }
  if (static_cast<int>(order.size()) != g.vertex_count()) return std::nullopt;
  return order;
}

}  // namespace

WidthDecision treewidth_at_most(const Graph& g, int k, const SolverLimits& limits) {
  if (g.vertex_count() == 0) {
    if (k >= -1) return {WidthVerdict::AtMost, "empty graph", TreeDecomposition{}};
    return {WidthVerdict::Exceeds, "empty graph", std::nullopt};
  }
  if (k < 0) return {WidthVerdict::Exceeds, "non-empty graph", std::nullopt};
  if (k <= 2) {
    auto order = low_degree_elimination(g, k);
    if (order) return {WidthVerdict::AtMost, "degree reduction", decomposition_from_ordering(g, *order)};
    return {WidthVerdict::Exceeds, k == 0   ? "has an edge"
                                   : k == 1 ? "has a cycle"
                                            : "irreducible by series-parallel rules",
            std::nullopt};
  }
  if (minor_min_width(g) > k) return {WidthVerdict::Exceeds, "minor-min-width", std::nullopt};
  OrderingResult heuristic = min_fill_ordering(g);
  if (heuristic.width <= k)
    return {WidthVerdict::AtMost, "min-fill", decomposition_from_ordering(g, heuristic.order)};

  std::vector<Vertex> order;
  for (const VertexSet& comp : component_sets(g)) {
    Subgraph sub = induced_subgraph(g, comp);
    OrderingResult local = min_fill_ordering(sub.graph);
    if (local.width <= k) {
      for (Vertex v : local.order) order.push_back(sub.original[v]);
      continue;
    }
    if (static_cast<int>(comp.size()) > std::min(limits.max_component_vertices, 64))
      return {WidthVerdict::Unknown, "component beyond exact guard", std::nullopt};
    ComponentSolve solved = solve_component(sub, k, k + 1, limits.node_budget);
    if (solved.width <= k) {
      order.insert(order.end(), solved.order.begin(), solved.order.end());
      continue;
    }
    if (solved.aborted) return {WidthVerdict::Unknown, "search budget exhausted", std::nullopt};
    return {WidthVerdict::Exceeds, "exhaustive elimination search", std::nullopt};
  }
  return {WidthVerdict::AtMost, "exhaustive elimination search", decomposition_from_ordering(g, order)};
}

// ---------------------------------------------------------------------------

WeightFunction WeightFunction::uniform(int vertex_count, std::int64_t value) {
  return WeightFunction{std::vector<std::int64_t>(vertex_count, value), 1};
}

std::int64_t WeightFunction::numerator_of(std::span<const Vertex> set) const {
  std::int64_t total = 0;
  for (Vertex v : set) total += numerator[v];
  return total;
}

std::int64_t WeightFunction::numerator_total() const {
  return std::accumulate(numerator.begin(), numerator.end(), std::int64_t{0});
}

bool is_separation(const Graph& g, const Separation& s) {
  if (set_union(s.k, s.l).size() != static_cast<std::size_t>(g.vertex_count())) return false;
  VertexSet k_only = set_difference(s.k, s.l);
  VertexSet l_only = set_difference(s.l, s.k);
  std::vector<char> in_l_only = membership(g.vertex_count(), l_only);
  for (Vertex v : k_only)
    for (const Incidence& inc : g.incident(v))
      if (in_l_only[inc.to]) return false;
  return true;
}

BalancedSeparation balanced_separation(const Graph& h, const TreeDecomposition& td,
                                       const WeightFunction& w) {
  const int n = h.vertex_count();
  if (static_cast<int>(w.numerator.size()) != n) throw PreconditionError("weight size mismatch");
  if (w.denominator <= 0) throw PreconditionError("weight denominator must be positive");
  for (std::int64_t num : w.numerator)
    if (num > w.denominator || -num > w.denominator) throw PreconditionError("|weight| exceeds 1");
  std::string why;
  if (!validate_decomposition(h, td, &why)) throw PreconditionError("invalid decomposition: " + why);
  const int t = td.width();
  const std::int64_t total = w.numerator_total();
  if (total < (3 * static_cast<std::int64_t>(t) + 3) * w.denominator)
    throw PreconditionError("total weight is below 3t+3");

  const int nodes = td.node_count();
  auto adj = tree_adjacency(td);

  // S_{u,v}: vertices in bags of the component of T - uv containing v,
  // minus the bag of u.
  auto side_set = [&](int u, int v) {
    std::vector<char> in(n, 0);
    std::vector<int> stack{v};
    std::vector<char> seen(nodes, 0);
    seen[u] = seen[v] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (Vertex y : td.bags[x]) in[y] = 1;
      for (int z : adj[x])
        if (!seen[z]) {
          seen[z] = 1;
          stack.push_back(z);
        }
    }
    for (Vertex y : td.bags[u]) in[y] = 0;
    VertexSet out;
    for (Vertex y = 0; y < n; ++y)
      if (in[y]) out.push_back(y);
    return out;
  };
  auto heavy = [&](std::int64_t mass) { return 3 * mass > 2 * total; };

  int current = 0;
  int previous = -1;
  while (true) {
    int next = -1;
    for (int v : adj[current]) {
      if (heavy(w.numerator_of(side_set(current, v)))) {
        next = v;
        break;
      }
    }
    if (next < 0) break;
    if (next == previous)
      throw std::logic_error("two opposite heavy sides; weights contradict the bound");
    previous = current;
    current = next;
  }

  const int u = current;
  struct Branch {
    VertexSet set;
    std::int64_t mass;
  };
  std::vector<Branch> branches;
  for (int v : adj[u]) {
    VertexSet s = side_set(u, v);
    std::int64_t mass = w.numerator_of(s);
    branches.push_back({std::move(s), mass});
  }
  std::stable_sort(branches.begin(), branches.end(),
                   [](const Branch& a, const Branch& b) { return a.mass > b.mass; });

  // The branches are disjoint and together with the centre bag cover V.
  {
    std::vector<int> count(n, 0);
    for (Vertex v : td.bags[u]) ++count[v];
    for (const Branch& b : branches)
      for (Vertex v : b.set) ++count[v];
    for (Vertex v = 0; v < n; ++v)
      if (count[v] != 1) throw std::logic_error("subtree vertex sets are not a partition");
  }

  int split = 0;
  std::int64_t prefix = 0;
  while (split < static_cast<int>(branches.size()) && 3 * prefix < total) {
    prefix += branches[split].mass;
    ++split;
  }
  if (3 * prefix < total) throw std::logic_error("branch masses never reach a third");

  BalancedSeparation out;
  out.center = u;
  out.groups = split;
  VertexSet k = td.bags[u];
  VertexSet l = td.bags[u];
  for (int i = 0; i < static_cast<int>(branches.size()); ++i) {
    if (i < split)
      k = set_union(k, branches[i].set);
    else
      l = set_union(l, branches[i].set);
  }
  out.separation = {std::move(k), std::move(l)};
  return out;
}

// ---------------------------------------------------------------------------

bool validate_bramble(const Graph& g, const Bramble& bramble) {
  for (const VertexSet& b : bramble) {
    if (b.empty()) return false;
    for (Vertex v : b)
      if (v < 0 || v >= g.vertex_count()) return false;
  }
  for (std::size_t i = 0; i < bramble.size(); ++i)
    for (std::size_t j = i; j < bramble.size(); ++j)
      if (!is_connected_subset(g, set_union(bramble[i], bramble[j]))) return false;
  return true;
}

int bramble_order(const Bramble& bramble, int max_sets) {
  const int sets = static_cast<int>(bramble.size());
  if (sets > std::min(max_sets, 64)) throw GuardExceeded("too many bramble sets for exact hitting set");
  if (sets == 0) return 0;
  std::unordered_map<Vertex, Mask> hits;
  for (int i = 0; i < sets; ++i)
    for (Vertex v : bramble[i]) hits[v] |= bit(i);

  std::vector<Mask> masks;
  for (const auto& [v, m] : hits) masks.push_back(m);
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  // Drop masks contained in another mask.
  std::vector<Mask> useful;
  for (Mask m : masks) {
    bool dominated = std::any_of(masks.begin(), masks.end(),
                                 [m](Mask o) { return o != m && (o & m) == m; });
    if (!dominated) useful.push_back(m);
  }
  std::sort(useful.begin(), useful.end(),
            [](Mask a, Mask b) { return std::popcount(a) > std::popcount(b); });

  std::vector<Mask> co_hit(sets, 0);  // sets sharing a hitter with set i
  for (Mask m : useful)
    for (Mask it = m; it; it &= it - 1) co_hit[std::countr_zero(it)] |= m;

  auto packing_bound = [&](Mask open) {
    int count = 0;
    while (open) {
      int s = std::countr_zero(open);
      open &= ~co_hit[s];
      ++count;
    }
    return count;
  };

  int best = sets;
  std::function<void(Mask, int)> search = [&](Mask open, int used) {
    if (!open) {
      best = std::min(best, used);
      return;
    }
    if (used + packing_bound(open) >= best) return;
    int pick = -1;
    int options = 1 << 30;
    for (Mask it = open; it; it &= it - 1) {
      int s = std::countr_zero(it);
      int c = 0;
      for (Mask m : useful)
        if (m & bit(s)) ++c;
      if (c < options) {
        options = c;
        pick = s;
      }
    }
    for (Mask m : useful)
      if (m & bit(pick)) search(open & ~m, used + 1);
  };
  Mask all = sets == 64 ? ~Mask{0} : bit(sets) - 1;
  search(all, 0);
  return best;
}

// ---------------------------------------------------------------------------

std::string to_text(const TreeDecomposition& td) {
  std::ostringstream out;
  out << td.node_count() << ' ' << td.width() << '\n';
  for (const VertexSet& bag : td.bags) {
    for (std::size_t i = 0; i < bag.size(); ++i) out << (i ? " " : "") << bag[i];
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a << ' ' << b << '\n';
  return out.str();
}

TreeDecomposition decomposition_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("missing decomposition header");
  std::istringstream header(line);
  int nodes = 0;
  int width = 0;
  if (!(header >> nodes >> width) || nodes < 0) throw PreconditionError("bad decomposition header");
  TreeDecomposition td;
  for (int i = 0; i < nodes; ++i) {
    if (!std::getline(in, line)) throw PreconditionError("missing bag line");
    std::istringstream row(line);
    std::vector<Vertex> bag;
    for (Vertex v; row >> v;) bag.push_back(v);
    td.bags.push_back(make_vertex_set(std::move(bag)));
  }
  while (std::getline(in, line)) {
    std::istringstream row(line);
    int a = 0;
    int b = 0;
    if (!(row >> a)) continue;
    if (!(row >> b)) throw PreconditionError("bad tree edge line");
    td.tree_edges.emplace_back(a, b);
  }
  if (td.width() != width) throw PreconditionError("header width disagrees with bags");
  return td;
}

std::string to_json_string(const Bramble& bramble) { return nlohmann::json(bramble).dump(); }

Bramble bramble_from_json_string(const std::string& text) {
  auto sets = nlohmann::json::parse(text).get<std::vector<std::vector<Vertex>>>();
  Bramble out;
  for (auto& s : sets) out.push_back(make_vertex_set(std::move(s)));
  return out;
}

}  // namespace qtw
