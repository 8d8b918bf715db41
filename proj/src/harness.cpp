#include "qtw/harness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qtw/calculus.hpp"
#include "qtw/grid.hpp"

namespace qtw {

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

constexpr std::array<LValue, 4> kLabels = {LValue::Minus, LValue::Zero, LValue::Plus, LValue::Star};

enum class Smoothness { Continuous, Holomorphic, Entire };

bool pair_allowed(LValue a, LValue b, Smoothness mode) {
  if ((a == LValue::Plus && b == LValue::Minus) || (a == LValue::Minus && b == LValue::Plus)) return false;
  if (mode == Smoothness::Holomorphic &&
      ((a == LValue::Zero && b == LValue::Star) || (a == LValue::Star && b == LValue::Zero)))
    return false;
  return true;
}

// Labels the unfixed vertices in random order, each uniformly among the
// labels compatible with its labelled neighbours. Empty when stuck.
std::optional<LFunction> random_labelling(const Graph& g, std::mt19937_64& rng, Smoothness mode,
                                          const std::map<Vertex, LValue>& fixed) {
  const int n = g.vertex_count();
  LFunction f(n, LValue::Zero);
  std::vector<char> done(n, 0);
  for (auto [v, l] : fixed) {
    f[v] = l;
    done[v] = 1;
  }
  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v)
    if (!done[v]) order.push_back(v);
  std::shuffle(order.begin(), order.end(), rng);
  for (Vertex v : order) {
    std::vector<LValue> allowed;
    for (LValue l : kLabels) {
      if (mode == Smoothness::Entire && l == LValue::Star) continue;
      bool ok = true;
      for (const Incidence& inc : g.incident(v))
        if (done[inc.to] && !pair_allowed(l, f[inc.to], mode)) ok = false;
      if (ok) allowed.push_back(l);
    }
    if (allowed.empty()) return std::nullopt;
    f[v] = allowed[pick(rng, allowed.size())];
    done[v] = 1;
  }
  return f;
}

}  // namespace

SuiteResult suite_walk_integrals(int n, int max_length) {
  SuiteResult r;
  r.name = "walk_integrals";
  Graph g = build_qn(n).to_graph();
  const int vc = g.vertex_count();
  if (vc > 20) throw GuardExceeded("walk enumeration limited to 20 vertices");

  std::map<std::uint32_t, std::vector<std::vector<Vertex>>> by_set;
  std::vector<Vertex> walk;
  std::function<void(std::uint32_t)> extend = [&](std::uint32_t mask) {
    by_set[mask].push_back(walk);
    if (static_cast<int>(walk.size()) - 1 == max_length) return;
    for (const Incidence& inc : g.incident(walk.back())) {
      walk.push_back(inc.to);
      extend(mask | (1u << inc.to));
      walk.pop_back();
    }
  };
  for (Vertex v = 0; v < vc; ++v) {
    walk = {v};
    extend(1u << v);
  }

  for (const auto& [mask, walks] : by_set) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < vc; ++v)
      if (mask & (1u << v)) members.push_back(v);
    r.special += static_cast<std::int64_t>(walks.size());
    std::int64_t combos = 1;
    for (std::size_t i = 0; i < members.size(); ++i) combos *= 3;
    for (std::int64_t code = 0; code < combos; ++code) {
      LFunction f(vc, LValue::Zero);
      std::int64_t c = code;
      for (Vertex v : members) {
        f[v] = lvalue_from_int(static_cast<int>(c % 3) - 1);
        c /= 3;
      }
      if (!is_entire(g, f, members)) continue;
      OneChain df = d(g, f);
      for (const auto& w : walks) {
        Walk walk_obj = Walk::from_vertices(g, w);
        ++r.cases;
        if (integrate(g, walk_obj, df) != numeric(f[w.back()]) - numeric(f[w.front()])) ++r.violations;
      }
    }
  }
  r.detail = "walks=" + std::to_string(r.special);
  return r;
}

SuiteResult suite_triangles(int n) {
  SuiteResult r;
  r.name = "triangles";
  Graph g = build_qn(n).to_graph();
  const int vc = g.vertex_count();
  std::vector<std::array<Vertex, 3>> triangles;
  for (Vertex a = 0; a < vc; ++a)
    for (const Incidence& ib : g.incident(a))
      for (const Incidence& ic : g.incident(a))
        if (a < ib.to && ib.to < ic.to && g.adjacent(ib.to, ic.to)) triangles.push_back({a, ib.to, ic.to});
  for (const auto& tri : triangles) {
    std::vector<Vertex> on(tri.begin(), tri.end());
    for (int code = 0; code < 64; ++code) {
      LFunction f(vc, LValue::Zero);
      f[tri[0]] = kLabels[code % 4];
      f[tri[1]] = kLabels[(code / 4) % 4];
      f[tri[2]] = kLabels[code / 16];
      if (!is_continuous(g, f, on)) continue;
      OneChain df = d(g, f);
      std::array<Vertex, 3> p = tri;
      do {
        if (p[0] != tri[0] && p[0] != tri[1] && p[0] != tri[2]) continue;
        Walk t = Walk::from_vertices(g, std::vector<Vertex>{p[0], p[1], p[2], p[0]});
        std::int64_t value = integrate(g, t, df);
        bool contractible = is_contractible(g, t, f);
        ++r.cases;
        if (contractible) ++r.special;
        if (value > 1 || value < -1 || (contractible && value != 0)) ++r.violations;
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }
  r.detail = "triangles=" + std::to_string(triangles.size());
  return r;
}

SuiteResult suite_homotopy(int samples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "homotopy";
  std::mt19937_64 rng(seed);
  Slab s = qn_as_slab(3);
  while (r.cases < samples) {
    const bool use_row = rng() & 1u;
    const int layer_index = static_cast<int>(pick(rng, s.n));
    int j1 = static_cast<int>(pick(rng, s.n));
    int j2 = static_cast<int>(pick(rng, s.n - 1));
    if (j2 >= j1) ++j2;
    const Layer& layer = use_row ? s.rows[layer_index] : s.columns[layer_index];
    const auto& w1 = use_row ? s.paths[layer_index][j1] : s.paths[j1][layer_index];
    const auto& w2 = use_row ? s.paths[layer_index][j2] : s.paths[j2][layer_index];

    std::map<std::array<int, 2>, Vertex> at;
    for (std::size_t k = 0; k < layer.vertices.size(); ++k) at[layer.position[k]] = layer.vertices[k];
    std::vector<Vertex> q_vertices, r_vertices;
    const int last = static_cast<int>(w1.size()) - 1;
    for (int b = std::min(j1, j2); b <= std::max(j1, j2); ++b) {
      q_vertices.push_back(at.at({0, b}));
      r_vertices.push_back(at.at({last, b}));
    }
    if (j2 < j1) {
      std::reverse(q_vertices.begin(), q_vertices.end());
      std::reverse(r_vertices.begin(), r_vertices.end());
    }
    std::map<Vertex, LValue> fixed;
    LValue cq = lvalue_from_int(static_cast<int>(pick(rng, 3)) - 1);
    LValue cr = lvalue_from_int(static_cast<int>(pick(rng, 3)) - 1);
    for (Vertex v : q_vertices) fixed[v] = cq;
    for (Vertex v : r_vertices) fixed[v] = cr;
    const auto mode = static_cast<Smoothness>(pick(rng, 3));
    auto f = random_labelling(s.graph, rng, mode, fixed);
    if (!f || !is_continuous(s.graph, *f)) continue;

    Orientation orient = Orientation::random(s.graph, rng);
    std::vector<Walk> triangles = strip_triangles(s, layer, j1, j2);
    std::stable_partition(triangles.begin(), triangles.end(),
                          [&](const Walk& t) { return !is_contractible(s.graph, t, *f); });
    int k = 0;
    for (const Walk& t : triangles)
      if (!is_contractible(s.graph, t, *f)) ++k;
    Walk a = Walk::from_vertices(s.graph, w1);
    Walk b = Walk::from_vertices(s.graph, w2);
    Walk q = Walk::from_vertices(s.graph, q_vertices);
    Walk rr = Walk::from_vertices(s.graph, r_vertices);
    ++r.cases;
    if (!verify_almost_homotopic(s.graph, a, b, q, rr, triangles, *f, k, orient)) {
      ++r.violations;
      continue;
    }
    OneChain df = d(s.graph, *f, orient);
    std::int64_t gap = integrate(s.graph, a, df, orient) - integrate(s.graph, b, df, orient);
    if (k == 0) ++r.special;
    if (gap > k || -gap > k || (k == 0 && gap != 0)) ++r.violations;
  }
  r.detail = "exact_pairs=" + std::to_string(r.special);
  return r;
}

SuiteResult suite_path_weights(int samples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "path_weights";
  std::mt19937_64 rng(seed);
  Graph g = build_qn(3).to_graph();
  const int vc = g.vertex_count();
  while (r.cases < samples) {
    const int target = 2 + static_cast<int>(pick(rng, 9));
    std::vector<Vertex> path{static_cast<Vertex>(pick(rng, vc))};
    std::vector<char> used(vc, 0);
    used[path[0]] = 1;
    while (static_cast<int>(path.size()) <= target) {
      std::vector<Vertex> options;
      for (const Incidence& inc : g.incident(path.back()))
        if (!used[inc.to]) options.push_back(inc.to);
      if (options.empty()) break;
      Vertex next = options[pick(rng, options.size())];
      used[next] = 1;
      path.push_back(next);
    }
    if (path.size() < 3) continue;

    Subgraph on_path = induced_subgraph(g, path);
    auto labels = random_labelling(on_path.graph, rng, Smoothness::Entire, {});
    if (!labels) continue;
    LFunction f(vc, LValue::Zero);
    for (Vertex v = 0; v < on_path.graph.vertex_count(); ++v) f[on_path.original[v]] = (*labels)[v];
    if (f[path.front()] == LValue::Zero || f[path.back()] == LValue::Zero) continue;

    LFunction g_fn(vc, LValue::Zero);
    for (Vertex v = 0; v < vc; ++v) g_fn[v] = kLabels[pick(rng, 4)];
    std::vector<char> in_x(vc, 0);
    for (Vertex v : path) {
      if (f[v] == LValue::Zero) {
        g_fn[v] = (rng() & 1u) ? LValue::Zero : LValue::Star;
        in_x[v] = g_fn[v] == LValue::Zero;
      } else {
        g_fn[v] = f[v];
      }
    }
    Walk walk = Walk::from_vertices(g, path);
    auto weights = path_weights(g, walk, f);
    std::int64_t twice = integrate(g, walk, d(g, g_fn));
    ++r.cases;
    if (twice != doubled_weight_of(weights, in_x)) ++r.violations;
    if (is_holomorphic(g, g_fn, path)) {
      ++r.special;
      if (twice % 2 != 0) ++r.violations;
    }
  }
  r.detail = "holomorphic=" + std::to_string(r.special);
  return r;
}

namespace {

// Partial k-tree on n vertices with some edges dropped; returns the graph
// and an elimination order of width at most k.
std::pair<Graph, std::vector<Vertex>> random_partial_ktree(int n, int k, std::mt19937_64& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<Vertex>> cliques;
  std::vector<Vertex> base;
  for (int v = 0; v <= k && v < n; ++v) {
    for (Vertex u : base) edges.emplace_back(u, v);
    base.push_back(v);
  }
  cliques.push_back(base);
  for (int v = k + 1; v < n; ++v) {
    std::vector<Vertex> c = cliques[pick(rng, cliques.size())];
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(pick(rng, c.size())));
    for (Vertex u : c) edges.emplace_back(u, v);
    c.push_back(v);
    cliques.push_back(c);
  }
  std::vector<std::pair<Vertex, Vertex>> kept;
  for (auto e : edges)
    if (pick(rng, 10) >= 3) kept.push_back(e);
  std::vector<Vertex> order;
  for (int v = n - 1; v >= 0; --v) order.push_back(v);
  return {Graph(n, std::move(kept)), order};
}

}  // namespace

SuiteResult suite_balanced_separation(int samples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "balanced_separation";
  std::mt19937_64 rng(seed);
  while (r.cases < samples) {
    const int n = 8 + static_cast<int>(pick(rng, 25));
    const int k = 1 + static_cast<int>(pick(rng, 3));
    auto [h, order] = random_partial_ktree(n, k, rng);
    TreeDecomposition td;
    switch (pick(rng, 3)) {
      case 0: td = decomposition_from_ordering(h, order); break;
      case 1: td = decomposition_from_ordering(h, min_fill_ordering(h).order); break;
      default: {
        std::vector<Vertex> shuffled(order);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        td = decomposition_from_ordering(h, shuffled);
      }
    }
    const int t = td.width();
    static constexpr std::array<std::int64_t, 4> kDenominators = {1, 2, 3, 6};
    const std::int64_t den = kDenominators[pick(rng, 4)];
    WeightFunction w{std::vector<std::int64_t>(n), den};
    for (auto& num : w.numerator)
      num = pick(rng, 10) < 6 ? den : static_cast<std::int64_t>(pick(rng, 2 * den + 1)) - den;
    const std::int64_t need = (3 * static_cast<std::int64_t>(t) + 3) * den;
    for (Vertex v = 0; v < n && w.numerator_total() < need; ++v) w.numerator[v] = den;
    if (w.numerator_total() < need) continue;

    BalancedSeparation bs = balanced_separation(h, td, w);
    const std::int64_t total = w.numerator_total();
    const std::int64_t part = w.numerator_of(set_difference(bs.separation.k, bs.separation.l));
    const auto cut = set_intersection(bs.separation.k, bs.separation.l);
    ++r.cases;
    if (!is_separation(h, bs.separation) || 3 * part < total || 3 * part > 2 * total ||
        static_cast<int>(cut.size()) > t + 1)
      ++r.violations;
  }
  return r;
}

SuiteResult suite_minimal_separators(int samples, std::uint64_t seed, int grid) {
  SuiteResult r;
  r.name = "minimal_separators";
  std::mt19937_64 rng(seed);
  GridGraph host = build_qn(grid);
  std::set<std::size_t> sizes;
  while (r.cases < samples) {
    const int b = static_cast<int>(pick(rng, 3));
    const int length = 3 + static_cast<int>(pick(rng, 8));
    if (length + 2 > grid) continue;
    // Margin of one on every side so the staircase could be extended.
    Coord c{1, 1 + static_cast<int>(pick(rng, 3)), 1 + static_cast<int>(pick(rng, 3))};
    std::vector<Coord> stair{c};
    for (int s = 1; s < length; ++s) {
      c = c + Coord{1, static_cast<int>(pick(rng, 2)), static_cast<int>(pick(rng, 2))};
      stair.push_back(c);
    }
    if (c.y + b > grid - 2 || c.z + b > grid - 2) continue;
    LocalEnlargement le = local_enlargement(host, Staircase(stair), b);
    const auto& e = le.enlargement;
    std::vector<Vertex> plane;
    auto mid = e.base.vertices()[length / 2];
    for (Coord q : b_square(mid, b)) plane.push_back(e.graph.index(q));
    VertexSet x = sample_separator(le.graph, e.left, e.right, make_vertex_set(plane), rng);
    sizes.insert(x.size());
    ++r.cases;
    if (!is_minimal_separator(le.graph, e.left, e.right, x) || !separator_is_connected(le.graph, x)) ++r.violations;
  }
  r.special = static_cast<std::int64_t>(sizes.size());
  r.detail = "distinct_sizes=" + std::to_string(sizes.size());
  return r;
}

SuiteResult suite_separator_mass(int n, int length, int samples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "separator_mass_n" + std::to_string(n);
  std::mt19937_64 rng(seed);
  Slab s = box_slab(n, length);
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;

  SideCut cut = min_side_separator(s.graph, s.s1, s.s2);
  bool cut_ok = static_cast<std::int64_t>(cut.cut.size()) == n2 &&
                static_cast<std::int64_t>(cut.paths.size()) == n2 && is_separator(s.graph, s.s1, s.s2, cut.cut);
  std::vector<char> used(s.graph.vertex_count(), 0);
  std::vector<char> in1 = membership(s.graph.vertex_count(), s.s1);
  std::vector<char> in2 = membership(s.graph.vertex_count(), s.s2);
  for (const auto& p : cut.paths) {
    for (std::size_t k = 0; k + 1 < p.size(); ++k)
      if (!s.graph.adjacent(p[k], p[k + 1])) cut_ok = false;
    if (!in1[p.front()] || !in2[p.back()]) cut_ok = false;
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      if (used[p[k]]) cut_ok = false;
      used[p[k]] = 1;
    }
  }
  if (!cut_ok) ++r.violations;

  std::vector<Vertex> plane;
  const int mid = length / 2;
  for (Vertex v = 0; v < s.graph.vertex_count(); ++v)
    if (s.coords[v].x == mid) plane.push_back(v);
  std::set<VertexSet> distinct;
  for (int i = 0; i < samples; ++i) {
    VertexSet x = sample_separator(s.graph, s.s1, s.s2, plane, rng);
    distinct.insert(x);
    LFunction f = separation_function(s, x);
    WeightFunction lambda = lambda_assignment(s, x, f);
    OneChain df = d(s.graph, f);
    bool ok = is_entire(s.graph, f) && lambda.numerator_of(x) == 2 * n2;
    for (const auto& row : s.paths)
      for (const auto& p : row)
        if (integrate(s.graph, Walk::from_vertices(s.graph, p), df) != 2) ok = false;
    ++r.cases;
    if (!ok) ++r.violations;
  }
  r.special = static_cast<std::int64_t>(distinct.size());
  r.detail = "min_cut=" + std::to_string(cut.cut.size()) + " paths=" + std::to_string(cut.paths.size()) +
             " distinct=" + std::to_string(distinct.size());
  return r;
}

std::string suites_csv(const std::vector<SuiteResult>& results) {
  std::ostringstream out;
  out << "suite,cases,violations,special\n";
  for (const auto& r : results) out << r.name << ',' << r.cases << ',' << r.violations << ',' << r.special << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Vertex>> verified_symmetries(int n, bool with_antipode) {
  GridGraph g = build_qn(n);
  std::array<int, 3> perm = {0, 1, 2};
  std::vector<std::vector<Vertex>> out;
  do {
    for (int flip = 0; flip <= (with_antipode ? 1 : 0); ++flip) {
      std::vector<Vertex> map(g.vertex_count());
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        Coord c = permute(g.coord(v), perm);
        if (flip) c = antipode(n, c);
        map[v] = g.index(c);
      }
      if (is_automorphism(g, map)) out.push_back(std::move(map));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

using Mask = std::uint64_t;

class PartitionSearch {
 public:
  PartitionSearch(int n, const SolverLimits& limits) : n_(n), limits_(limits), grid_(build_qn(n)) {
    vc_ = grid_.vertex_count();
    adj_.assign(vc_, 0);
    for (Vertex v = 0; v < vc_; ++v)
      for (Vertex w : grid_.neighbors(v)) adj_[v] |= Mask{1} << w;
    for (Vertex v = 0; v < vc_; ++v) order_.push_back(v);
    auto shell = [&](Vertex v) {
      Coord c = grid_.coord(v);
      return std::max({c.x, c.y, c.z});
    };
    std::sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      if (shell(a) != shell(b)) return shell(a) < shell(b);
      return grid_.coord(a) < grid_.coord(b);
    });
    std::vector<std::vector<Vertex>> maps = verified_symmetries(n, false);
    symmetries_ = static_cast<int>(maps.size());
    antipodal_ = static_cast<int>(verified_symmetries(n, true).size()) - symmetries_;
    // Prefix boundaries: ends of shells. Keep the maps that fix the prefix.
    for (int m = 1; m <= n; ++m) {
      int end = m * m * m;
      std::vector<char> in_prefix(vc_, 0);
      for (int p = 0; p < end; ++p) in_prefix[order_[p]] = 1;
      std::vector<std::vector<Vertex>> fixing;
      for (const auto& map : maps) {
        bool fixes = true;
        for (int p = 0; p < end; ++p) fixes = fixes && in_prefix[map[order_[p]]];
        if (fixes) fixing.push_back(inverse(map));
      }
      boundary_maps_[end] = std::move(fixing);
    }
  }

  int symmetries() const { return symmetries_; }
  int antipodal() const { return antipodal_; }

  // Finds the lexicographically first partition (in search order) whose
  // classes both have width <= k.
  std::optional<std::vector<std::int8_t>> decide(int k, std::uint64_t& nodes) {
    k_ = k;
    nodes_ = 0;
    assign_.assign(vc_, 0);
    masks_ = {0, 0};
    bool found = dfs(0);
    nodes = nodes_;
    if (!found) return std::nullopt;
    return assign_;
  }

 private:
  static std::vector<Vertex> inverse(const std::vector<Vertex>& map) {
    std::vector<Vertex> inv(map.size());
    for (std::size_t v = 0; v < map.size(); ++v) inv[map[v]] = static_cast<Vertex>(v);
    return inv;
  }

  // Is the class graph on `mask` of width <= k_?
  bool width_ok(Mask mask) const {
    if (k_ >= 3) {
      std::vector<Vertex> vs;
      for (Mask it = mask; it; it &= it - 1) vs.push_back(std::countr_zero(it));
      Subgraph sub = induced_subgraph(class_graph_source(), vs);
      return treewidth_at_most(sub.graph, k_, limits_).verdict == WidthVerdict::AtMost;
    }
    // Peel vertices of degree <= k; degree-2 vertices join their neighbours.
    std::array<Mask, 64> adj{};
    for (Mask it = mask; it; it &= it - 1) {
      int v = std::countr_zero(it);
      adj[v] = adj_[v] & mask;
    }
    Mask rem = mask;
    bool progress = true;
    while (rem && progress) {
      progress = false;
      for (Mask it = rem; it; it &= it - 1) {
        int v = std::countr_zero(it);
        int deg = std::popcount(adj[v]);
        if (deg > k_) continue;
        if (deg == 2) {
          int a = std::countr_zero(adj[v]);
          int b = std::countr_zero(adj[v] & (adj[v] - 1));
          adj[a] |= Mask{1} << b;
          adj[b] |= Mask{1} << a;
        }
        for (Mask jt = adj[v]; jt; jt &= jt - 1) adj[std::countr_zero(jt)] &= ~(Mask{1} << v);
        adj[v] = 0;
        rem &= ~(Mask{1} << v);
        progress = true;
      }
    }
    return rem == 0;
  }

  const Graph& class_graph_source() const {
    if (!full_graph_) full_graph_ = grid_.to_graph();
    return *full_graph_;
  }

  // Some symmetry (with or without colour swap) maps the prefix to a
  // lexicographically smaller assignment.
  bool dominated(int end) const {
    for (const auto& inv : boundary_maps_.at(end))
      for (int swap = 0; swap <= 1; ++swap) {
        for (int p = 0; p < end; ++p) {
          int mine = assign_[order_[p]];
          int image = assign_[inv[order_[p]]];
          if (swap) image = 3 - image;
          if (image != mine) {
            if (image < mine) return true;
            break;
          }
        }
      }
    return false;
  }

  bool dfs(int index) {
    ++nodes_;
    if (boundary_maps_.count(index) && dominated(index)) return false;
    if (index == vc_) return true;
    Vertex v = order_[index];
    for (int cls = 1; cls <= 2; ++cls) {
      Mask& m = masks_[cls - 1];
      m |= Mask{1} << v;
      assign_[v] = static_cast<std::int8_t>(cls);
      if (width_ok(m) && dfs(index + 1)) return true;
      m &= ~(Mask{1} << v);
      assign_[v] = 0;
    }
    return false;
  }

  int n_;
  SolverLimits limits_;
  GridGraph grid_;
  int vc_ = 0;
  std::vector<Mask> adj_;
  std::vector<Vertex> order_;
  std::map<int, std::vector<std::vector<Vertex>>> boundary_maps_;
  int symmetries_ = 0;
  int antipodal_ = 0;
  int k_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<std::int8_t> assign_;
  std::array<Mask, 2> masks_{};
  mutable std::optional<Graph> full_graph_;
};

}  // namespace

int max_class_treewidth(const Partition2& part, const SolverLimits& limits) {
  GridGraph g = build_qn(part.side());
  Graph full = g.to_graph();
  int best = -1;
  for (int cls : {1, 2}) {
    Subgraph sub = induced_subgraph(full, part.members(cls));
    best = std::max(best, exact_treewidth(sub.graph, limits).width);
  }
  return best;
}

SearchResult exhaustive_partition_search(int n, const SolverLimits& limits, int max_n) {
  if (n < 1 || n > std::min(max_n, 4)) throw GuardExceeded("exhaustive search beyond the size guard");
  PartitionSearch search(n, limits);
  SearchResult r;
  r.n = n;
  r.mode = "exhaustive";
  r.symmetries = search.symmetries();
  r.antipodal_symmetries = search.antipodal();
  for (int k = 0;; ++k) {
    std::uint64_t nodes = 0;
    auto found = search.decide(k, nodes);
    r.nodes_per_k.push_back(nodes);
    if (found) {
      r.value = k;
      r.witness = Partition2(n, *found);
      break;
    }
  }
  return r;
}

SearchResult heuristic_partition_search(int n, std::uint64_t seed, int iterations) {
  std::mt19937_64 rng(seed);
  Graph full = build_qn(n).to_graph();
  const int vc = full.vertex_count();
  auto score = [&](const Partition2& p) {
    std::array<int, 2> widths{};
    for (int cls : {1, 2}) widths[cls - 1] = min_fill_ordering(induced_subgraph(full, p.members(cls)).graph).width;
    return std::pair{std::max(widths[0], widths[1]), widths[0] + widths[1]};
  };
  Partition2 current = Partition2::random(n, vc, rng);
  auto current_score = score(current);
  Partition2 best = current;
  auto best_score = current_score;
  for (int it = 0; it < iterations; ++it) {
    Vertex v = static_cast<Vertex>(pick(rng, vc));
    current.set(v, 3 - current[v]);
    auto s = score(current);
    if (s <= current_score) {
      current_score = s;
      if (s < best_score) {
        best_score = s;
        best = current;
      }
    } else {
      current.set(v, 3 - current[v]);
    }
  }
  SearchResult r;
  r.n = n;
  r.mode = "heuristic";
  r.value = best_score.first;
  r.witness = best;
  r.nodes_per_k = {static_cast<std::uint64_t>(iterations)};
  return r;
}

std::string to_json_string(const SearchResult& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["mode"] = r.mode;
  j["value"] = r.value;
  j["nodes_per_k"] = r.nodes_per_k;
  j["symmetries"] = r.symmetries;
  j["antipodal_symmetries"] = r.antipodal_symmetries;
  j["witness"] = nlohmann::json::parse(to_json_string(r.witness));
  return j.dump();
}

// ---------------------------------------------------------------------------

int default_box_length(int n) { return n >= 3 ? n : 2 * n + 1; }

std::vector<AuditReport> run_audits(const AuditConfig& config) {
  const int length = config.length > 0 ? config.length : default_box_length(config.n);
  Slab s = box_slab(config.n, length);
  std::vector<Vertex> plane;
  for (Vertex v = 0; v < s.graph.vertex_count(); ++v)
    if (s.coords[v].x == length / 2) plane.push_back(v);
  AuditOptions options;
  options.limits = config.limits;
  options.certify_width = config.certify_width;
  std::vector<AuditReport> out;
  std::mt19937_64 rng(config.seed);
  for (int i = 0; i < config.samples; ++i) {
    VertexSet x = config.plane ? VertexSet(plane) : sample_separator(s.graph, s.s1, s.s2, plane, rng);
    out.push_back(audit_separator(s, x, options));
  }
  return out;
}

}  // namespace qtw
