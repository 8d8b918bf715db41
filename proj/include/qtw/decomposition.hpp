#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtw/graph.hpp"

namespace qtw {

struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> tree_edges;

  int node_count() const { return static_cast<int>(bags.size()); }
  // Largest bag size minus one; -1 when there are no bags.
  int width() const;
};

// The tree is a tree, every vertex and every edge is covered by a bag, and
// the bags holding any vertex form a connected subtree.
bool validate_decomposition(const Graph& g, const TreeDecomposition& td, std::string* why = nullptr);

// Width of the elimination ordering: the largest number of later neighbours
// a vertex has in the filled graph.
int ordering_width(const Graph& g, std::span<const Vertex> order);
TreeDecomposition decomposition_from_ordering(const Graph& g, std::span<const Vertex> order);

struct OrderingResult {
  int width;
  std::vector<Vertex> order;
};
OrderingResult min_fill_ordering(const Graph& g);

// Minor-min-width lower bound (contraction degeneracy estimate).
int minor_min_width(const Graph& g);

struct SolverLimits {
  int max_component_vertices = 40;
  std::uint64_t node_budget = 0;  // 0: unlimited
};

struct TreewidthResult {
  int width;
  TreeDecomposition decomposition;
  std::vector<Vertex> order;
};

// Branch and bound over elimination orderings with memoised vertex subsets.
// Throws GuardExceeded when a connected component is larger than the guard or
// the node budget runs out. The empty graph has width -1.
TreewidthResult exact_treewidth(const Graph& g, const SolverLimits& limits = {});

enum class WidthVerdict { AtMost, Exceeds, Unknown };

struct WidthDecision {
  WidthVerdict verdict;
  std::string method;
  std::optional<TreeDecomposition> witness;  // set when verdict == AtMost
};

// Decides tw(g) <= k. Exact for every k <= 2 at any size; larger k uses
// lower/upper bounds and the budgeted exact search.
WidthDecision treewidth_at_most(const Graph& g, int k, const SolverLimits& limits = {});

// ---------------------------------------------------------------------------

// Rational weights num[v] / denominator with a common positive denominator.
struct WeightFunction {
  std::vector<std::int64_t> numerator;
  std::int64_t denominator = 1;

  static WeightFunction uniform(int vertex_count, std::int64_t value);
  std::int64_t numerator_of(std::span<const Vertex> set) const;
  std::int64_t numerator_total() const;
};

struct Separation {
  VertexSet k;
  VertexSet l;
};

// K u L = V and no edge joins K\L to L\K.
bool is_separation(const Graph& g, const Separation& s);

struct BalancedSeparation {
  Separation separation;
  int center;  // tree node whose bag is K n L
  int groups;  // number of subtrees assigned to K
};

// Requires |w(v)| <= 1 and w(V) >= 3t+3 with t the width of td. Returns a
// separation with w(V)/3 <= w(K\L) <= 2w(V)/3 and K n L a single bag.
BalancedSeparation balanced_separation(const Graph& h, const TreeDecomposition& td,
                                       const WeightFunction& w);

// ---------------------------------------------------------------------------

using Bramble = std::vector<VertexSet>;

bool validate_bramble(const Graph& g, const Bramble& bramble);
// Exact minimum hitting set size. Guard on the number of sets.
int bramble_order(const Bramble& bramble, int max_sets = 64);

std::string to_text(const TreeDecomposition& td);
TreeDecomposition decomposition_from_text(const std::string& text);
std::string to_json_string(const Bramble& bramble);
Bramble bramble_from_json_string(const std::string& text);

}  // namespace qtw
