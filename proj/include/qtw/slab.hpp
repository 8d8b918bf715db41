#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtw/calculus.hpp"
#include "qtw/decomposition.hpp"
#include "qtw/graph.hpp"
#include "qtw/grid.hpp"

namespace qtw {

// A row or column: a vertex set of the slab graph with integer plane
// coordinates, parallel to `vertices`.
struct Layer {
  VertexSet vertices;
  std::vector<std::array<int, 2>> position;
};

struct Slab {
  int n = 0;
  Graph graph;
  std::vector<Coord> coords;  // grid coordinates per vertex, empty for abstract slabs
  VertexSet s1;
  VertexSet s2;
  std::vector<Layer> rows;
  std::vector<Layer> columns;
  // paths[i][j]: vertices of R_i n C_j ordered from s1 to s2.
  std::vector<std::vector<std::vector<Vertex>>> paths;

  // Largest degree inside any row or column, at least 3.
  int delta() const;
};

// Straight-line plane graph whose bounded faces are all triangles.
bool is_near_triangulation(const Graph& g, const std::vector<std::array<int, 2>>& position,
                           std::string* why = nullptr);

bool validate_slab(const Slab& s, std::string* why = nullptr);

// Slab on the b-enlargement of a staircase: n = b+1, sides are the end
// squares, row i holds offset dy = i (plane coordinates (step, dz)), column
// j holds dz = j (plane coordinates (step, dy)).
Slab enlargement_as_slab(const Enlargement& e);
// The box [0,length) x [0,n)^2 of Q_max(n,length) as an (n x n)-slab.
Slab box_slab(int n, int length);
// Q_n with the faces x=0 and x=n-1 as sides. For n=1 the box has length 2,
// since the sides must be disjoint.
Slab qn_as_slab(int n);

// f = -1 on vertices reaching s1 in G - X, 0 on X, +1 elsewhere.
LFunction separation_function(const Slab& s, const VertexSet& x);

// lambda(v) = (f(next) - f(prev)) / 2 along the path through v, 0 off the
// paths; returned over all slab vertices with denominator 2.
WeightFunction lambda_assignment(const Slab& s, const VertexSet& x, const LFunction& f);

// Triangles of the strip between lines j1 and j2 of a lattice layer, oriented
// so that their indicators sum to that of Q w2 R^-1 w1^-1 for the two lines.
std::vector<Walk> strip_triangles(const Slab& s, const Layer& layer, int j1, int j2);

// Smallest integer k with k >= n / sqrt(3 delta) - 1.
int required_width(int n, int delta);

enum class AuditStatus { Certified, Consistent, Violated };
std::string to_string(AuditStatus s);

struct PipelineReplay {
  bool applicable = false;
  std::string reason;
  int t = -1;
  int center = -1;
  int k_and_l = 0;                    // |K n L|
  std::int64_t lambda_k_minus_l2 = 0; // 2 lambda(K \ L)
  bool balanced = false;              // n^2/3 <= lambda(K\L) <= 2n^2/3
  std::vector<std::vector<std::int64_t>> h2;  // 2 h(p)
  bool weights_match_integrals = false;  // h(p) = lambda(path n (K\L))
  bool integral_off_cut = false;      // h(p) integer when the path avoids K n L
  std::vector<int> free_rows;         // R
  std::vector<int> free_columns;      // C
  bool homotopies_verified = false;   // certificates for constancy and closeness
  std::int64_t h_constant = 0;        // H
  bool h_constant_on_s = false;
  bool row_bounds_hold = false;       // |h(i,j) - H| <= delta t_i
  std::int64_t deviation2 = 0;        // |2 lambda(K\L) - 2 H n^2|
  std::int64_t allowance2 = 0;        // 2 delta (t+1)^2
  bool final_bound_holds = false;
};

struct AuditOptions {
  SolverLimits limits;
  bool replay = true;
  // Certify tw(G[X]) >= certify_width by refuting width certify_width-1.
  std::optional<int> certify_width;
};

struct AuditReport {
  int n = 0;
  int delta = 0;
  VertexSet separator;
  std::vector<int> lambda2;           // 2 lambda(v) per separator vertex
  std::int64_t lambda_total2 = 0;     // 2 lambda(X)
  std::vector<std::vector<std::int64_t>> path_integrals;  // integral of df
  bool f_entire = false;
  bool lines_integrate_to_two = false;
  bool mass_identity = false;         // lambda(X) = n^2
  bool separator_connected = false;
  double bound = 0.0;                 // n / sqrt(3 delta) - 1
  int required = 0;
  std::optional<int> exact_width;
  int certified_lower = -1;
  std::string method;
  AuditStatus status = AuditStatus::Consistent;
  PipelineReplay replay;

  bool pass() const;
};

AuditReport audit_separator(const Slab& s, const VertexSet& x, const AuditOptions& options = {});

std::string to_json_string(const AuditReport& r);
std::string audit_csv_header();
std::string audit_csv_row(const AuditReport& r);

}  // namespace qtw
