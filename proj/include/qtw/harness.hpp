#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtw/decomposition.hpp"
#include "qtw/separators.hpp"
#include "qtw/slab.hpp"

namespace qtw {

struct SuiteResult {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t violations = 0;
  std::int64_t special = 0;  // suite-specific count, see each suite
  std::string detail;
  bool ok() const { return violations == 0 && cases > 0; }
};

// Every walk of length <= max_length in Q_n against every entire labelling
// of its vertex set: the integral of df telescopes. special = walks.
SuiteResult suite_walk_integrals(int n, int max_length);
// Every triangle of Q_n (all starts and directions) against every continuous
// labelling of its vertices: |integral| <= 1, and 0 when contractible.
// special = contractible cases.
SuiteResult suite_triangles(int n);
// Almost-homotopic line pairs from strip triangulations of Q_3 layers under
// random continuous labellings and random orientations. special = k=0 cases.
SuiteResult suite_homotopy(int samples, std::uint64_t seed);
// Random paths of Q_3 with f entire on the path and g obtained by starring
// zeros: half the integral of dg equals lambda of the zero set, an integer
// when g is holomorphic on the path. special = holomorphic cases.
SuiteResult suite_path_weights(int samples, std::uint64_t seed);
// Random graphs, decompositions and weights with total >= 3t+3: the
// separation is balanced with |K n L| <= t+1.
SuiteResult suite_balanced_separation(int samples, std::uint64_t seed);
// Minimal separators of random staircase enlargements (b <= 2, length <= 10)
// inside Q_grid are connected. special = distinct separator sizes seen.
SuiteResult suite_minimal_separators(int samples, std::uint64_t seed, int grid = 12);
// Sampled separators of the (n x n)-slab box of the given length: lambda(X)
// = n^2, f integrates to 2 along each line, min cut n^2 with a
// matching disjoint path packing.
SuiteResult suite_separator_mass(int n, int length, int samples, std::uint64_t seed);

std::string suites_csv(const std::vector<SuiteResult>& results);

// ---------------------------------------------------------------------------

// Vertex maps of Q_n given by the six coordinate permutations, optionally
// composed with the antipodal map; each is checked to be an automorphism
// and dropped otherwise.
std::vector<std::vector<Vertex>> verified_symmetries(int n, bool with_antipode);

struct SearchResult {
  int n = 0;
  std::string mode;
  int value = -1;  // min over partitions of the larger class treewidth
  Partition2 witness;
  std::vector<std::uint64_t> nodes_per_k;
  int symmetries = 0;
  int antipodal_symmetries = 0;
};

// Exact min-max class treewidth for n <= 3 (n = 4 allowed with the guard
// raised). Lex-leader pruning under verified symmetries and colour swap.
SearchResult exhaustive_partition_search(int n, const SolverLimits& limits = {}, int max_n = 3);
// Local search on the larger min-fill width; deterministic for a seed.
SearchResult heuristic_partition_search(int n, std::uint64_t seed, int iterations);

// Larger class treewidth of a partition, by exact computation.
int max_class_treewidth(const Partition2& part, const SolverLimits& limits = {});

std::string to_json_string(const SearchResult& r);

// ---------------------------------------------------------------------------

struct AuditConfig {
  int n = 3;
  int length = 0;  // box length; 0 picks n, or 2n+1 when Q_n has no interior
  int samples = 1;
  std::uint64_t seed = 1;
  bool plane = false;  // use the middle plane instead of sampled separators
  std::optional<int> certify_width;
  SolverLimits limits;
};

int default_box_length(int n);
std::vector<AuditReport> run_audits(const AuditConfig& config);

}  // namespace qtw
