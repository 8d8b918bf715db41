#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtw/decomposition.hpp"
#include "qtw/grid.hpp"
#include "qtw/separators.hpp"

namespace qtw {

// N(0) = t+2, N(b) = (8t+5)(N(b-1)+b).
std::int64_t schedule(int t, int b);
// Grid size the construction actually needs: the subgrids anchored at
// p_d(j,k), 0 <= j,k <= 2t, with d = n0 + b reach x = 16td + n0 - 1, so
// layout(t,b) = 16t(n0+b) + n0 with n0 = layout(t,b-1). For t = 0 a single
// straight staircase is tested, which needs max(3, b+1).
std::int64_t layout_size(int t, int b);
// ceil(sqrt(18)(t+1)) - 1, exactly.
int b_max(int t);

// Crosses R_i u C_j of the m x m triangulated grid (ids x + m*z); order m.
Bramble grid_crosses(int m);

struct BrambleCertificate {
  int color = 0;  // the class containing the sets
  int level = 0;  // blocking level where the bramble was assembled
  Bramble sets;   // host vertex ids
  std::vector<VertexSet> components;            // the M_z
  std::vector<std::vector<Vertex>> connectors;  // the R_yz
  int claimed_order = 0;
};

struct BuildResult {
  enum class Kind { Staircase, Bramble, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<Staircase> staircase;  // (b, blocked_class)-blocked
  int b = 0;
  int blocked_class = 0;
  std::optional<BrambleCertificate> bramble;
  std::string note;
  int separated_pairs_checked = 0;  // enlargement pairs tested for disjointness
};

struct BuildOptions {
  // Allow grids below layout_size; outcomes are then not guaranteed and a
  // failed step yields Inconclusive instead of an error.
  bool allow_sub_schedule = false;
};

// Either a (b,i)-blocked staircase of Q_N or a bramble of order >= t+1 in
// one of the classes. Everything returned has been re-checked.
BuildResult find_blocked_or_bramble(const Partition2& part, int t, int b, int cls,
                                    const BuildOptions& options = {});

// Independent checks of builder output.
bool verify_staircase(const Partition2& part, const Staircase& s, int b, int cls);
struct BrambleCheck {
  bool inside_class = false;
  bool is_bramble = false;
  bool at_most_two = false;
  bool assembled = false;  // built from components; each vertex must then lie in <= 2 sets
  int order = 0;
  bool ok(int t) const {
    return inside_class && is_bramble && (at_most_two || !assembled) && order >= t + 1;
  }
};
BrambleCheck verify_bramble(const Partition2& part, const BrambleCertificate& cert);

struct ClassWidth {
  int cls = 0;
  int size = 0;
  std::optional<int> exact;      // -1 for an empty class
  int certified_lower = -1;
  std::string method;
};

struct PartitionCertificate {
  int t = 0;
  int n = 0;
  std::string route;        // "builder", "direct" or "none"
  int certified_class = 0;  // class shown to have tw >= t, 0 if none
  std::string evidence;
  std::vector<ClassWidth> classes;
  std::optional<BuildResult> build;
  bool certified() const { return certified_class != 0; }
};

// Shows tw(Q_N[A_i]) >= t for some i, re-checking all evidence.
PartitionCertificate certify_partition(const Partition2& part, int t,
                                       const SolverLimits& limits = {});

std::string to_json_string(const BuildResult& r);
std::string to_json_string(const PartitionCertificate& c);

}  // namespace qtw
