#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qtw/bramble_builder.hpp"

using namespace qtw;

TEST_CASE("schedule recursion") {
  CHECK(schedule(0, 0) == 2);
  CHECK(schedule(0, 1) == 15);
  CHECK(schedule(1, 0) == 3);
  CHECK(schedule(1, 1) == 52);
  CHECK(schedule(1, 2) == 13 * (52 + 2));
  CHECK(schedule(2, 1) == 21 * 5);
  // Large values saturate instead of overflowing.
  CHECK(schedule(8, 30) > 0);
  CHECK(schedule(8, 30) >= schedule(8, 29));
  CHECK_THROWS_AS(schedule(-1, 0), PreconditionError);
}

TEST_CASE("layout size covers every anchored subgrid") {
  CHECK(layout_size(0, 0) == 3);
  CHECK(layout_size(0, 1) == 3);
  CHECK(layout_size(0, 5) == 6);
  CHECK(layout_size(1, 0) == 3);
  CHECK(layout_size(1, 1) == 67);
  for (int t = 1; t <= 3; ++t)
    for (int b = 1; b <= 2; ++b) {
      const std::int64_t n0 = layout_size(t, b - 1);
      const std::int64_t d = n0 + b;
      // The farthest anchor is p_d(2t, 2t); its subgrid of side n0 must fit.
      Coord far = anchor(static_cast<int>(d), 2 * t, 2 * t);
      CHECK(far.x + n0 <= layout_size(t, b));
      CHECK(far.y + n0 <= layout_size(t, b));
      CHECK(far.z + n0 <= layout_size(t, b));
      CHECK(layout_size(t, b) >= schedule(t, b));
    }
}

TEST_CASE("b_max is the exact ceiling") {
  for (int t = 0; t <= 200; ++t) {
    int b = b_max(t);
    // (b+1)^2 >= 18 (t+1)^2 > b^2
    CHECK((b + 1) * (b + 1) >= 18 * (t + 1) * (t + 1));
    CHECK(b * b < 18 * (t + 1) * (t + 1));
    CHECK(b == static_cast<int>(std::ceil(std::sqrt(18.0) * (t + 1))) - 1);
  }
  CHECK(b_max(0) == 4);
  CHECK(b_max(1) == 8);
}

TEST_CASE("crosses of the triangulated grid") {
  for (int m = 1; m <= 4; ++m) {
    Bramble b = grid_crosses(m);
    CHECK(b.size() == static_cast<std::size_t>(m * m));
    CHECK(validate_bramble(triangulated_grid(m), b));
    CHECK(bramble_order(b) == m);
    std::vector<std::vector<int>> sets(b.begin(), b.end());
    if (m <= 3) CHECK(oracle::brute_force_hitting_set(sets) == m);
  }
}

TEST_CASE("t = 0 yields a one-vertex bramble or a blocked straight staircase") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + i % 3;
    Partition2 part = Partition2::random(n, n * n * n, rng);
    BuildResult r = find_blocked_or_bramble(part, 0, 1, 1 + i % 2);
    if (r.kind == BuildResult::Kind::Bramble) {
      CHECK(verify_bramble(part, *r.bramble).ok(0));
    } else {
      REQUIRE(r.kind == BuildResult::Kind::Staircase);
      CHECK(verify_staircase(part, *r.staircase, r.b, r.blocked_class));
    }
  }
}

TEST_CASE("t = 1 at the layout size") {
  const int n = static_cast<int>(layout_size(1, 1));
  const int vc = n * n * n;
  std::mt19937_64 rng(5);
  int brambles = 0;
  for (int i = 0; i < 6; ++i) {
    Partition2 part = i < 2 ? Partition2::uniform(n, vc, 1 + i) : Partition2::random(n, vc, rng);
    BuildResult r = find_blocked_or_bramble(part, 1, 1, 1);
    if (r.kind == BuildResult::Kind::Bramble) {
      ++brambles;
      BrambleCheck check = verify_bramble(part, *r.bramble);
      CHECK(check.ok(1));
      CHECK(check.order >= 2);
    } else {
      REQUIRE(r.kind == BuildResult::Kind::Staircase);
      CHECK(verify_staircase(part, *r.staircase, r.b, r.blocked_class));
    }
  }
  CHECK(brambles >= 1);
}

TEST_CASE("sub-schedule grids need the override") {
  Partition2 part = Partition2::uniform(10, 1000, 1);
  CHECK_THROWS_AS(find_blocked_or_bramble(part, 1, 1, 1), PreconditionError);
  BuildOptions options;
  options.allow_sub_schedule = true;
  BuildResult r = find_blocked_or_bramble(part, 1, 1, 1, options);
  if (r.kind == BuildResult::Kind::Bramble) CHECK(verify_bramble(part, *r.bramble).ok(1));
  if (r.kind == BuildResult::Kind::Staircase) CHECK(verify_staircase(part, *r.staircase, r.b, r.blocked_class));
}

TEST_CASE("bramble verification rejects tampered certificates") {
  Partition2 part = Partition2::uniform(3, 27, 1);
  BrambleCertificate cert;
  cert.color = 1;
  cert.sets = {{0, 1}, {1, 2}};
  CHECK(verify_bramble(part, cert).is_bramble);
  CHECK(verify_bramble(part, cert).ok(0));
  cert.color = 2;
  CHECK_FALSE(verify_bramble(part, cert).inside_class);
  cert.color = 1;
  cert.sets = {{0}, {26}};
  CHECK_FALSE(verify_bramble(part, cert).is_bramble);
  cert.sets = {{0, 1}, {0, 2}, {0, 3}};
  CHECK_FALSE(verify_bramble(part, cert).at_most_two);
}

TEST_CASE("certified partitions") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    Partition2 part = Partition2::random(3, 27, rng);
    for (int t = 0; t <= 1; ++t) {
      PartitionCertificate c = certify_partition(part, t);
      REQUIRE(c.certified());
      // Re-check with the exact solver on the certified class.
      Graph full = build_qn(3).to_graph();
      Subgraph sub = induced_subgraph(full, part.members(c.certified_class));
      CHECK(exact_treewidth(sub.graph).width >= t);
    }
  }
}
