#include <doctest.h>

#include <map>
#include <set>

#include "freshcast/instance.hpp"
#include "freshcast/interleave.hpp"
#include "freshcast/oracle.hpp"
#include "freshcast/simulate.hpp"

using namespace freshcast;

TEST_CASE("arborescence from greedy broadcasts") {
  RootedInstance s3 = star(3);
  WeightedArborescence a = build_arborescence(s3, abt_greedy(s3));
  CHECK(std::multiset<Time>(a.weight.begin(), a.weight.end()) == std::multiset<Time>{0, 1, 2, 3});

  RootedInstance p3 = path(3);
  WeightedArborescence b = build_arborescence(p3, abt_greedy(p3));
  CHECK(b.weight[1] == 1);
  CHECK(b.weight[2] == 1);
  CHECK(b.parent[2] == 1);

  // path weights telescope to the delays
  RootedInstance cbt = complete_binary_tree(2);
  BroadcastResult r = tree_min_broadcast(cbt);
  WeightedArborescence c = build_arborescence(cbt, r);
  for (Vertex v = 0; v < cbt.n; ++v) {
    Time sum = 0;
    for (Vertex u = v; u != cbt.root; u = c.parent[u]) sum += c.weight[u];
    CHECK(sum == r.delay[v]);
  }

  // per (informer, weight) class the in-degree is at most one
  std::map<std::pair<Vertex, Time>, int> indeg;
  for (Vertex v = 0; v < cbt.n; ++v) {
    if (v != cbt.root) CHECK(++indeg[{c.parent[v], c.weight[v]}] == 1);
  }

  try {
    build_arborescence(s3, BroadcastResult{FiniteSchedule{}, {0, -1, -1, -1}, 0, Rat(0)});
    FAIL("NotABroadcast expected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotABroadcast);
  }
}

TEST_CASE("interleave placement rule") {
  InterleavePlan one(1);
  CHECK(one.chunk_length == 1);
  for (Time j = 0; j < 10; ++j) CHECK(one.slot_item(j) == 1);

  // t = 2: chunks (S1 S2), (S1 idle), repeating
  InterleavePlan two(2);
  CHECK(two.chunk_length == 2);
  std::vector<int> first8;
  for (Time j = 0; j < 8; ++j) first8.push_back(two.slot_item(j));
  CHECK(first8 == std::vector<int>{1, 2, 1, 0, 1, 2, 1, 0});

  // t = 4: position 3 carries S4 every 4th chunk, else idles
  InterleavePlan four(4);
  CHECK(four.chunk_length == 3);
  for (Time chunk = 0; chunk < 8; ++chunk) {
    CHECK(four.slot_item(3 * chunk) == 1);
    CHECK(four.slot_item(3 * chunk + 1) == (chunk % 2 == 0 ? 2 : 3));
    CHECK(four.slot_item(3 * chunk + 2) == (chunk % 4 == 0 ? 4 : 0));
  }
}

TEST_CASE("interleave recurrence and no collisions") {
  for (int t = 1; t <= 16; ++t) {
    InterleavePlan plan(t);
    Time window = 12 * t * plan.chunk_length;
    std::vector<int> slots;
    for (Time j = 0; j < window; ++j) slots.push_back(plan.slot_item(j));
    for (int i = 1; i <= t; ++i) {
      Time gap_limit = static_cast<Time>(i) * plan.chunk_length;
      for (Time start = 0; start + gap_limit <= window; ++start) {
        bool found = false;
        for (Time j = start; j < start + gap_limit; ++j) found = found || slots[j] == i;
        CHECK(found);
      }
    }
  }
}

TEST_CASE("clock_to_root on tiny instances") {
  RootedInstance p2 = path(2);
  ClockToRootResult r = clock_to_root(p2, abt_greedy(p2));
  // single class: {ra} then its empty half, forever
  for (Time t = 0; t < 10; t += 2) CHECK(r.stream.step(t) == Matching({{0, 1}}));
  for (Time t = 1; t < 10; t += 2) CHECK(r.stream.step(t).empty());

  RootedInstance s3 = star(3);
  ClockToRootResult rs = clock_to_root(s3, abt_greedy(s3));
  CHECK(rs.t_max == 3);
  BoundReport report = clock_to_root_eval(s3, rs, 500, 500);
  CHECK(report.ok);
  // T = 6/4, bound 2 log2(3) T: sampled average stays under it
  CHECK(report.bound <= Rat(2) * Rat(1585, 1000) * Rat(6, 4));
}

TEST_CASE("clock_to_root bound holds on binary trees") {
  RootedInstance cbt = complete_binary_tree(3);
  ClockToRootResult r = clock_to_root(cbt, abt_greedy(cbt));
  Time horizon = std::max<Time>(600, 2 * r.stream.period().value_or(0));
  BoundReport report = clock_to_root_eval(cbt, r, horizon, 600);
  CHECK(report.ok);
}

TEST_CASE("clock_to_root stream steps are valid matchings") {
  RootedInstance t = random_tree(9, 13);
  ClockToRootResult r = avgrvc_from_abt(t);
  validate_schedule(t, r.stream.prefix(200).steps);
}

TEST_CASE("all-pairs evaluation") {
  for (const RootedInstance& t : {star(3), path(3), path(2)}) {
    ClockToRootResult r = avgrvc_from_abt(t);
    Time horizon = std::max<Time>(300, 2 * r.stream.period().value_or(0));
    BoundReport report = clock_to_root_allpairs_eval(t, r, horizon, 300);
    CHECK(report.ok);
  }
}

TEST_CASE("avgrvc_from_abt is within the advertised factor of the oracle") {
  for (const RootedInstance& t : {star(2), path(4)}) {
    ClockToRootResult r = avgrvc_from_abt(t);
    Rat opt = oracle_rvc(t, RvcObjective::Avg).value;
    Time horizon = std::max<Time>(400, 2 * r.stream.period().value_or(0));
    BoundReport report = clock_to_root_eval(t, r, horizon, 400);
    Rat factor = Rat(8) * Rat::max(Rat(1), log2_lower(static_cast<std::uint64_t>(t.n)));
    CHECK(report.achieved <= factor * opt);
  }
}

TEST_CASE("interleaved gap tree meets the composed bound") {
  RootedInstance g = gap_tree(1024);
  ClockToRootResult r = avgrvc_from_abt(g);
  // abt average within 4.5 log2(n) and the stream within 2 log2(T_max) T
  CHECK(r.broadcast.average <= Rat(9, 2) * Rat(10));
  Time horizon = 2 * r.stream.period().value_or(2000) + 500;
  BoundReport report = clock_to_root_eval(g, r, horizon, 250);
  CHECK(report.ok);
  CHECK(report.achieved <= Rat(2) * Rat(10) * (Rat(9, 2) * Rat(10)));
}
