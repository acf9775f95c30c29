#include <doctest.h>

#include "freshcast/instance.hpp"
#include "freshcast/simulate.hpp"
#include "freshcast/transforms.hpp"
#include "support.hpp"

using namespace freshcast;

TEST_CASE("single exchange and idle steps") {
  RootedInstance s1 = star(1);
  RootedState state = RootedState::initial(s1);
  step(s1, state, Matching({{0, 1}}));
  CHECK(state.view[1] == 0);
  CHECK(state.t - state.view[1] == 1);  // l_a^1 = 1

  step(s1, state, Matching());
  CHECK(state.t - state.view[1] == 2);  // idle: +1
}

TEST_CASE("two-step relay on a path") {
  RootedInstance p3 = path(3);
  ScheduleStream s = ScheduleStream::from_finite(FiniteSchedule{{Matching({{0, 1}}), Matching({{1, 2}})}});
  RootedTrace trace = simulate(p3, s, 2);
  CHECK(trace.latency[2][2] == 2);  // l_b^2 = 2
}

TEST_CASE("round robin on star(2)") {
  RootedInstance s2 = star(2);
  PeriodicSchedule rr = repeat(FiniteSchedule{{Matching({{0, 1}}), Matching({{0, 2}})}});
  RootedTrace trace = simulate(s2, ScheduleStream::from_periodic(rr), 6);
  std::vector<Time> l_a;
  for (Time t = 0; t <= 6; ++t) l_a.push_back(trace.latency[static_cast<std::size_t>(t)][1]);
  CHECK(l_a == std::vector<Time>{0, 1, 2, 1, 2, 1, 2});

  CHECK(objective(trace, {ObjectiveKind::MaxRooted}) == Rat(2));
  // worst time has latencies {0, 1, 2} over the 3 vertices
  CHECK(objective(trace, {ObjectiveKind::AvgRooted}) == Rat(1));

  CHECK(supremum_objective(s2, rr, {ObjectiveKind::MaxRooted}) == Rat(2));
  CHECK(supremum_objective(s2, rr, {ObjectiveKind::AvgRooted}) == Rat(1));
}

TEST_CASE("all-idle trace") {
  RootedInstance t = random_tree(5, 9);
  ScheduleStream idle([](Time) { return Matching(); }, 1);
  RootedTrace trace = simulate(t, idle, 7);
  for (Vertex v = 0; v < t.n; ++v) {
    CHECK(trace.latency[7][v] == (v == t.root ? 0 : 7));
  }
  CHECK(objective(trace, {ObjectiveKind::MaxRooted}) == Rat(7));
}

TEST_CASE("euler tour keeps the gap tree fresh") {
  RootedInstance g = gap_tree(8);
  PeriodicSchedule tour = euler_tour_schedule(g);
  Rat sup = supremum_objective(g, tour, {ObjectiveKind::AllPairsMax});
  CHECK(sup <= Rat(2 * 2 * (g.n - 1)));  // intro bound: max latency <= 2(n-1), periodized x2
}

TEST_CASE("latency growth law and view monotonicity") {
  RootedInstance t = random_tree(6, 3);
  RootedTrace trace = simulate(t, testsupport::random_maximal_stream(t, 11), 40);
  for (Time tt = 1; tt <= trace.horizon(); ++tt) {
    for (Vertex v = 0; v < t.n; ++v) {
      Time now = trace.latency[static_cast<std::size_t>(tt)][v];
      Time before = trace.latency[static_cast<std::size_t>(tt - 1)][v];
      CHECK(now <= before + 1);  // grows by exactly 1 absent an update
      CHECK(tt - now >= (tt - 1) - before);
    }
  }
}

TEST_CASE("rooted trace equals the root column of the all-pairs trace") {
  for (std::uint64_t seed : {5u, 6u}) {
    RootedInstance t = random_tree(6, seed);
    ScheduleStream s = testsupport::random_maximal_stream(t, seed + 100);
    RootedTrace rooted = simulate(t, s, 25);
    AllPairsTrace ap = simulate_allpairs(t, s, 25);
    for (Time tt = 0; tt <= 25; ++tt) {
      for (Vertex v = 0; v < t.n; ++v) {
        CHECK(rooted.latency[static_cast<std::size_t>(tt)][v] == ap.at(tt, v, t.root));
      }
    }
  }
}

TEST_CASE("simulator agrees with increasing-label path search") {
  RootedInstance t = random_tree(5, 21);
  FiniteSchedule prefix = testsupport::random_matching_body(t, 12, 77);
  RootedTrace trace = simulate(t, ScheduleStream::from_finite(prefix), 12);
  for (Time tt = 0; tt <= 12; ++tt) {
    for (Vertex v = 0; v < t.n; ++v) {
      CHECK(trace.latency[static_cast<std::size_t>(tt)][v] ==
            testsupport::path_search_latency(t, prefix.steps, tt, v, t.root));
    }
  }
}

TEST_CASE("detect_periodicity") {
  RootedInstance s2 = star(2);
  PeriodicSchedule rr = repeat(FiniteSchedule{{Matching({{0, 1}}), Matching({{0, 2}})}});
  RootedTrace trace = simulate(s2, ScheduleStream::from_periodic(rr), 12);
  CHECK(detect_periodicity(trace, 2));

  ScheduleStream idle([](Time) { return Matching(); }, 1);
  RootedTrace idle_trace = simulate(s2, idle, 12);
  for (Time p = 1; p <= 4; ++p) CHECK_FALSE(detect_periodicity(idle_trace, p));

  // one-shot stream: informs a once, then idles forever; b never informed
  ScheduleStream oneshot([](Time t) { return t == 0 ? Matching({{0, 1}}) : Matching(); }, std::nullopt);
  RootedTrace once = simulate(s2, oneshot, 12);
  CHECK_FALSE(detect_periodicity(once, 3));

  CHECK_THROWS_AS(detect_periodicity(trace, 5), Error);  // window too short
}

TEST_CASE("invalid matchings are rejected with the step index") {
  RootedInstance p3 = path(3);
  ScheduleStream bad([](Time t) { return t == 2 ? Matching({{0, 2}}) : Matching(); }, std::nullopt);
  try {
    simulate(p3, bad, 5);
    FAIL("unknown edge accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidMatching);
    CHECK(std::string(e.what()).find("step 2") != std::string::npos);
  }
}

TEST_CASE("lp objective reports the exact power sum") {
  RootedInstance s2 = star(2);
  PeriodicSchedule rr = repeat(FiniteSchedule{{Matching({{0, 1}}), Matching({{0, 2}})}});
  RootedTrace trace = simulate(s2, ScheduleStream::from_periodic(rr), 8);
  ObjectiveSpec spec{ObjectiveKind::LpRooted, 2, 1, ObjectiveKind::AvgRooted};
  CHECK(objective(trace, spec) == Rat(5));  // worst time: 1^2 + 2^2
}

TEST_CASE("time-average objective") {
  RootedInstance s2 = star(2);
  PeriodicSchedule rr = repeat(FiniteSchedule{{Matching({{0, 1}}), Matching({{0, 2}})}});
  RootedTrace trace = simulate(s2, ScheduleStream::from_periodic(rr), 20);
  ObjectiveSpec spec{ObjectiveKind::TimeAvg, 2, 4, ObjectiveKind::AvgRooted};
  Rat value = objective(trace, spec);
  CHECK(value <= Rat(1));
  CHECK(Rat(0) < value);
}
