#include <doctest.h>

#include "freshcast/instance.hpp"
#include "freshcast/oracle.hpp"
#include "freshcast/simulate.hpp"
#include "freshcast/transforms.hpp"
#include "support.hpp"

using namespace freshcast;

namespace {

/// Observed norm bound over a long prefix, bumped so the prefix also informs
/// everything the norm needs informed; valid input bound for the theorems.
Time certified_bound(const RootedInstance& instance, const ScheduleStream& stream, NormKind norm,
                     Time window) {
  Time best = 0;
  if (norm == NormKind::RootedLinf || norm == NormKind::RootedL1) {
    RootedTrace trace = simulate(instance, stream, window);
    for (Time t = 0; t <= window; ++t) best = std::max(best, norm_at(trace, t, norm));
    // ensure every vertex is informed within the repeated prefix
    for (Time t = 1; t <= window; ++t) {
      bool all = true;
      for (Vertex v = 0; v < instance.n; ++v) {
        if (trace.latency[static_cast<std::size_t>(t)][v] >= t) all = false;
      }
      if (all) {
        best = std::max(best, t);
        break;
      }
    }
  } else {
    AllPairsTrace trace = simulate_allpairs(instance, stream, window);
    for (Time t = 0; t <= window; ++t) best = std::max(best, norm_at(trace, t, norm));
    for (Time t = 1; t <= window; ++t) {
      bool all = true;
      for (Vertex v = 0; v < instance.n && all; ++v) {
        for (Vertex u = 0; u < instance.n && all; ++u) {
          if (v != u && trace.at(t, v, u) >= t) all = false;
        }
      }
      if (all) {
        best = std::max(best, t);
        break;
      }
    }
  }
  return best;
}

Rat supremum_norm(const RootedInstance& instance, const PeriodicSchedule& schedule,
                  NormKind norm) {
  ObjectiveSpec spec;
  switch (norm) {
    case NormKind::RootedLinf: spec.kind = ObjectiveKind::MaxRooted; break;
    case NormKind::RootedL1: spec.kind = ObjectiveKind::AvgRooted; break;
    case NormKind::AllPairsLinf: spec.kind = ObjectiveKind::AllPairsMax; break;
    case NormKind::AllPairsL1: spec.kind = ObjectiveKind::AllPairsAvg; break;
  }
  Rat value = supremum_objective(instance, schedule, spec);
  if (norm == NormKind::RootedL1) return value * Rat(instance.n);
  if (norm == NormKind::AllPairsL1) {
    return value * Rat(static_cast<Time>(instance.n) * instance.n);
  }
  return value;
}

}  // namespace

TEST_CASE("truncate_and_repeat: star round robin with bound 2") {
  RootedInstance s2 = star(2);
  PeriodicSchedule rr = repeat(FiniteSchedule{{Matching({{0, 1}}), Matching({{0, 2}})}});
  PeriodicSchedule out = truncate_and_repeat(s2, ScheduleStream::from_periodic(rr), 2);
  CHECK(out.period() == 3);
  Rat sup = supremum_norm(s2, out, NormKind::RootedLinf);
  CHECK(sup <= Rat(4));
  CHECK(sup == Rat(3));  // frozen from simulation
}

TEST_CASE("truncate_and_repeat: factor two on random streams") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    RootedInstance t = random_tree(3 + static_cast<int>(seed % 4), 50 + seed);
    ScheduleStream stream = testsupport::random_maximal_stream(t, seed);
    for (NormKind norm : {NormKind::RootedLinf, NormKind::RootedL1}) {
      Time bound = certified_bound(t, stream, norm, 200);
      PeriodicSchedule out = truncate_and_repeat(t, stream, bound);
      CHECK(supremum_norm(t, out, norm) <= Rat(2 * bound));
    }
  }
}

TEST_CASE("truncate_and_repeat: already periodic input stays within factor two") {
  RootedInstance p4 = path(4);
  PeriodicSchedule tour = euler_tour_schedule(p4);
  Time input = supremum_norm(p4, tour, NormKind::RootedLinf).num();
  PeriodicSchedule out =
      truncate_and_repeat(p4, ScheduleStream::from_periodic(tour), input);
  CHECK(supremum_norm(p4, out, NormKind::RootedLinf) <= Rat(2 * input));
}

TEST_CASE("truncate_and_repeat_time_avg") {
  RootedInstance s2 = star(2);
  PeriodicSchedule rr = repeat(FiniteSchedule{{Matching({{0, 1}}), Matching({{0, 2}})}});
  ScheduleStream stream = ScheduleStream::from_periodic(rr);

  // per-step bound: K0 = 1 reduces to the plain construction (period bound+1)
  Time bound = certified_bound(s2, stream, NormKind::RootedLinf, 100);
  PeriodicSchedule k1 = truncate_and_repeat_time_avg(s2, stream, bound, 1, NormKind::RootedLinf);
  CHECK(k1.period() == bound + 1);
  CHECK(supremum_norm(s2, k1, NormKind::RootedLinf) <= Rat(4 * bound));

  // periodic input meeting its own time-averaged bound: factor 4 via windows
  Time k0 = 4;
  Time bound_l1 = certified_bound(s2, stream, NormKind::RootedL1, 100);
  PeriodicSchedule out =
      truncate_and_repeat_time_avg(s2, stream, bound_l1, k0, NormKind::RootedL1);
  RootedTrace trace = simulate(s2, ScheduleStream::from_periodic(out), 6 * out.period() + 2 * k0);
  ObjectiveSpec spec{ObjectiveKind::TimeAvg, 2, k0, ObjectiveKind::AvgRooted};
  CHECK(objective(trace, spec) * Rat(s2.n) <= Rat(4 * bound_l1));

  // adversarial stream: latencies keep growing, no low point exists
  ScheduleStream idle([](Time) { return Matching(); }, 1);
  try {
    truncate_and_repeat_time_avg(s2, idle, 3, 4, NormKind::RootedLinf);
    FAIL("NoLowPoint expected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoLowPoint);
  }
}

TEST_CASE("euler tour schedules") {
  PeriodicSchedule p2 = euler_tour_schedule(path(2));
  CHECK(p2.period() == 2);
  CHECK(p2.step(0) == Matching({{0, 1}}));
  CHECK(p2.step(1) == Matching({{0, 1}}));
  RootedTrace trace = simulate(path(2), ScheduleStream::from_periodic(p2), 10);
  for (Time t = 1; t <= 10; ++t) CHECK(trace.latency[static_cast<std::size_t>(t)][1] == 1);

  RootedInstance s3 = star(3);
  PeriodicSchedule tour3 = euler_tour_schedule(s3);
  CHECK(tour3.period() == 6);
  CHECK(supremum_norm(s3, tour3, NormKind::AllPairsLinf) <= Rat(12));

  RootedInstance cbt = complete_binary_tree(2);
  PeriodicSchedule tour7 = euler_tour_schedule(cbt);
  CHECK(tour7.period() == 12);
  CHECK(supremum_norm(cbt, tour7, NormKind::RootedLinf) <= Rat(24));

  CHECK_THROWS_AS(euler_tour_schedule(RootedInstance{3, 0, {{0, 1}, {1, 2}, {0, 2}}, false}),
                  Error);
}

TEST_CASE("maxrvc_from_broadcast") {
  RootedInstance s2 = star(2);
  FiniteSchedule bc{{Matching({{0, 1}}), Matching({{0, 2}})}};
  PeriodicSchedule out = maxrvc_from_broadcast(s2, bc);
  CHECK(supremum_norm(s2, out, NormKind::RootedLinf) == Rat(2));

  RootedInstance p3 = path(3);
  FiniteSchedule relay{{Matching({{0, 1}}), Matching({{1, 2}})}};
  CHECK(supremum_norm(p3, maxrvc_from_broadcast(p3, relay), NormKind::RootedLinf) <= Rat(4));

  FiniteSchedule missing{{Matching({{0, 1}})}};
  try {
    maxrvc_from_broadcast(s2, missing);
    FAIL("NotABroadcast expected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotABroadcast);
  }
}

TEST_CASE("reverse_doubling example on path(3)") {
  RootedInstance p3 = path(3);
  FiniteSchedule gather{{Matching({{1, 2}}), Matching({{0, 1}})}};
  std::vector<Time> arrivals = receive_times(p3, gather);
  CHECK(arrivals == std::vector<Time>{0, 2, 2});
  FiniteSchedule out = reverse_doubling(p3, gather, arrivals);
  std::vector<Time> informed = first_arrivals(p3, out);
  for (Vertex v = 1; v < p3.n; ++v) {
    CHECK(informed[v] != kUnreached);
    CHECK(informed[v] <= 4 * arrivals[v]);
  }
  CHECK(out.length() <= 4 * gather.length());

  CHECK_THROWS_AS(reverse_doubling(p3, gather, std::vector<Time>{0, 1, 2}), Error);
}

TEST_CASE("reverse_doubling length is geometric for power-of-two gathers") {
  RootedInstance t = random_tree(6, 77);
  FiniteSchedule gather;
  ScheduleStream stream = testsupport::random_maximal_stream(t, 5);
  gather = stream.prefix(8);
  std::vector<Time> arrivals = receive_times(t, gather);
  bool all = true;
  for (Time a : arrivals) all = all && a != kUnreached;
  if (all) {
    FiniteSchedule out = reverse_doubling(t, gather, arrivals);
    CHECK(out.length() == 1 + 2 + 4 + 8);  // sum of dyadic prefixes
  }
}

TEST_CASE("single-edge tree reverse doubling") {
  RootedInstance p2 = path(2);
  FiniteSchedule gather{{Matching({{0, 1}})}};
  std::vector<Time> arrivals = receive_times(p2, gather);
  FiniteSchedule out = reverse_doubling(p2, gather, arrivals);
  std::vector<Time> informed = first_arrivals(p2, out);
  CHECK(informed[1] <= 4 * arrivals[1]);
}
