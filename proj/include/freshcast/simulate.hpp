#pragma once

#include <vector>

#include "freshcast/instance.hpp"
#include "freshcast/rational.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/types.hpp"

namespace freshcast {

/// Rooted state: views of the root per vertex; view[root] == t always.
struct RootedState {
  Time t = 0;
  std::vector<Time> view;

  static RootedState initial(const RootedInstance& instance) {
    return RootedState{0, std::vector<Time>(static_cast<std::size_t>(instance.n), 0)};
  }
};

/// All-pairs state: view[v*n+u] is v's view of u; diagonal == t.
struct AllPairsState {
  Time t = 0;
  int n = 0;
  std::vector<Time> view;

  Time at(Vertex v, Vertex u) const { return view[static_cast<std::size_t>(v) * n + u]; }

  static AllPairsState initial(const RootedInstance& instance) {
    AllPairsState s;
    s.n = instance.n;
    s.view.assign(static_cast<std::size_t>(instance.n) * instance.n, 0);
    return s;
  }
};

/// Matched endpoints merge views (coordinate-wise max), then the root / each
/// diagonal refreshes to the new time. Throws InvalidMatching on bad steps.
void step(const RootedInstance& instance, RootedState& state, const Matching& matching);
void step(const RootedInstance& instance, AllPairsState& state, const Matching& matching);

/// latency[t][v] = t - view_v^t, for t in [0, horizon].
struct RootedTrace {
  int n = 0;
  std::vector<std::vector<Time>> latency;

  Time horizon() const { return static_cast<Time>(latency.size()) - 1; }
};

/// latency[t][v*n+u] = t - view_v^t(u).
struct AllPairsTrace {
  int n = 0;
  std::vector<std::vector<Time>> latency;

  Time horizon() const { return static_cast<Time>(latency.size()) - 1; }
  Time at(Time t, Vertex v, Vertex u) const {
    return latency[static_cast<std::size_t>(t)][static_cast<std::size_t>(v) * n + u];
  }
};

RootedTrace simulate(const RootedInstance& instance, const ScheduleStream& schedule, Time horizon);
AllPairsTrace simulate_allpairs(const RootedInstance& instance, const ScheduleStream& schedule,
                                Time horizon);

enum class ObjectiveKind {
  MaxRooted,   // max_t ||l^t||_inf
  AvgRooted,   // max_t ||l^t||_1 / n
  LpRooted,    // max_t sum_v (l^t_v)^p, reported as the exact power sum
  AllPairsAvg, // max_t ||L^t||_1 / n^2
  AllPairsMax, // max_t ||L^t||_inf
  TimeAvg,     // max over t, k >= K0 of window means of ||.||_1
};

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::MaxRooted;
  int p = 2;                                    // LpRooted only
  Time window = 1;                              // TimeAvg: K0
  ObjectiveKind time_avg_base = ObjectiveKind::AvgRooted;  // TimeAvg: averaged norm
};

/// Exact objective value over the given trace window (observed maximum; for
/// periodic schedules evaluated past the 2P warmup this is the supremum).
Rat objective(const RootedTrace& trace, const ObjectiveSpec& spec);
Rat objective(const AllPairsTrace& trace, const ObjectiveSpec& spec);

/// Unnormalized per-time norms, used by transforms and oracles.
Time rooted_l1(const RootedTrace& trace, Time t);
Time rooted_linf(const RootedTrace& trace, Time t);
Time allpairs_l1(const AllPairsTrace& trace, Time t);
Time allpairs_linf(const AllPairsTrace& trace, Time t);

/// True iff l^{t+P} == l^t for every t in [2P, horizon - P]. Requires the
/// trace to cover at least 3P steps (WindowTooShort otherwise).
bool detect_periodicity(const RootedTrace& trace, Time period);
bool detect_periodicity(const AllPairsTrace& trace, Time period);

/// Exact supremum over all time of the objective for a periodic schedule:
/// simulates 4P steps, verifies the latencies settle into the period
/// (WindowTooShort if they do not), and returns the max over [0, 3P].
Rat supremum_objective(const RootedInstance& instance, const PeriodicSchedule& schedule,
                       const ObjectiveSpec& spec);

/// Times t >= 1 with l^t_v <= l^{t-1}_v (fresh information arrived).
std::vector<Time> update_times(const RootedTrace& trace, Vertex v);

}  // namespace freshcast
