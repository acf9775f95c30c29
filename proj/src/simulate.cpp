#include "freshcast/simulate.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace freshcast {

namespace {

std::set<std::pair<Vertex, Vertex>> edge_set(const RootedInstance& instance) {
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const auto& [a, b] : instance.edges) edges.insert(std::minmax(a, b));
  return edges;
}

void check_matching(const std::set<std::pair<Vertex, Vertex>>& edges, const Matching& matching) {
  for (const auto& e : matching.edges()) {
    if (edges.find(e) == edges.end()) {
      throw Error(ErrorKind::InvalidMatching, "edge (" + std::to_string(e.first) + "," +
                                                  std::to_string(e.second) +
                                                  ") not in instance");
    }
  }
}

void apply_unchecked(const RootedInstance& instance, RootedState& state,
                     const Matching& matching) {
  for (const auto& [a, b] : matching.edges()) {
    Time merged = std::max(state.view[a], state.view[b]);
    state.view[a] = merged;
    state.view[b] = merged;
  }
  ++state.t;
  state.view[instance.root] = state.t;
}

void apply_unchecked(AllPairsState& state, const Matching& matching) {
  const int n = state.n;
  for (const auto& [a, b] : matching.edges()) {
    Time* row_a = state.view.data() + static_cast<std::size_t>(a) * n;
    Time* row_b = state.view.data() + static_cast<std::size_t>(b) * n;
    for (int u = 0; u < n; ++u) {
      Time merged = std::max(row_a[u], row_b[u]);
      row_a[u] = merged;
      row_b[u] = merged;
    }
  }
  ++state.t;
  for (int v = 0; v < n; ++v) state.view[static_cast<std::size_t>(v) * n + v] = state.t;
}

}  // namespace

void step(const RootedInstance& instance, RootedState& state, const Matching& matching) {
  check_matching(edge_set(instance), matching);
  for (const auto& [a, b] : matching.edges()) {
    Time merged = std::max(state.view[a], state.view[b]);
    state.view[a] = merged;
    state.view[b] = merged;
  }
  ++state.t;
  state.view[instance.root] = state.t;
}

void step(const RootedInstance& instance, AllPairsState& state, const Matching& matching) {
  check_matching(edge_set(instance), matching);
  apply_unchecked(state, matching);
}

RootedTrace simulate(const RootedInstance& instance, const ScheduleStream& schedule,
                     Time horizon) {
  if (horizon < 0) throw Error(ErrorKind::WindowTooShort, "negative horizon");
  validate(instance);
  auto edges = edge_set(instance);
  RootedState state = RootedState::initial(instance);
  RootedTrace trace;
  trace.n = instance.n;
  trace.latency.reserve(static_cast<std::size_t>(horizon) + 1);
  auto record = [&] {
    std::vector<Time> lat(state.view.size());
    for (std::size_t v = 0; v < lat.size(); ++v) lat[v] = state.t - state.view[v];
    trace.latency.push_back(std::move(lat));
  };
  record();
  for (Time t = 0; t < horizon; ++t) {
    Matching matching = schedule.step(t);
    try {
      check_matching(edges, matching);
    } catch (const Error& e) {
      throw Error(e.kind(), "at step " + std::to_string(t) + ": " + e.what());
    }
    apply_unchecked(instance, state, matching);
    record();
  }
  return trace;
}

AllPairsTrace simulate_allpairs(const RootedInstance& instance, const ScheduleStream& schedule,
                                Time horizon) {
  if (horizon < 0) throw Error(ErrorKind::WindowTooShort, "negative horizon");
  validate(instance);
  auto edges = edge_set(instance);
  AllPairsState state = AllPairsState::initial(instance);
  AllPairsTrace trace;
  trace.n = instance.n;
  trace.latency.reserve(static_cast<std::size_t>(horizon) + 1);
  auto record = [&] {
    std::vector<Time> lat(state.view.size());
    for (std::size_t i = 0; i < lat.size(); ++i) lat[i] = state.t - state.view[i];
    trace.latency.push_back(std::move(lat));
  };
  record();
  for (Time t = 0; t < horizon; ++t) {
    Matching matching = schedule.step(t);
    try {
      check_matching(edges, matching);
    } catch (const Error& e) {
      throw Error(e.kind(), "at step " + std::to_string(t) + ": " + e.what());
    }
    apply_unchecked(state, matching);
    record();
  }
  return trace;
}

Time rooted_l1(const RootedTrace& trace, Time t) {
  Time sum = 0;
  for (Time l : trace.latency[static_cast<std::size_t>(t)]) sum += l;
  return sum;
}

Time rooted_linf(const RootedTrace& trace, Time t) {
  Time best = 0;
  for (Time l : trace.latency[static_cast<std::size_t>(t)]) best = std::max(best, l);
  return best;
}

Time allpairs_l1(const AllPairsTrace& trace, Time t) {
  Time sum = 0;
  for (Time l : trace.latency[static_cast<std::size_t>(t)]) sum += l;
  return sum;
}

Time allpairs_linf(const AllPairsTrace& trace, Time t) {
  Time best = 0;
  for (Time l : trace.latency[static_cast<std::size_t>(t)]) best = std::max(best, l);
  return best;
}

namespace {

Time ipow(Time base, int exp) {
  Time out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > INT64_MAX / base) throw Error(ErrorKind::Internal, "power overflow");
    out *= base;
  }
  return out;
}

Rat max_window_mean(const std::vector<Rat>& norms, Time k0) {
  if (k0 < 1) throw Error(ErrorKind::WindowTooShort, "window must be >= 1");
  Time count = static_cast<Time>(norms.size());
  if (count < k0) throw Error(ErrorKind::WindowTooShort, "trace shorter than K0");
  std::vector<Rat> prefix(static_cast<std::size_t>(count) + 1, Rat(0));
  for (Time i = 0; i < count; ++i) {
    prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + norms[i];
  }
  Rat best(0);
  for (Time k = k0; k <= count; ++k) {
    for (Time t = 0; t + k <= count; ++t) {
      Rat mean = (prefix[static_cast<std::size_t>(t + k)] - prefix[static_cast<std::size_t>(t)]) /
                 Rat(k);
      best = Rat::max(best, mean);
    }
  }
  return best;
}

}  // namespace

Rat objective(const RootedTrace& trace, const ObjectiveSpec& spec) {
  if (trace.latency.empty()) throw Error(ErrorKind::WindowTooShort, "empty trace");
  switch (spec.kind) {
    case ObjectiveKind::MaxRooted: {
      Time best = 0;
      for (Time t = 0; t <= trace.horizon(); ++t) best = std::max(best, rooted_linf(trace, t));
      return Rat(best);
    }
    case ObjectiveKind::AvgRooted: {
      Time best = 0;
      for (Time t = 0; t <= trace.horizon(); ++t) best = std::max(best, rooted_l1(trace, t));
      return Rat(best, trace.n);
    }
    case ObjectiveKind::LpRooted: {
      Time best = 0;
      for (Time t = 0; t <= trace.horizon(); ++t) {
        Time sum = 0;
        for (Time l : trace.latency[static_cast<std::size_t>(t)]) sum += ipow(l, spec.p);
        best = std::max(best, sum);
      }
      return Rat(best);
    }
    case ObjectiveKind::TimeAvg: {
      std::vector<Rat> norms;
      norms.reserve(trace.latency.size());
      for (Time t = 0; t <= trace.horizon(); ++t) {
        if (spec.time_avg_base == ObjectiveKind::MaxRooted) {
          norms.push_back(Rat(rooted_linf(trace, t)));
        } else {
          norms.push_back(Rat(rooted_l1(trace, t), trace.n));
        }
      }
      return max_window_mean(norms, spec.window);
    }
    default:
      throw Error(ErrorKind::Internal, "objective needs an all-pairs trace");
  }
}

Rat objective(const AllPairsTrace& trace, const ObjectiveSpec& spec) {
  if (trace.latency.empty()) throw Error(ErrorKind::WindowTooShort, "empty trace");
  switch (spec.kind) {
    case ObjectiveKind::AllPairsMax: {
      Time best = 0;
      for (Time t = 0; t <= trace.horizon(); ++t) best = std::max(best, allpairs_linf(trace, t));
      return Rat(best);
    }
    case ObjectiveKind::AllPairsAvg: {
      Time best = 0;
      for (Time t = 0; t <= trace.horizon(); ++t) best = std::max(best, allpairs_l1(trace, t));
      return Rat(best, static_cast<Time>(trace.n) * trace.n);
    }
    case ObjectiveKind::TimeAvg: {
      std::vector<Rat> norms;
      norms.reserve(trace.latency.size());
      for (Time t = 0; t <= trace.horizon(); ++t) {
        if (spec.time_avg_base == ObjectiveKind::AllPairsMax) {
          norms.push_back(Rat(allpairs_linf(trace, t)));
        } else {
          norms.push_back(Rat(allpairs_l1(trace, t), static_cast<Time>(trace.n) * trace.n));
        }
      }
      return max_window_mean(norms, spec.window);
    }
    default:
      throw Error(ErrorKind::Internal, "objective needs a rooted trace");
  }
}

bool detect_periodicity(const RootedTrace& trace, Time period) {
  if (period < 1) throw Error(ErrorKind::WindowTooShort, "period must be >= 1");
  if (trace.horizon() < 3 * period) {
    throw Error(ErrorKind::WindowTooShort, "trace must cover >= 3P steps");
  }
  for (Time t = 2 * period; t + period <= trace.horizon(); ++t) {
    if (trace.latency[static_cast<std::size_t>(t + period)] !=
        trace.latency[static_cast<std::size_t>(t)]) {
      return false;
    }
  }
  return true;
}

bool detect_periodicity(const AllPairsTrace& trace, Time period) {
  if (period < 1) throw Error(ErrorKind::WindowTooShort, "period must be >= 1");
  if (trace.horizon() < 3 * period) {
    throw Error(ErrorKind::WindowTooShort, "trace must cover >= 3P steps");
  }
  for (Time t = 2 * period; t + period <= trace.horizon(); ++t) {
    if (trace.latency[static_cast<std::size_t>(t + period)] !=
        trace.latency[static_cast<std::size_t>(t)]) {
      return false;
    }
  }
  return true;
}

Rat supremum_objective(const RootedInstance& instance, const PeriodicSchedule& schedule,
                       const ObjectiveSpec& spec) {
  Time period = schedule.period();
  ScheduleStream stream = ScheduleStream::from_periodic(schedule);
  bool allpairs = spec.kind == ObjectiveKind::AllPairsAvg ||
                  spec.kind == ObjectiveKind::AllPairsMax ||
                  (spec.kind == ObjectiveKind::TimeAvg &&
                   (spec.time_avg_base == ObjectiveKind::AllPairsAvg ||
                    spec.time_avg_base == ObjectiveKind::AllPairsMax));
  if (allpairs) {
    AllPairsTrace trace = simulate_allpairs(instance, stream, 4 * period);
    if (!detect_periodicity(trace, period)) {
      throw Error(ErrorKind::WindowTooShort, "latencies not periodic within 4P; no exact supremum");
    }
    trace.latency.resize(static_cast<std::size_t>(3 * period) + 1);
    return objective(trace, spec);
  }
  RootedTrace trace = simulate(instance, stream, 4 * period);
  if (!detect_periodicity(trace, period)) {
    throw Error(ErrorKind::WindowTooShort, "latencies not periodic within 4P; no exact supremum");
  }
  trace.latency.resize(static_cast<std::size_t>(3 * period) + 1);
  return objective(trace, spec);
}

std::vector<Time> update_times(const RootedTrace& trace, Vertex v) {
  std::vector<Time> out;
  for (Time t = 1; t <= trace.horizon(); ++t) {
    if (trace.latency[static_cast<std::size_t>(t)][v] <=
        trace.latency[static_cast<std::size_t>(t - 1)][v]) {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace freshcast
