#include "freshcast/transforms.hpp"

#include <algorithm>
#include <string>

namespace freshcast {

Time norm_at(const RootedTrace& trace, Time t, NormKind norm) {
  switch (norm) {
    case NormKind::RootedLinf: return rooted_linf(trace, t);
    case NormKind::RootedL1: return rooted_l1(trace, t);
    default: throw Error(ErrorKind::Internal, "rooted trace with all-pairs norm");
  }
}

Time norm_at(const AllPairsTrace& trace, Time t, NormKind norm) {
  switch (norm) {
    case NormKind::AllPairsLinf: return allpairs_linf(trace, t);
    case NormKind::AllPairsL1: return allpairs_l1(trace, t);
    default: throw Error(ErrorKind::Internal, "all-pairs trace with rooted norm");
  }
}

PeriodicSchedule truncate_and_repeat(const RootedInstance& instance, const ScheduleStream& stream,
                                     Time bound) {
  validate(instance);
  if (bound < 0) throw Error(ErrorKind::WindowTooShort, "bound must be non-negative");
  FiniteSchedule body = stream.prefix(bound + 1);
  validate_schedule(instance, body.steps);
  return PeriodicSchedule(std::move(body));
}

PeriodicSchedule truncate_and_repeat_time_avg(const RootedInstance& instance,
                                              const ScheduleStream& stream, Time bound, Time k0,
                                              NormKind norm) {
  validate(instance);
  if (bound < 0 || k0 < 1) throw Error(ErrorKind::WindowTooShort, "need bound >= 0 and K0 >= 1");
  Time horizon = bound + k0;
  Time low = -1;
  if (norm == NormKind::RootedLinf || norm == NormKind::RootedL1) {
    RootedTrace trace = simulate(instance, stream, horizon);
    for (Time k = 1; k <= k0; ++k) {
      if (norm_at(trace, bound + k, norm) <= bound) {
        low = bound + k;
        break;
      }
    }
  } else {
    AllPairsTrace trace = simulate_allpairs(instance, stream, horizon);
    for (Time k = 1; k <= k0; ++k) {
      if (norm_at(trace, bound + k, norm) <= bound) {
        low = bound + k;
        break;
      }
    }
  }
  if (low < 0) {
    throw Error(ErrorKind::NoLowPoint,
                "no step in [" + std::to_string(bound + 1) + "," + std::to_string(bound + k0) +
                    "] has norm <= " + std::to_string(bound));
  }
  FiniteSchedule body = stream.prefix(low);
  validate_schedule(instance, body.steps);
  return PeriodicSchedule(std::move(body));
}

PeriodicSchedule euler_tour_schedule(const RootedInstance& instance) {
  TreeView view = tree_view(instance);
  FiniteSchedule body;
  // iterative DFS emitting each tree edge on the way down and up
  std::vector<std::pair<Vertex, std::size_t>> stack{{instance.root, 0}};
  while (!stack.empty()) {
    Vertex v = stack.back().first;
    std::size_t next = stack.back().second;
    if (next < view.children[v].size()) {
      ++stack.back().second;
      Vertex c = view.children[v][next];
      body.steps.push_back(Matching({{v, c}}));
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) body.steps.push_back(Matching({{stack.back().first, v}}));
    }
  }
  if (body.steps.empty()) body.steps.push_back(Matching());  // single vertex
  return PeriodicSchedule(std::move(body));
}

PeriodicSchedule maxrvc_from_broadcast(const RootedInstance& instance,
                                       const FiniteSchedule& broadcast_schedule) {
  std::vector<Time> arrival = first_arrivals(instance, broadcast_schedule);
  for (Vertex v = 0; v < instance.n; ++v) {
    if (arrival[v] == kUnreached) {
      throw Error(ErrorKind::NotABroadcast, "vertex " + std::to_string(v) + " never informed");
    }
  }
  return PeriodicSchedule(broadcast_schedule);
}

FiniteSchedule reverse_doubling(const RootedInstance& instance, const FiniteSchedule& gather,
                                const std::vector<Time>& arrivals) {
  std::vector<Time> replayed = receive_times(instance, gather);
  if (arrivals != replayed) {
    throw Error(ErrorKind::InconsistentArrivalTimes,
                "given arrival times do not match the gather replay");
  }
  for (Vertex v = 0; v < instance.n; ++v) {
    if (replayed[v] == kUnreached) {
      throw Error(ErrorKind::InconsistentArrivalTimes,
                  "root never hears from vertex " + std::to_string(v));
    }
  }
  Time total = gather.length();
  if (total == 0) return FiniteSchedule{};
  FiniteSchedule out;
  for (Time block = 1;; block *= 2) {
    Time length = std::min(block, total);
    FiniteSchedule prefix;
    prefix.steps.assign(gather.steps.begin(), gather.steps.begin() + length);
    out = concat(out, reverse(prefix));
    if (length == total) break;
  }
  return out;
}

}  // namespace freshcast
