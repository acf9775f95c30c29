#pragma once

#include <vector>

#include "freshcast/instance.hpp"
#include "freshcast/rational.hpp"
#include "freshcast/schedule.hpp"

namespace freshcast {

/// A finite broadcast schedule together with its per-vertex first-informed
/// times (delay semantics: only the root starts informed).
struct BroadcastResult {
  FiniteSchedule schedule;
  std::vector<Time> delay;  // delay[root] == 0
  Time makespan = 0;
  Rat average;  // (1/n) * sum of delays, root included
};

/// Exact minimum broadcast time on a tree: bottom-up completion times, each
/// node calling children in non-increasing completion order.
BroadcastResult tree_min_broadcast(const RootedInstance& instance);

/// Exact minimum average broadcast time on a tree: each node calls children
/// in non-increasing subtree-size order (ties by vertex id).
BroadcastResult abt_greedy(const RootedInstance& instance);

/// Replay: earliest informed time per vertex, kUnreached where the schedule
/// never delivers.
std::vector<Time> first_arrivals(const RootedInstance& instance, const FiniteSchedule& schedule);

/// First time the root hears from each vertex (gather direction), kUnreached
/// where it never does.
std::vector<Time> receive_times(const RootedInstance& instance, const FiniteSchedule& schedule);

}  // namespace freshcast
