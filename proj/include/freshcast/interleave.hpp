#pragma once

#include <utility>
#include <vector>

#include "freshcast/broadcast.hpp"
#include "freshcast/instance.hpp"
#include "freshcast/rational.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/simulate.hpp"

namespace freshcast {

/// Directed tree of first informers: parent[v] is the vertex v first heard
/// from, weight[v] the wait between the informer's own arrival and v's.
/// Path weights from the root telescope to the broadcast delays.
struct WeightedArborescence {
  Vertex root = 0;
  std::vector<Vertex> parent;  // parent[root] == -1
  std::vector<Time> weight;    // weight[root] == 0
  Time max_weight = 0;
};

WeightedArborescence build_arborescence(const RootedInstance& instance,
                                        const BroadcastResult& broadcast);

/// Placement rule for interleaving t ordered items into chunks of length
/// L = floor(log2 t) + 1: position k of chunk j holds item
/// 2^(k-1) + (j mod 2^(k-1)) when that index is <= t, else the slot idles.
/// Item i recurs within every window of i*L slots.
struct InterleavePlan {
  int item_count = 0;
  int chunk_length = 0;

  explicit InterleavePlan(int t);

  /// 1-based item index for the slot, or 0 for an idle slot.
  int slot_item(Time slot) const;

  /// Slot pattern repeats with this period.
  Time period() const;
};

/// Infinite stream of low average rooted latency built from a broadcast
/// schedule: interleaves the weight classes of the first-informer tree, each
/// class expanded into its two alternating matchings (two steps per slot).
struct ClockToRootResult {
  ScheduleStream stream;
  BroadcastResult broadcast;
  WeightedArborescence arborescence;
  Time t_max = 0;        // broadcast schedule length
  Time max_weight = 0;   // classes actually interleaved (trailing empties trimmed)
  int chunk_length = 0;
  Rat bound_rooted;      // 2 * max(1, log2 T_max) * T
  Rat bound_allpairs;    // 4 * max(1, log2 T_max) * T
};

ClockToRootResult clock_to_root(const RootedInstance& instance, const BroadcastResult& broadcast);

/// abt_greedy composed with clock_to_root (trees only).
ClockToRootResult avgrvc_from_abt(const RootedInstance& instance);

struct BoundReport {
  Rat achieved;
  Rat bound;
  bool ok = false;
};

/// Max of the average rooted latency over `samples` evenly spaced times in
/// [0, horizon], compared against the rooted bound.
BoundReport clock_to_root_eval(const RootedInstance& instance, const ClockToRootResult& stream,
                               Time horizon, int samples);

/// Same under the all-pairs state and the 4 log(T_max) T bound.
BoundReport clock_to_root_allpairs_eval(const RootedInstance& instance,
                                        const ClockToRootResult& stream, Time horizon,
                                        int samples);

std::vector<Time> sample_times(Time horizon, int samples);

}  // namespace freshcast
