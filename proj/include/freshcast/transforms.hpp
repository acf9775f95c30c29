#pragma once

#include <vector>

#include "freshcast/broadcast.hpp"
#include "freshcast/instance.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/simulate.hpp"

namespace freshcast {

/// Norms used by the periodic-truncation theorems (unnormalized, exact ints).
enum class NormKind { RootedLinf, RootedL1, AllPairsLinf, AllPairsL1 };

/// Repeats the first bound+1 steps of the stream. If the caller's bound
/// really dominates ||l^t|| over that prefix, the output's supremum norm is
/// at most 2*bound.
PeriodicSchedule truncate_and_repeat(const RootedInstance& instance, const ScheduleStream& stream,
                                     Time bound);

/// Time-averaged variant: scans [bound+1, bound+k0] for a step whose norm
/// dips to bound and repeats that prefix (period <= bound + k0); all window
/// averages of length >= k0 stay within 4*bound. NoLowPoint if the scan
/// fails, which signals a violated precondition.
PeriodicSchedule truncate_and_repeat_time_avg(const RootedInstance& instance,
                                              const ScheduleStream& stream, Time bound, Time k0,
                                              NormKind norm);

/// One tour edge per step, DFS from the root with children in id order;
/// period 2(n-1).
PeriodicSchedule euler_tour_schedule(const RootedInstance& instance);

/// Repeats a broadcast schedule ad infinitum; max rooted latency at most
/// twice the schedule length. NotABroadcast if replay leaves a vertex out.
PeriodicSchedule maxrvc_from_broadcast(const RootedInstance& instance,
                                       const FiniteSchedule& broadcast_schedule);

/// Concatenation of reversed dyadic prefixes of a gather schedule; every
/// vertex hears from the root within 4 * (first time the root heard from it).
/// arrivals must match the replayed receive times (InconsistentArrivalTimes).
FiniteSchedule reverse_doubling(const RootedInstance& instance, const FiniteSchedule& gather,
                                const std::vector<Time>& arrivals);

Time norm_at(const RootedTrace& trace, Time t, NormKind norm);
Time norm_at(const AllPairsTrace& trace, Time t, NormKind norm);

}  // namespace freshcast
