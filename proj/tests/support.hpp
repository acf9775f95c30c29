#pragma once

#include <cstdint>
#include <vector>

#include "freshcast/instance.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/types.hpp"

namespace freshcast::testsupport {

/// Independent latency oracle: largest t' such that an increasing-label path
/// carries source's time-t' information to target by time t (0 if none),
/// found by wavefront reachability over the schedule prefix.
Time path_search_latency(const RootedInstance& instance, const std::vector<Matching>& steps,
                         Time t, Vertex target, Vertex source);

/// Deterministic pseudo-random maximal matching for (instance, key).
Matching random_maximal_matching(const RootedInstance& instance, std::uint64_t key);

/// Pure-in-t stream of pseudo-random maximal matchings.
ScheduleStream random_maximal_stream(const RootedInstance& instance, std::uint64_t seed);

/// Body of `period` random matchings (mix of maximal matchings, single edges
/// and idle steps), reproducible from the seed.
FiniteSchedule random_matching_body(const RootedInstance& instance, Time period,
                                    std::uint64_t seed);

}  // namespace freshcast::testsupport
