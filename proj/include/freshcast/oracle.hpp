#pragma once

#include <optional>
#include <vector>

#include "freshcast/instance.hpp"
#include "freshcast/rational.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/simulate.hpp"

namespace freshcast {

/// Exhaustive-search result. The witness replays to the reported value; for
/// the periodic searches `period` is the witness body length and the value is
/// exact among periodic schedules with period <= max_period (a factor-2
/// certificate for unrestricted schedules).
struct OracleResult {
  Rat value;
  FiniteSchedule witness;
  std::optional<Time> period;
  Time max_period = 0;
};

enum class BroadcastObjective { MinTime, Abt };

/// Exact optimum over all schedules via memoized search on informed sets.
/// Enforced n <= 8.
OracleResult oracle_broadcast(const RootedInstance& instance, BroadcastObjective kind);

enum class RvcObjective { Max, Avg };

/// Exact optimum among periodic schedules with period <= max_period
/// (default min(n+1, 8)). Enumerates bodies of maximal matchings: adding
/// calls to a step never increases any view, so maximal steps dominate.
/// Enforced n <= 8.
OracleResult oracle_rvc(const RootedInstance& instance, RvcObjective kind, Time max_period = 0);

struct RegPeriodsOracle {
  std::int64_t total = 0;
  std::vector<int> exponents;
};

/// Exact minimum of the sum of periods over regular power-of-two period
/// assignments (root pinned to 1), via a per-node budget DP. Enforced n <= 8.
RegPeriodsOracle oracle_regperi(const RootedInstance& instance);

/// All maximal matchings of the instance, deterministically ordered.
std::vector<Matching> maximal_matchings(const RootedInstance& instance);

/// All rooted trees on n vertices up to rooted isomorphism, canonical ids.
std::vector<RootedInstance> all_rooted_trees(int n);

}  // namespace freshcast
