#pragma once

#include <optional>
#include <vector>

#include "freshcast/instance.hpp"
#include "freshcast/rational.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/simulate.hpp"

namespace freshcast {

/// Slack s = 1 - sum(1/p_i) of a non-decreasing power-of-two sequence.
/// Asserts the tail facts: s > 0 implies s >= 1/p_k, and 1/p_k + s >= 1/2^k.
/// Throws BadSequence on malformed input or a violated fact.
Rat pow2_tail_slack(const std::vector<std::int64_t>& periods);

/// Either certifies sum(1/p_i) <= 1/2 (nullopt) or returns the 1-based prefix
/// length j < k whose reciprocals sum to exactly 1/2.
std::optional<std::size_t> pow2_half_partition(const std::vector<std::int64_t>& periods);

/// Power-of-two periods per vertex as exponents; the root is pinned to 0.
struct PeriodAssignment {
  std::vector<int> exponent;

  Time period(Vertex v) const { return Time(1) << exponent[static_cast<std::size_t>(v)]; }
  std::int64_t total_periods() const;
};

struct OffsetAssignment {
  std::vector<Time> offset;  // offset[root] == 0 (unused)
};

/// Per-(vertex, exponent) tables of the period DP, for inspection: the exact
/// LP value of the children subproblem and the integral value after rounding.
struct PeriodDpInfo {
  std::vector<std::vector<Rat>> lp_value;
  std::vector<std::vector<std::int64_t>> rounded_value;
  int exponent_cap = 0;
};

/// Bottom-up DP with one multiple-choice-knapsack LP per node (solved by
/// hull dominance + greedy filling, at most one split child), rounded to the
/// split child's smaller exponent, then every non-root period doubled.
/// Total is at most twice the exact regular-periods optimum.
PeriodAssignment period_assignment(const RootedInstance& instance,
                                   PeriodDpInfo* info = nullptr);

/// Sibling rank by non-increasing subtree size, ties by vertex id (1-based).
std::vector<int> size_order_rank(const TreeView& view);

/// Throws InvalidPeriods unless the exponents satisfy the regularity
/// conditions with the root at period 1.
void check_period_assignment(const TreeView& view, const PeriodAssignment& periods);

/// Recursive halving construction; output satisfies the offset bounds, the
/// per-class reciprocal condition, and o_v <= rank(v) whenever the child
/// keeps its parent's period.
OffsetAssignment offset_assignment(const RootedInstance& instance,
                                   const PeriodAssignment& periods,
                                   const std::vector<int>& rank);

void check_offset_assignment(const TreeView& view, const PeriodAssignment& periods,
                             const OffsetAssignment& offsets);

/// Periodic index sequence (block of length max p) where item i occupies one
/// slot every periods[i] steps, evenly spaced. Requires sum(1/p) == 1.
std::vector<int> regular_sequence(const std::vector<std::int64_t>& periods);

struct RegularSchedule {
  PeriodicSchedule schedule;
  std::vector<Time> realized_period;  // 2 p^v per vertex (root: 1)
  std::vector<Time> offset_bound;     // 2 o^v per non-root vertex
  std::vector<Time> update_residue;   // designed pre-schedule update residue
  std::vector<int> phase;             // step parity carrying each tree edge
};

/// Realizes a valid (periods, offsets) pair as a telephone schedule with
/// period 2 max_v p^v; every vertex's update sequence has period exactly
/// 2 p^v and a constant offset of at most 2 o^v.
RegularSchedule build_regular_schedule(const RootedInstance& instance,
                                       const PeriodAssignment& periods,
                                       const OffsetAssignment& offsets);

/// (1/n) (sum_v sum_{u on root path, u != r} o^u + sum_v p^v), exact.
Rat regular_latency_bound(const RootedInstance& instance, const std::vector<Time>& period,
                          const std::vector<Time>& offset);

struct TreeApproxResult {
  PeriodAssignment periods;
  OffsetAssignment offsets;
  RegularSchedule schedule;
  Rat latency_bound;  // regular_latency_bound on the realized (doubled) values
};

/// The constant-factor AvgRVC pipeline: periods -> size ordering -> offsets
/// -> regular schedule.
TreeApproxResult tree_avgrvc_approx(const RootedInstance& instance);

/// lambda^2 / (4n) with lambda = sum_i sqrt(n_i), a certified lower bound on
/// the optimal average rooted latency of gap_tree(n). NotGapTree otherwise.
Rat gap_lower_bound(const RootedInstance& instance);

struct LocalPeriodCheck {
  Time updates = 0;      // k over [P, 2P)
  Time latency_sum = 0;  // sum of l^t over [P, 2P)
  bool vacuous = false;  // k == 0 (or the root)
  bool holds = false;    // P^2/k <= 2 * latency_sum
};

/// Per-vertex check of the update-count lower bound over [P, 2P) of the
/// given trace; requires the trace to cover [0, 3P].
std::vector<LocalPeriodCheck> local_period_lower_bound(const RootedTrace& trace, Time period,
                                                       Vertex root);

}  // namespace freshcast
