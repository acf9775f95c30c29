#include "freshcast/tree_approx.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>

namespace freshcast {

namespace {

bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

void check_pow2_sequence(const std::vector<std::int64_t>& periods) {
  if (periods.empty()) throw Error(ErrorKind::BadSequence, "empty sequence");
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (!is_power_of_two(periods[i])) {
      throw Error(ErrorKind::BadSequence, "entry " + std::to_string(i) + " is not a power of two");
    }
    if (i > 0 && periods[i] < periods[i - 1]) {
      throw Error(ErrorKind::BadSequence, "sequence is not non-decreasing");
    }
  }
}

}  // namespace

Rat pow2_tail_slack(const std::vector<std::int64_t>& periods) {
  check_pow2_sequence(periods);
  Rat sum(0);
  for (std::int64_t p : periods) sum += Rat(1, p);
  if (Rat(1) < sum) throw Error(ErrorKind::BadSequence, "reciprocals sum beyond 1");
  Rat slack = Rat(1) - sum;
  std::int64_t tail = periods.back();
  if (Rat(0) < slack && slack < Rat(1, tail)) {
    throw Error(ErrorKind::BadSequence, "tail slack fact violated");
  }
  int k = static_cast<int>(periods.size());
  if (k < 63 && Rat(1, tail) + slack < Rat(1, std::int64_t(1) << k)) {
    throw Error(ErrorKind::BadSequence, "tail sum fact violated");
  }
  return slack;
}

std::optional<std::size_t> pow2_half_partition(const std::vector<std::int64_t>& periods) {
  check_pow2_sequence(periods);
  if (periods.size() < 2) throw Error(ErrorKind::BadSequence, "need at least two entries");
  Rat sum(0);
  for (std::int64_t p : periods) sum += Rat(1, p);
  if (Rat(1) < sum) throw Error(ErrorKind::BadSequence, "reciprocals sum beyond 1");
  Rat prefix(0);
  for (std::size_t j = 0; j + 1 < periods.size(); ++j) {
    prefix += Rat(1, periods[j]);
    if (prefix == Rat(1, 2)) return j + 1;
    if (Rat(1, 2) < prefix) break;
  }
  if (sum <= Rat(1, 2)) return std::nullopt;
  throw Error(ErrorKind::BadSequence, "no exact half prefix despite sum > 1/2");
}

std::int64_t PeriodAssignment::total_periods() const {
  std::int64_t total = 0;
  for (int e : exponent) total += std::int64_t(1) << e;
  return total;
}

namespace {

int exponent_cap(int n) {
  int ceil_log = 0;
  while ((1 << ceil_log) < n) ++ceil_log;
  return 2 * ceil_log + 1;
}

/// One child's upgrade ladder entry: moving to `exponent` costs extra weight
/// `weight_delta` and frees `cost_delta` budget units.
struct HullStep {
  std::size_t child;
  int from_exponent;
  int to_exponent;
  std::int64_t weight_delta;
  std::int64_t cost_delta;  // in units of 2^-emax
};

struct MckOutcome {
  Rat lp_value;                // exact LP optimum of the children subproblem
  std::vector<int> exponent;   // rounded integral choice per child
  std::int64_t rounded_value;  // sum of child weights after rounding
  int split_child = -1;        // child holding the two fractional variables
};

/// LP relaxation of the children multiple-choice knapsack: one option per
/// (child, exponent >= floor_exponent), weight w[child][exponent], cost
/// 2^-exponent, budget 1. Hull dominance + greedy filling yields a basic
/// optimum with at most one split child; rounding takes the split child's
/// smaller exponent.
MckOutcome solve_children_mck(const std::vector<std::vector<std::int64_t>>& weight,
                              int floor_exponent, int emax) {
  const std::size_t k = weight.size();
  MckOutcome out;
  std::vector<std::vector<int>> hull(k);  // hull exponents, cost decreasing
  for (std::size_t c = 0; c < k; ++c) {
    // drop dominated options (another option with <= cost and <= weight),
    // then keep the lower convex hull in (cost, weight)
    std::vector<int> candidates;
    for (int j = floor_exponent; j <= emax; ++j) {
      while (!candidates.empty() && weight[c][candidates.back()] >= weight[c][j]) {
        candidates.pop_back();
      }
      candidates.push_back(j);
    }
    std::vector<int>& h = hull[c];
    for (int j : candidates) {
      while (h.size() >= 2) {
        int a = h[h.size() - 2];
        int b = h[h.size() - 1];
        // rate(a->b) >= rate(b->j) drops b; cross-multiplied, cost units 2^-x
        __int128 left = static_cast<__int128>(weight[c][b] - weight[c][a]) *
                        ((std::int64_t(1) << (emax - b)) - (std::int64_t(1) << (emax - j)));
        __int128 right = static_cast<__int128>(weight[c][j] - weight[c][b]) *
                         ((std::int64_t(1) << (emax - a)) - (std::int64_t(1) << (emax - b)));
        if (left >= right) {
          h.pop_back();
        } else {
          break;
        }
      }
      h.push_back(j);
    }
  }

  std::vector<std::size_t> position(k, 0);
  std::int64_t budget = std::int64_t(1) << emax;
  std::int64_t cost = 0;
  std::int64_t weight_total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    cost += std::int64_t(1) << (emax - hull[c][0]);
    weight_total += weight[c][hull[c][0]];
  }

  std::vector<HullStep> steps;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t s = 0; s + 1 < hull[c].size(); ++s) {
      int a = hull[c][s];
      int b = hull[c][s + 1];
      steps.push_back(HullStep{c, a, b, weight[c][b] - weight[c][a],
                               (std::int64_t(1) << (emax - a)) - (std::int64_t(1) << (emax - b))});
    }
  }
  std::sort(steps.begin(), steps.end(), [](const HullStep& x, const HullStep& y) {
    __int128 lhs = static_cast<__int128>(x.weight_delta) * y.cost_delta;
    __int128 rhs = static_cast<__int128>(y.weight_delta) * x.cost_delta;
    if (lhs != rhs) return lhs < rhs;
    if (x.child != y.child) return x.child < y.child;
    return x.to_exponent < y.to_exponent;
  });

  out.lp_value = Rat(weight_total);
  for (const HullStep& step : steps) {
    if (cost <= budget) break;
    if (step.from_exponent != hull[step.child][position[step.child]]) {
      throw Error(ErrorKind::Internal, "hull steps applied out of order");
    }
    if (cost - step.cost_delta >= budget) {
      // full upgrade
      cost -= step.cost_delta;
      weight_total += step.weight_delta;
      ++position[step.child];
    } else {
      // fractional upgrade: enough to land exactly on the budget
      Rat fraction(cost - budget, step.cost_delta);
      out.lp_value = Rat(weight_total) + fraction * Rat(step.weight_delta);
      out.split_child = static_cast<int>(step.child);
      // round to the smaller exponent: keep the child where it is
      cost = budget;
    }
  }
  if (cost > budget) throw Error(ErrorKind::Internal, "children knapsack infeasible");
  if (out.split_child < 0) out.lp_value = Rat(weight_total);

  out.exponent.resize(k);
  out.rounded_value = 0;
  for (std::size_t c = 0; c < k; ++c) {
    out.exponent[c] = hull[c][position[c]];
    out.rounded_value += weight[c][out.exponent[c]];
  }
  return out;
}

}  // namespace

PeriodAssignment period_assignment(const RootedInstance& instance, PeriodDpInfo* info) {
  TreeView view = tree_view(instance);
  const int n = instance.n;
  const int emax = exponent_cap(n);

  // f[v][j]: integral value of the rounded solution for subtree v with
  // exponent(v) = j; choice[v][j]: rounded child exponents realizing it.
  std::vector<std::vector<std::int64_t>> f(static_cast<std::size_t>(n),
                                           std::vector<std::int64_t>(emax + 1, 0));
  std::vector<std::vector<std::vector<int>>> choice(
      static_cast<std::size_t>(n), std::vector<std::vector<int>>(emax + 1));
  if (info != nullptr) {
    info->lp_value.assign(static_cast<std::size_t>(n), std::vector<Rat>(emax + 1, Rat(0)));
    info->rounded_value.assign(static_cast<std::size_t>(n),
                               std::vector<std::int64_t>(emax + 1, 0));
    info->exponent_cap = emax;
  }

  for (auto it = view.bfs_order.rbegin(); it != view.bfs_order.rend(); ++it) {
    Vertex v = *it;
    const auto& kids = view.children[v];
    for (int j = 0; j <= emax; ++j) {
      if (kids.empty()) {
        f[v][j] = std::int64_t(1) << j;
        if (info != nullptr) {
          info->lp_value[v][j] = Rat(f[v][j]);
          info->rounded_value[v][j] = f[v][j];
        }
        continue;
      }
      std::vector<std::vector<std::int64_t>> weight;
      weight.reserve(kids.size());
      for (Vertex c : kids) weight.push_back(f[c]);
      MckOutcome outcome = solve_children_mck(weight, j, emax);
      f[v][j] = (std::int64_t(1) << j) + outcome.rounded_value;
      choice[v][j] = outcome.exponent;
      if (info != nullptr) {
        info->lp_value[v][j] = Rat(std::int64_t(1) << j) + outcome.lp_value;
        info->rounded_value[v][j] = f[v][j];
      }
    }
  }

  PeriodAssignment assignment;
  assignment.exponent.assign(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<Vertex, int>> stack{{view.root, 0}};
  while (!stack.empty()) {
    auto [v, j] = stack.back();
    stack.pop_back();
    assignment.exponent[v] = j;
    for (std::size_t c = 0; c < view.children[v].size(); ++c) {
      stack.emplace_back(view.children[v][c], choice[v][j][c]);
    }
  }
  // repair the possible budget overshoot from rounding: double every
  // non-root period
  for (Vertex v = 0; v < n; ++v) {
    if (v != view.root) ++assignment.exponent[v];
  }
  check_period_assignment(view, assignment);
  return assignment;
}

std::vector<int> size_order_rank(const TreeView& view) {
  std::vector<int> rank(view.parent.size(), 0);
  for (std::size_t u = 0; u < view.children.size(); ++u) {
    std::vector<Vertex> order = view.children[u];
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      if (view.subtree_size[a] != view.subtree_size[b]) {
        return view.subtree_size[a] > view.subtree_size[b];
      }
      return a < b;
    });
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i) + 1;
  }
  return rank;
}

void check_period_assignment(const TreeView& view, const PeriodAssignment& periods) {
  const std::size_t n = view.parent.size();
  if (periods.exponent.size() != n) throw Error(ErrorKind::InvalidPeriods, "size mismatch");
  if (periods.exponent[view.root] != 0) {
    throw Error(ErrorKind::InvalidPeriods, "root period must be 1");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (periods.exponent[v] < 0 || periods.exponent[v] > 62) {
      throw Error(ErrorKind::InvalidPeriods, "exponent out of range");
    }
    if (view.parent[v] >= 0 &&
        periods.exponent[static_cast<std::size_t>(view.parent[v])] > periods.exponent[v]) {
      throw Error(ErrorKind::InvalidPeriods, "child period below parent period");
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    Rat sum(0);
    for (Vertex c : view.children[u]) sum += Rat(1, periods.period(c));
    if (Rat(1) < sum) {
      throw Error(ErrorKind::InvalidPeriods,
                  "children frequencies of " + std::to_string(u) + " exceed 1");
    }
  }
}

namespace {

struct OffsetItem {
  Vertex vertex;
  Time period;
  int rank;
};

void assign_offsets(std::vector<OffsetItem> items, Time parent_period,
                    std::vector<Time>& offset) {
  if (items.empty()) return;
  if (parent_period == 1 || items.size() == 1) {
    for (const auto& item : items) offset[item.vertex] = 1;
    return;
  }
  std::sort(items.begin(), items.end(), [](const OffsetItem& a, const OffsetItem& b) {
    if (a.period != b.period) return a.period < b.period;
    return a.rank < b.rank;
  });
  Rat sum(0);
  for (const auto& item : items) sum += Rat(1, item.period);
  if (Rat(1, 2) < sum) {
    Rat prefix(0);
    std::size_t cut = items.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
      prefix += Rat(1, items[i].period);
      if (prefix == Rat(1, 2)) {
        cut = i + 1;
        break;
      }
    }
    if (cut == items.size()) {
      throw Error(ErrorKind::InvalidPeriods, "no exact half split among children frequencies");
    }
    std::vector<OffsetItem> low(items.begin(), items.begin() + cut);
    std::vector<OffsetItem> high(items.begin() + cut, items.end());
    for (auto& item : low) item.period /= 2;
    for (auto& item : high) item.period /= 2;
    assign_offsets(std::move(low), parent_period / 2, offset);
    std::vector<Vertex> shifted;
    for (const auto& item : high) shifted.push_back(item.vertex);
    assign_offsets(std::move(high), parent_period / 2, offset);
    for (Vertex v : shifted) offset[v] += parent_period / 2;
  } else {
    for (auto& item : items) item.period /= 2;
    assign_offsets(std::move(items), parent_period / 2, offset);
  }
}

}  // namespace

OffsetAssignment offset_assignment(const RootedInstance& instance,
                                   const PeriodAssignment& periods,
                                   const std::vector<int>& rank) {
  TreeView view = tree_view(instance);
  check_period_assignment(view, periods);
  if (rank.size() != static_cast<std::size_t>(instance.n)) {
    throw Error(ErrorKind::InvalidPeriods, "rank table size mismatch");
  }
  OffsetAssignment offsets;
  offsets.offset.assign(static_cast<std::size_t>(instance.n), 0);
  for (Vertex u = 0; u < instance.n; ++u) {
    std::vector<OffsetItem> items;
    for (Vertex c : view.children[u]) {
      items.push_back(OffsetItem{c, periods.period(c), rank[static_cast<std::size_t>(c)]});
    }
    assign_offsets(std::move(items), periods.period(u), offsets.offset);
  }
  check_offset_assignment(view, periods, offsets);
  return offsets;
}

void check_offset_assignment(const TreeView& view, const PeriodAssignment& periods,
                             const OffsetAssignment& offsets) {
  const std::size_t n = view.parent.size();
  if (offsets.offset.size() != n) {
    throw Error(ErrorKind::InfeasibleAssignment, "offset table size mismatch");
  }
  for (std::size_t u = 0; u < n; ++u) {
    Time parent_period = periods.period(static_cast<Vertex>(u));
    std::map<Time, Rat> class_sum;
    for (Vertex c : view.children[u]) {
      Time o = offsets.offset[c];
      if (o < 1 || o > parent_period) {
        throw Error(ErrorKind::InfeasibleAssignment,
                    "offset of " + std::to_string(c) + " outside [1, parent period]");
      }
      class_sum[o] += Rat(1, periods.period(c));
    }
    for (const auto& [o, sum] : class_sum) {
      if (Rat(1, parent_period) < sum) {
        throw Error(ErrorKind::InfeasibleAssignment,
                    "offset class " + std::to_string(o) + " of " + std::to_string(u) +
                        " is oversubscribed");
      }
    }
  }
}

std::vector<int> regular_sequence(const std::vector<std::int64_t>& periods) {
  if (periods.empty()) throw Error(ErrorKind::SumNotOne, "empty period list");
  Rat sum(0);
  for (std::int64_t p : periods) {
    if (!is_power_of_two(p)) throw Error(ErrorKind::SumNotOne, "periods must be powers of two");
    sum += Rat(1, p);
  }
  if (sum != Rat(1)) throw Error(ErrorKind::SumNotOne, "reciprocals must sum to exactly 1");

  // recursive halving; item order ties broken by index
  struct Item {
    std::int64_t period;
    int index;
  };
  std::function<std::vector<int>(std::vector<Item>)> build =
      [&](std::vector<Item> items) -> std::vector<int> {
    if (items.size() == 1) {
      if (items[0].period != 1) throw Error(ErrorKind::Internal, "lone item must have period 1");
      return std::vector<int>(1, items[0].index);
    }
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& a, const Item& b) { return a.period < b.period; });
    Rat prefix(0);
    std::size_t cut = items.size();
    for (std::size_t i = 0; i + 1 < items.size(); ++i) {
      prefix += Rat(1, items[i].period);
      if (prefix == Rat(1, 2)) {
        cut = i + 1;
        break;
      }
    }
    if (cut == items.size()) throw Error(ErrorKind::Internal, "half split must exist");
    std::vector<Item> low(items.begin(), items.begin() + cut);
    std::vector<Item> high(items.begin() + cut, items.end());
    for (auto& item : low) item.period /= 2;
    for (auto& item : high) item.period /= 2;
    std::vector<int> a = build(std::move(low));
    std::vector<int> b = build(std::move(high));
    std::size_t length = 2 * std::max(a.size(), b.size());
    std::vector<int> out(length);
    for (std::size_t i = 0; i < length / 2; ++i) {
      out[2 * i] = a[i % a.size()];
      out[2 * i + 1] = b[i % b.size()];
    }
    return out;
  };

  std::vector<Item> items;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    items.push_back(Item{periods[i], static_cast<int>(i)});
  }
  if (items.size() == 1 && items[0].period != 1) {
    throw Error(ErrorKind::SumNotOne, "single item must have period 1");
  }
  return build(std::move(items));
}

RegularSchedule build_regular_schedule(const RootedInstance& instance,
                                       const PeriodAssignment& periods,
                                       const OffsetAssignment& offsets) {
  TreeView view = tree_view(instance);
  try {
    check_period_assignment(view, periods);
  } catch (const Error& e) {
    throw Error(ErrorKind::InfeasibleAssignment, e.what());
  }
  check_offset_assignment(view, periods, offsets);
  const int n = instance.n;

  std::vector<Time> residue(static_cast<std::size_t>(n), 0);  // update time mod period
  std::vector<int> phase(static_cast<std::size_t>(n), 0);
  for (Vertex u : view.bfs_order) {
    Time pu = periods.period(u);
    // group children by offset class
    std::map<Time, std::vector<Vertex>> classes;
    for (Vertex c : view.children[u]) classes[offsets.offset[c]].push_back(c);
    for (const auto& [klass, members] : classes) {
      std::vector<std::int64_t> ratios;
      std::int64_t max_ratio = 1;
      for (Vertex c : members) {
        ratios.push_back(periods.period(c) / pu);
        max_ratio = std::max(max_ratio, ratios.back());
      }
      // pad with dummies of the largest ratio so reciprocals sum to one
      Rat gap = Rat(1);
      for (std::int64_t q : ratios) gap = gap - Rat(1, q);
      std::int64_t dummies = (gap * Rat(max_ratio)).num();
      std::vector<std::int64_t> padded = ratios;
      padded.insert(padded.end(), static_cast<std::size_t>(dummies), max_ratio);
      std::vector<int> block = regular_sequence(padded);
      for (std::size_t m = 0; m < members.size(); ++m) {
        Time slot = static_cast<Time>(
            std::find(block.begin(), block.end(), static_cast<int>(m)) - block.begin());
        Vertex c = members[m];
        Time pc = periods.period(c);
        residue[c] = (residue[u] + klass + pu * slot) % pc;
        bool chained = u != view.root && klass == pu;
        phase[c] = chained ? 1 - phase[u] : 0;
      }
    }
  }

  Time global = 1;
  for (Vertex v = 0; v < n; ++v) global = std::max(global, periods.period(v));
  FiniteSchedule body;
  body.steps.reserve(static_cast<std::size_t>(2 * global));
  for (Time sigma = 0; sigma < 2 * global; ++sigma) {
    Time pre = sigma / 2;
    int b = static_cast<int>(sigma % 2);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < n; ++v) {
      if (v == view.root) continue;
      if (phase[v] != b) continue;
      if ((pre + 1) % periods.period(v) == residue[v]) {
        edges.emplace_back(view.parent[v], v);
      }
    }
    body.steps.push_back(Matching(std::move(edges)));
  }

  RegularSchedule out{PeriodicSchedule(std::move(body)),
                      std::vector<Time>(static_cast<std::size_t>(n)),
                      std::vector<Time>(static_cast<std::size_t>(n), 0), residue, phase};
  for (Vertex v = 0; v < n; ++v) {
    out.realized_period[v] = v == view.root ? 1 : 2 * periods.period(v);
    if (v != view.root) out.offset_bound[v] = 2 * offsets.offset[v];
  }
  return out;
}

Rat regular_latency_bound(const RootedInstance& instance, const std::vector<Time>& period,
                          const std::vector<Time>& offset) {
  TreeView view = tree_view(instance);
  Rat total(0);
  for (Vertex v = 0; v < instance.n; ++v) {
    total += Rat(period[static_cast<std::size_t>(v)]);
    for (Vertex u = v; u != view.root; u = view.parent[u]) {
      total += Rat(offset[static_cast<std::size_t>(u)]);
    }
  }
  return total / Rat(instance.n);
}

TreeApproxResult tree_avgrvc_approx(const RootedInstance& instance) {
  TreeView view = tree_view(instance);
  PeriodAssignment periods = period_assignment(instance);
  std::vector<int> rank = size_order_rank(view);
  OffsetAssignment offsets = offset_assignment(instance, periods, rank);
  RegularSchedule schedule = build_regular_schedule(instance, periods, offsets);
  std::vector<Time> doubled_period(static_cast<std::size_t>(instance.n));
  for (Vertex v = 0; v < instance.n; ++v) {
    doubled_period[v] = v == instance.root ? 1 : 2 * periods.period(v);
  }
  Rat bound = regular_latency_bound(instance, doubled_period, schedule.offset_bound);
  return TreeApproxResult{std::move(periods), std::move(offsets), std::move(schedule), bound};
}

namespace {

std::string ahu(const TreeView& view, Vertex v) {
  std::vector<std::string> parts;
  for (Vertex c : view.children[v]) parts.push_back(ahu(view, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  return out + ")";
}

}  // namespace

Rat gap_lower_bound(const RootedInstance& instance) {
  TreeView view = tree_view(instance);
  if (instance.n < 5) throw Error(ErrorKind::NotGapTree, "too small for a gap tree");
  int n = instance.n - 1;
  RootedInstance reference = gap_tree(n);
  if (ahu(view, instance.root) != ahu(tree_view(reference), reference.root)) {
    throw Error(ErrorKind::NotGapTree, "instance is not gap_tree(" + std::to_string(n) + ")");
  }
  Rat lambda(0);
  for (int size : gap_subtree_sizes(n)) {
    lambda += sqrt_lower(static_cast<std::uint64_t>(size));
  }
  return lambda * lambda / Rat(4 * static_cast<std::int64_t>(n));
}

std::vector<LocalPeriodCheck> local_period_lower_bound(const RootedTrace& trace, Time period,
                                                       Vertex root) {
  if (period < 1) throw Error(ErrorKind::WindowTooShort, "period must be >= 1");
  if (trace.horizon() < 3 * period) {
    throw Error(ErrorKind::WindowTooShort, "trace must cover [0, 3P]");
  }
  std::vector<LocalPeriodCheck> out(static_cast<std::size_t>(trace.n));
  for (Vertex v = 0; v < trace.n; ++v) {
    LocalPeriodCheck& check = out[static_cast<std::size_t>(v)];
    if (v == root) {
      check.vacuous = true;
      continue;
    }
    for (Time t = period; t < 2 * period; ++t) {
      if (trace.latency[static_cast<std::size_t>(t)][v] <=
          trace.latency[static_cast<std::size_t>(t - 1)][v]) {
        ++check.updates;
      }
      check.latency_sum += trace.latency[static_cast<std::size_t>(t)][v];
    }
    if (check.updates == 0) {
      check.vacuous = true;
    } else {
      check.holds = Rat(period * period, check.updates) <= Rat(2 * check.latency_sum);
    }
  }
  return out;
}

}  // namespace freshcast
