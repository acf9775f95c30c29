#include "freshcast/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

namespace freshcast {

namespace {

constexpr int kMaxOracleVertices = 8;

void enforce_size(const RootedInstance& instance) {
  if (instance.n > kMaxOracleVertices) {
    throw Error(ErrorKind::TooLarge, "oracle accepts n <= " + std::to_string(kMaxOracleVertices));
  }
}

using Mask = unsigned;

/// Nonempty matchings over boundary edges (informed -> uninformed), reported
/// as the mask of newly informed vertices plus the edges used.
void boundary_extensions(const std::vector<std::pair<Vertex, Vertex>>& edges, Mask informed,
                         std::size_t index, Mask used, Mask gained,
                         std::vector<std::pair<Vertex, Vertex>>& chosen,
                         const std::function<void(Mask, const std::vector<std::pair<Vertex, Vertex>>&)>& emit) {
  if (index == edges.size()) {
    if (gained != 0) emit(gained, chosen);
    return;
  }
  boundary_extensions(edges, informed, index + 1, used, gained, chosen, emit);
  auto [a, b] = edges[index];
  bool a_in = informed & (1u << a);
  bool b_in = informed & (1u << b);
  if (a_in == b_in) return;  // only informing calls matter for delays
  Vertex target = a_in ? b : a;
  Vertex source = a_in ? a : b;
  if ((used & (1u << target)) || (used & (1u << source))) return;
  chosen.push_back(edges[index]);
  boundary_extensions(edges, informed, index + 1, used | (1u << a) | (1u << b),
                      gained | (1u << target), chosen, emit);
  chosen.pop_back();
}

struct BroadcastSearch {
  const RootedInstance& instance;
  Mask full;
  // memo value: best remaining cost; move: chosen matching
  std::map<Mask, std::int64_t> memo;
  std::map<Mask, std::vector<std::pair<Vertex, Vertex>>> move;
  bool average;  // false: min-time recurrence, true: total-delay recurrence

  std::int64_t solve(Mask informed) {
    if (informed == full) return 0;
    auto it = memo.find(informed);
    if (it != memo.end()) return it->second;
    std::int64_t best = INT64_MAX;
    std::vector<std::pair<Vertex, Vertex>> best_move;
    std::vector<std::pair<Vertex, Vertex>> chosen;
    boundary_extensions(
        instance.edges, informed, 0, 0, 0, chosen,
        [&](Mask gained, const std::vector<std::pair<Vertex, Vertex>>& edges) {
          std::int64_t tail = solve(informed | gained);
          if (tail == INT64_MAX) return;
          std::int64_t remaining = instance.n - __builtin_popcount(informed);
          std::int64_t cost = average ? remaining + tail : 1 + tail;
          if (cost < best || (cost == best && edges < best_move)) {
            best = cost;
            best_move = edges;
          }
        });
    memo[informed] = best;
    move[informed] = best_move;
    return best;
  }

  FiniteSchedule witness() {
    FiniteSchedule schedule;
    Mask informed = 1u << instance.root;
    while (informed != full) {
      const auto& edges = move[informed];
      schedule.steps.push_back(Matching(edges));
      for (auto [a, b] : edges) informed |= (1u << a) | (1u << b);
    }
    return schedule;
  }
};

}  // namespace

OracleResult oracle_broadcast(const RootedInstance& instance, BroadcastObjective kind) {
  validate(instance);
  enforce_size(instance);
  BroadcastSearch search{instance, (1u << instance.n) - 1, {}, {}, kind == BroadcastObjective::Abt};
  std::int64_t value = search.solve(1u << instance.root);
  if (value == INT64_MAX) {
    throw Error(ErrorKind::Disconnected, "no schedule informs every vertex");
  }
  OracleResult result;
  result.value = kind == BroadcastObjective::Abt ? Rat(value, instance.n) : Rat(value);
  result.witness = search.witness();
  return result;
}

std::vector<Matching> maximal_matchings(const RootedInstance& instance) {
  validate(instance);
  const auto& edges = instance.edges;
  std::vector<Matching> out;
  std::size_t count = std::size_t(1) << edges.size();
  for (std::size_t set = 0; set < count; ++set) {
    Mask used = 0;
    bool ok = true;
    for (std::size_t i = 0; i < edges.size() && ok; ++i) {
      if (!(set >> i & 1)) continue;
      Mask pair = (1u << edges[i].first) | (1u << edges[i].second);
      if (used & pair) ok = false;
      used |= pair;
    }
    if (!ok) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < edges.size() && maximal; ++i) {
      if (set >> i & 1) continue;
      Mask pair = (1u << edges[i].first) | (1u << edges[i].second);
      if (!(used & pair)) maximal = false;
    }
    if (!maximal) continue;
    std::vector<std::pair<Vertex, Vertex>> chosen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (set >> i & 1) chosen.push_back(edges[i]);
    }
    out.push_back(Matching(std::move(chosen)));
  }
  std::sort(out.begin(), out.end(),
            [](const Matching& a, const Matching& b) { return a.edges() < b.edges(); });
  return out;
}

namespace {

bool is_min_rotation(const std::vector<int>& body) {
  for (std::size_t s = 1; s < body.size(); ++s) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      int rotated = body[(i + s) % body.size()];
      if (rotated < body[i]) return false;
      if (rotated > body[i]) break;
    }
  }
  return true;
}

}  // namespace

OracleResult oracle_rvc(const RootedInstance& instance, RvcObjective kind, Time max_period) {
  validate(instance);
  enforce_size(instance);
  if (max_period <= 0) max_period = std::min<Time>(instance.n + 1, 8);
  if (max_period > 8) throw Error(ErrorKind::TooLarge, "oracle accepts max_period <= 8");

  std::vector<Matching> steps = maximal_matchings(instance);
  const int n = instance.n;
  const int m = static_cast<int>(steps.size());

  Rat best;
  bool has_best = false;
  std::vector<int> best_body;

  std::vector<Time> view(static_cast<std::size_t>(n));
  std::vector<std::vector<Time>> lat;

  for (Time period = 1; period <= max_period; ++period) {
    std::vector<int> body(static_cast<std::size_t>(period), 0);
    while (true) {
      if (is_min_rotation(body)) {
        // simulate 4P steps; objective over [0, 3P]; periodicity on [2P, 3P]
        Time horizon = 4 * period;
        std::fill(view.begin(), view.end(), Time(0));
        lat.assign(static_cast<std::size_t>(horizon) + 1,
                   std::vector<Time>(static_cast<std::size_t>(n)));
        Time running_max = 0;  // linf or l1 depending on kind
        bool pruned = false;
        for (Time t = 0; t <= horizon; ++t) {
          if (t > 0) {
            const Matching& matching = steps[static_cast<std::size_t>(body[(t - 1) % period])];
            for (const auto& [a, b] : matching.edges()) {
              Time merged = std::max(view[a], view[b]);
              view[a] = merged;
              view[b] = merged;
            }
            view[instance.root] = t;
          }
          Time norm = 0;
          for (int v = 0; v < n; ++v) {
            Time l = t - view[v];
            lat[static_cast<std::size_t>(t)][v] = l;
            if (kind == RvcObjective::Max) {
              norm = std::max(norm, l);
            } else {
              norm += l;
            }
          }
          if (t <= 3 * period) {
            running_max = std::max(running_max, norm);
            Rat current = kind == RvcObjective::Max ? Rat(running_max) : Rat(running_max, n);
            if (has_best && best <= current) {
              pruned = true;
              break;
            }
          }
        }
        if (!pruned) {
          bool periodic = true;
          for (Time t = 2 * period; t + period <= horizon && periodic; ++t) {
            periodic = lat[static_cast<std::size_t>(t + period)] == lat[static_cast<std::size_t>(t)];
          }
          if (periodic) {
            Rat value = kind == RvcObjective::Max ? Rat(running_max) : Rat(running_max, n);
            if (!has_best || value < best) {
              best = value;
              has_best = true;
              best_body = body;
            }
          }
        }
      }
      // odometer over matching indices
      int pos = static_cast<int>(period) - 1;
      while (pos >= 0 && body[static_cast<std::size_t>(pos)] == m - 1) {
        body[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++body[static_cast<std::size_t>(pos)];
    }
  }
  if (!has_best) {
    throw Error(ErrorKind::Disconnected, "no periodic schedule stabilizes within the period cap");
  }
  OracleResult result;
  result.value = best;
  for (int idx : best_body) result.witness.steps.push_back(steps[static_cast<std::size_t>(idx)]);
  result.period = static_cast<Time>(best_body.size());
  result.max_period = max_period;
  return result;
}

namespace {

int regperi_exponent_cap(int n) {
  int ceil_log = 0;
  while ((1 << ceil_log) < n) ++ceil_log;
  return 2 * ceil_log + 1;
}

}  // namespace

RegPeriodsOracle oracle_regperi(const RootedInstance& instance) {
  TreeView view = tree_view(instance);
  enforce_size(instance);
  const int n = instance.n;
  const int emax = regperi_exponent_cap(n);
  const std::int64_t budget = std::int64_t(1) << emax;  // units of 2^-emax

  // g[v][j] = min sum of periods in T_v with exponent(v) = j; choice tables
  // for witness extraction.
  std::vector<std::vector<std::int64_t>> g(static_cast<std::size_t>(n),
                                           std::vector<std::int64_t>(emax + 1, INT64_MAX));
  std::vector<std::vector<std::vector<int>>> pick(
      static_cast<std::size_t>(n), std::vector<std::vector<int>>(emax + 1));

  for (auto it = view.bfs_order.rbegin(); it != view.bfs_order.rend(); ++it) {
    Vertex v = *it;
    const auto& kids = view.children[v];
    for (int j = 0; j <= emax; ++j) {
      if (kids.empty()) {
        g[v][j] = std::int64_t(1) << j;
        continue;
      }
      // knapsack over children: cost 2^(emax-j') units, weight g[child][j']
      std::vector<std::vector<std::int64_t>> dp(
          kids.size() + 1, std::vector<std::int64_t>(static_cast<std::size_t>(budget) + 1,
                                                     INT64_MAX));
      std::vector<std::vector<std::vector<int>>> choice(
          kids.size() + 1, std::vector<std::vector<int>>(static_cast<std::size_t>(budget) + 1));
      for (std::int64_t b = 0; b <= budget; ++b) dp[0][static_cast<std::size_t>(b)] = 0;
      for (std::size_t k = 0; k < kids.size(); ++k) {
        for (std::int64_t b = 0; b <= budget; ++b) {
          for (int jc = j; jc <= emax; ++jc) {
            std::int64_t units = std::int64_t(1) << (emax - jc);
            if (units > b) continue;
            std::int64_t sub = g[kids[k]][jc];
            std::int64_t prev = dp[k][static_cast<std::size_t>(b - units)];
            if (sub == INT64_MAX || prev == INT64_MAX) continue;
            if (prev + sub < dp[k + 1][static_cast<std::size_t>(b)]) {
              dp[k + 1][static_cast<std::size_t>(b)] = prev + sub;
              choice[k + 1][static_cast<std::size_t>(b)] = choice[k][static_cast<std::size_t>(b - units)];
              choice[k + 1][static_cast<std::size_t>(b)].push_back(jc);
            }
          }
        }
      }
      if (dp[kids.size()][static_cast<std::size_t>(budget)] == INT64_MAX) continue;
      g[v][j] = (std::int64_t(1) << j) + dp[kids.size()][static_cast<std::size_t>(budget)];
      pick[v][j] = choice[kids.size()][static_cast<std::size_t>(budget)];
    }
  }

  RegPeriodsOracle result;
  result.total = g[view.root][0];
  result.exponents.assign(static_cast<std::size_t>(n), 0);
  // walk down assigning chosen exponents
  std::vector<std::pair<Vertex, int>> stack{{view.root, 0}};
  while (!stack.empty()) {
    auto [v, j] = stack.back();
    stack.pop_back();
    result.exponents[v] = j;
    const auto& kids = view.children[v];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      stack.emplace_back(kids[k], pick[v][j][k]);
    }
  }
  return result;
}

namespace {

/// AHU canonical encoding of a rooted tree.
std::string ahu_code(const TreeView& view, Vertex v) {
  std::vector<std::string> parts;
  for (Vertex c : view.children[v]) parts.push_back(ahu_code(view, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

void parent_arrays(int n, int index, std::vector<int>& parent,
                   const std::function<void(const std::vector<int>&)>& emit) {
  if (index == n) {
    emit(parent);
    return;
  }
  for (int p = 0; p < index; ++p) {
    parent[static_cast<std::size_t>(index)] = p;
    parent_arrays(n, index + 1, parent, emit);
  }
}

}  // namespace

std::vector<RootedInstance> all_rooted_trees(int n) {
  if (n < 1) throw Error(ErrorKind::TooSmall, "need n >= 1");
  std::vector<RootedInstance> out;
  std::map<std::string, bool> seen;
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  parent_arrays(n, 1, parent, [&](const std::vector<int>& parents) {
    RootedInstance instance;
    instance.n = n;
    instance.root = 0;
    instance.is_tree = true;
    for (int v = 1; v < n; ++v) instance.edges.emplace_back(parents[static_cast<std::size_t>(v)], v);
    TreeView view = tree_view(instance);
    std::string code = ahu_code(view, instance.root);
    if (!seen.emplace(code, true).second) return;
    out.push_back(std::move(instance));
  });
  return out;
}

}  // namespace freshcast
