#include "freshcast/broadcast.hpp"

#include <algorithm>
#include <numeric>

namespace freshcast {

namespace {

/// Builds the schedule realizing given inform times: at step t the matching
/// holds every tree edge (parent(v), v) with inform[v] == t + 1. Distinct
/// child times per parent and inform[v] > inform[parent] keep steps matchings.
BroadcastResult realize(const RootedInstance& instance, const TreeView& view,
                        const std::vector<Time>& inform) {
  BroadcastResult result;
  result.delay = inform;
  result.makespan = *std::max_element(inform.begin(), inform.end());
  Time total = std::accumulate(inform.begin(), inform.end(), Time(0));
  result.average = Rat(total, instance.n);
  result.schedule.steps.resize(static_cast<std::size_t>(result.makespan));
  std::vector<std::vector<std::pair<Vertex, Vertex>>> buckets(
      static_cast<std::size_t>(result.makespan));
  for (Vertex v = 0; v < instance.n; ++v) {
    if (v == instance.root) continue;
    buckets[static_cast<std::size_t>(inform[v] - 1)].emplace_back(view.parent[v], v);
  }
  for (std::size_t t = 0; t < buckets.size(); ++t) {
    result.schedule.steps[t] = Matching(std::move(buckets[t]));
  }
  return result;
}

/// Inform times from per-node child orderings: a node informed at time s
/// calls its ordered children at s+1, s+2, ...
std::vector<Time> inform_times(const RootedInstance& instance, const TreeView& view,
                               const std::vector<std::vector<Vertex>>& order) {
  std::vector<Time> inform(static_cast<std::size_t>(instance.n), 0);
  for (Vertex v : view.bfs_order) {
    Time slot = inform[v];
    for (Vertex c : order[v]) inform[c] = ++slot;
  }
  return inform;
}

}  // namespace

BroadcastResult tree_min_broadcast(const RootedInstance& instance) {
  TreeView view = tree_view(instance);
  std::vector<Time> completion(static_cast<std::size_t>(instance.n), 0);
  std::vector<std::vector<Vertex>> order(static_cast<std::size_t>(instance.n));
  for (auto it = view.bfs_order.rbegin(); it != view.bfs_order.rend(); ++it) {
    Vertex v = *it;
    order[v] = view.children[v];
    std::sort(order[v].begin(), order[v].end(), [&](Vertex a, Vertex b) {
      if (completion[a] != completion[b]) return completion[a] > completion[b];
      return a < b;
    });
    Time best = 0;
    for (std::size_t i = 0; i < order[v].size(); ++i) {
      best = std::max(best, static_cast<Time>(i + 1) + completion[order[v][i]]);
    }
    completion[v] = best;
  }
  return realize(instance, view, inform_times(instance, view, order));
}

BroadcastResult abt_greedy(const RootedInstance& instance) {
  TreeView view = tree_view(instance);
  std::vector<std::vector<Vertex>> order(static_cast<std::size_t>(instance.n));
  for (Vertex v = 0; v < instance.n; ++v) {
    order[v] = view.children[v];
    std::sort(order[v].begin(), order[v].end(), [&](Vertex a, Vertex b) {
      if (view.subtree_size[a] != view.subtree_size[b]) {
        return view.subtree_size[a] > view.subtree_size[b];
      }
      return a < b;
    });
  }
  return realize(instance, view, inform_times(instance, view, order));
}

std::vector<Time> first_arrivals(const RootedInstance& instance, const FiniteSchedule& schedule) {
  validate(instance);
  validate_schedule(instance, schedule.steps);
  std::vector<Time> arrival(static_cast<std::size_t>(instance.n), kUnreached);
  arrival[instance.root] = 0;
  for (Time t = 0; t < schedule.length(); ++t) {
    for (const auto& [a, b] : schedule.steps[static_cast<std::size_t>(t)].edges()) {
      bool a_in = arrival[a] != kUnreached;
      bool b_in = arrival[b] != kUnreached;
      if (a_in && !b_in) arrival[b] = t + 1;
      if (b_in && !a_in) arrival[a] = t + 1;
    }
  }
  return arrival;
}

std::vector<Time> receive_times(const RootedInstance& instance, const FiniteSchedule& schedule) {
  validate(instance);
  validate_schedule(instance, schedule.steps);
  std::vector<Time> received(static_cast<std::size_t>(instance.n), kUnreached);
  received[instance.root] = 0;
  // informed[v] = set of sources whose information reached v, tracked as one
  // wavefront per source.
  std::vector<std::vector<char>> has(static_cast<std::size_t>(instance.n),
                                     std::vector<char>(static_cast<std::size_t>(instance.n), 0));
  for (Vertex v = 0; v < instance.n; ++v) has[v][v] = 1;
  for (Time t = 0; t < schedule.length(); ++t) {
    for (const auto& [a, b] : schedule.steps[static_cast<std::size_t>(t)].edges()) {
      for (Vertex s = 0; s < instance.n; ++s) {
        char merged = has[a][s] | has[b][s];
        has[a][s] = merged;
        has[b][s] = merged;
      }
    }
    for (Vertex s = 0; s < instance.n; ++s) {
      if (received[s] == kUnreached && has[instance.root][s]) received[s] = t + 1;
    }
  }
  return received;
}

}  // namespace freshcast
