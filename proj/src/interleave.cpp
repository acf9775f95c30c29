#include "freshcast/interleave.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>

namespace freshcast {

WeightedArborescence build_arborescence(const RootedInstance& instance,
                                        const BroadcastResult& broadcast) {
  validate(instance);
  validate_schedule(instance, broadcast.schedule.steps);
  WeightedArborescence tree;
  tree.root = instance.root;
  tree.parent.assign(static_cast<std::size_t>(instance.n), -1);
  tree.weight.assign(static_cast<std::size_t>(instance.n), 0);

  std::vector<Time> arrival(static_cast<std::size_t>(instance.n), kUnreached);
  arrival[instance.root] = 0;
  for (Time t = 0; t < broadcast.schedule.length(); ++t) {
    for (const auto& [a, b] : broadcast.schedule.steps[static_cast<std::size_t>(t)].edges()) {
      bool a_in = arrival[a] != kUnreached;
      bool b_in = arrival[b] != kUnreached;
      if (a_in && !b_in) {
        arrival[b] = t + 1;
        tree.parent[b] = a;
      } else if (b_in && !a_in) {
        arrival[a] = t + 1;
        tree.parent[a] = b;
      }
    }
  }
  for (Vertex v = 0; v < instance.n; ++v) {
    if (arrival[v] == kUnreached) {
      throw Error(ErrorKind::NotABroadcast, "vertex " + std::to_string(v) + " never informed");
    }
    if (v != instance.root) {
      tree.weight[v] = arrival[v] - arrival[tree.parent[v]];
      tree.max_weight = std::max(tree.max_weight, tree.weight[v]);
    }
  }
  return tree;
}

InterleavePlan::InterleavePlan(int t) : item_count(t) {
  if (t < 1) throw Error(ErrorKind::TooSmall, "need at least one item");
  chunk_length = 1;
  while ((1 << chunk_length) <= t) ++chunk_length;  // floor(log2 t) + 1
}

int InterleavePlan::slot_item(Time slot) const {
  Time chunk = slot / chunk_length;
  int pos = static_cast<int>(slot % chunk_length);  // k - 1
  Time modulus = Time(1) << pos;
  Time index = modulus + chunk % modulus;
  return index <= item_count ? static_cast<int>(index) : 0;
}

Time InterleavePlan::period() const {
  return static_cast<Time>(chunk_length) * (Time(1) << (chunk_length - 1));
}

namespace {

/// Splits one weight class into two matchings by alternating along each of
/// its vertex-disjoint paths.
std::pair<Matching, Matching> split_class(const std::vector<std::pair<Vertex, Vertex>>& arcs) {
  std::map<Vertex, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    incident[arcs[i].first].push_back(i);
    incident[arcs[i].second].push_back(i);
  }
  std::vector<char> used(arcs.size(), 0);
  std::vector<std::pair<Vertex, Vertex>> even, odd;
  auto walk = [&](Vertex start, std::size_t first_arc) {
    Vertex at = start;
    std::size_t arc = first_arc;
    int parity = 0;
    while (true) {
      used[arc] = 1;
      (parity == 0 ? even : odd).push_back(arcs[arc]);
      Vertex next = arcs[arc].first == at ? arcs[arc].second : arcs[arc].first;
      parity ^= 1;
      std::size_t continuation = arcs.size();
      for (std::size_t cand : incident[next]) {
        if (!used[cand]) continuation = cand;
      }
      if (continuation == arcs.size()) break;
      at = next;
      arc = continuation;
    }
  };
  // every component is a path: start walks at degree-1 endpoints
  for (const auto& [v, list] : incident) {
    if (list.size() == 1 && !used[list.front()]) walk(v, list.front());
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (!used[i]) throw Error(ErrorKind::Internal, "weight class is not a path collection");
  }
  return {Matching(std::move(even)), Matching(std::move(odd))};
}

}  // namespace

ClockToRootResult clock_to_root(const RootedInstance& instance, const BroadcastResult& broadcast) {
  ClockToRootResult result{ScheduleStream([](Time) { return Matching(); }, 1),
                           broadcast,
                           build_arborescence(instance, broadcast),
                           broadcast.schedule.length(),
                           0,
                           0,
                           Rat(0),
                           Rat(0)};
  const WeightedArborescence& tree = result.arborescence;
  result.max_weight = tree.max_weight;

  // classes above the largest realized weight are empty; scheduling them
  // would only dilute the stream
  int classes = static_cast<int>(std::max<Time>(tree.max_weight, 1));
  auto halves = std::make_shared<std::vector<std::pair<Matching, Matching>>>();
  halves->resize(static_cast<std::size_t>(classes) + 1);
  std::vector<std::vector<std::pair<Vertex, Vertex>>> arcs(static_cast<std::size_t>(classes) + 1);
  for (Vertex v = 0; v < instance.n; ++v) {
    if (v != instance.root) arcs[static_cast<std::size_t>(tree.weight[v])].emplace_back(tree.parent[v], v);
  }
  for (int i = 1; i <= classes; ++i) {
    (*halves)[static_cast<std::size_t>(i)] = split_class(arcs[static_cast<std::size_t>(i)]);
  }

  auto plan = std::make_shared<InterleavePlan>(classes);
  result.chunk_length = plan->chunk_length;
  result.stream = ScheduleStream(
      [plan, halves](Time step) {
        int item = plan->slot_item(step / 2);
        if (item == 0) return Matching();
        const auto& pair = (*halves)[static_cast<std::size_t>(item)];
        return step % 2 == 0 ? pair.first : pair.second;
      },
      2 * plan->period());

  Rat log_t_max = Rat::max(Rat(1), log2_lower(static_cast<std::uint64_t>(std::max<Time>(result.t_max, 1))));
  result.bound_rooted = Rat(2) * log_t_max * broadcast.average;
  result.bound_allpairs = Rat(4) * log_t_max * broadcast.average;
  return result;
}

ClockToRootResult avgrvc_from_abt(const RootedInstance& instance) {
  return clock_to_root(instance, abt_greedy(instance));
}

std::vector<Time> sample_times(Time horizon, int samples) {
  std::vector<Time> out;
  if (samples < 1) return out;
  if (samples == 1 || horizon == 0) return {horizon};
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    out.push_back(horizon * i / (samples - 1));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundReport clock_to_root_eval(const RootedInstance& instance, const ClockToRootResult& stream,
                               Time horizon, int samples) {
  RootedTrace trace = simulate(instance, stream.stream, horizon);
  Rat achieved(0);
  for (Time t : sample_times(horizon, samples)) {
    achieved = Rat::max(achieved, Rat(rooted_l1(trace, t), instance.n));
  }
  return BoundReport{achieved, stream.bound_rooted, achieved <= stream.bound_rooted};
}

BoundReport clock_to_root_allpairs_eval(const RootedInstance& instance,
                                        const ClockToRootResult& stream, Time horizon,
                                        int samples) {
  AllPairsTrace trace = simulate_allpairs(instance, stream.stream, horizon);
  Rat achieved(0);
  for (Time t : sample_times(horizon, samples)) {
    achieved = Rat::max(achieved, Rat(allpairs_l1(trace, t), static_cast<Time>(instance.n) * instance.n));
  }
  return BoundReport{achieved, stream.bound_allpairs, achieved <= stream.bound_allpairs};
}

}  // namespace freshcast
