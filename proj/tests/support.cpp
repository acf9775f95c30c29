#include "support.hpp"

#include <algorithm>
#include <random>

namespace freshcast::testsupport {

Time path_search_latency(const RootedInstance& instance, const std::vector<Matching>& steps,
                         Time t, Vertex target, Vertex source) {
  Time best = 0;
  for (Time start = t; start >= 1; --start) {
    std::vector<char> informed(static_cast<std::size_t>(instance.n), 0);
    informed[source] = 1;
    for (Time tau = start; tau < t; ++tau) {
      if (tau >= static_cast<Time>(steps.size())) break;
      std::vector<char> next = informed;
      for (const auto& [a, b] : steps[static_cast<std::size_t>(tau)].edges()) {
        if (informed[a]) next[b] = 1;
        if (informed[b]) next[a] = 1;
      }
      informed = next;
    }
    if (informed[target]) {
      best = start;
      break;
    }
  }
  return t - best;
}

Matching random_maximal_matching(const RootedInstance& instance, std::uint64_t key) {
  std::mt19937_64 rng(key);
  std::vector<std::size_t> order(instance.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> used(static_cast<std::size_t>(instance.n), 0);
  std::vector<std::pair<Vertex, Vertex>> picked;
  for (std::size_t i : order) {
    auto [a, b] = instance.edges[i];
    if (used[a] || used[b]) continue;
    used[a] = used[b] = 1;
    picked.push_back(instance.edges[i]);
  }
  return Matching(std::move(picked));
}

ScheduleStream random_maximal_stream(const RootedInstance& instance, std::uint64_t seed) {
  RootedInstance copy = instance;
  return ScheduleStream(
      [copy, seed](Time t) {
        std::uint64_t key = seed ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(t) + 1));
        return random_maximal_matching(copy, key);
      },
      std::nullopt);
}

FiniteSchedule random_matching_body(const RootedInstance& instance, Time period,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FiniteSchedule body;
  for (Time t = 0; t < period; ++t) {
    std::uint64_t roll = rng() % 4;
    if (roll == 0 && !instance.edges.empty()) {
      body.steps.push_back(Matching({instance.edges[rng() % instance.edges.size()]}));
    } else if (roll == 1) {
      body.steps.push_back(Matching());
    } else {
      body.steps.push_back(random_maximal_matching(instance, rng()));
    }
  }
  return body;
}

}  // namespace freshcast::testsupport
