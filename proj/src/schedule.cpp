#include "freshcast/schedule.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <string>

namespace freshcast {

Matching::Matching(std::vector<std::pair<Vertex, Vertex>> edges) : edges_(std::move(edges)) {
  for (auto& [a, b] : edges_) {
    if (a == b) throw Error(ErrorKind::InvalidMatching, "self-call at " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  std::set<Vertex> used;
  for (const auto& [a, b] : edges_) {
    if (!used.insert(a).second) {
      throw Error(ErrorKind::InvalidMatching, "vertex " + std::to_string(a) + " in two calls");
    }
    if (!used.insert(b).second) {
      throw Error(ErrorKind::InvalidMatching, "vertex " + std::to_string(b) + " in two calls");
    }
  }
}

PeriodicSchedule::PeriodicSchedule(FiniteSchedule body) : body_(std::move(body)) {
  if (body_.steps.empty()) throw Error(ErrorKind::EmptySchedule, "period must be >= 1");
}

FiniteSchedule ScheduleStream::prefix(Time length) const {
  FiniteSchedule out;
  out.steps.reserve(static_cast<std::size_t>(length));
  for (Time t = 0; t < length; ++t) out.steps.push_back(step(t));
  return out;
}

ScheduleStream ScheduleStream::from_finite(FiniteSchedule schedule) {
  auto body = std::make_shared<FiniteSchedule>(std::move(schedule));
  return ScheduleStream(
      [body](Time t) {
        if (t < body->length()) return body->steps[static_cast<std::size_t>(t)];
        return Matching();
      },
      std::nullopt);
}

ScheduleStream ScheduleStream::from_periodic(PeriodicSchedule schedule) {
  auto body = std::make_shared<PeriodicSchedule>(std::move(schedule));
  return ScheduleStream([body](Time t) { return body->step(t); }, body->period());
}

void validate_schedule(const RootedInstance& instance, const std::vector<Matching>& prefix) {
  std::set<std::pair<Vertex, Vertex>> known;
  for (const auto& [a, b] : instance.edges) known.insert(std::minmax(a, b));
  for (std::size_t t = 0; t < prefix.size(); ++t) {
    std::set<Vertex> used;
    for (const auto& [a, b] : prefix[t].edges()) {
      if (known.find(std::minmax(a, b)) == known.end()) {
        throw Error(ErrorKind::UnknownEdge, "step " + std::to_string(t) + ": edge (" +
                                                std::to_string(a) + "," + std::to_string(b) +
                                                ") not in instance");
      }
      for (Vertex v : {a, b}) {
        if (!used.insert(v).second) {
          throw Error(ErrorKind::VertexClash, "step " + std::to_string(t) + ": vertex " +
                                                  std::to_string(v) + " in two calls");
        }
      }
    }
  }
}

FiniteSchedule concat(const FiniteSchedule& a, const FiniteSchedule& b) {
  FiniteSchedule out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

FiniteSchedule reverse(const FiniteSchedule& schedule) {
  FiniteSchedule out = schedule;
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

PeriodicSchedule repeat(const FiniteSchedule& schedule) { return PeriodicSchedule(schedule); }

}  // namespace freshcast
