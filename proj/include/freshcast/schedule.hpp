#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "freshcast/instance.hpp"
#include "freshcast/types.hpp"

namespace freshcast {

/// One time step of telephone calls. Edges are normalized (u < v, sorted) and
/// no vertex appears twice.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<std::pair<Vertex, Vertex>> edges);

  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }
  std::size_t size() const { return edges_.size(); }

  bool operator==(const Matching& o) const { return edges_ == o.edges_; }

 private:
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

struct FiniteSchedule {
  std::vector<Matching> steps;

  Time length() const { return static_cast<Time>(steps.size()); }
};

/// Infinite repetition of a finite body; step(t) = body.steps[t mod period].
class PeriodicSchedule {
 public:
  explicit PeriodicSchedule(FiniteSchedule body);

  Time period() const { return body_.length(); }
  const FiniteSchedule& body() const { return body_; }
  const Matching& step(Time t) const { return body_.steps[t % period()]; }

 private:
  FiniteSchedule body_;
};

/// Lazily generated infinite schedule; the generator must be pure in t so
/// traces can be re-run and windows re-examined.
class ScheduleStream {
 public:
  ScheduleStream(std::function<Matching(Time)> generator, std::optional<Time> period = {})
      : generator_(std::move(generator)), period_(period) {}

  Matching step(Time t) const { return generator_(t); }
  std::optional<Time> period() const { return period_; }

  FiniteSchedule prefix(Time length) const;

  static ScheduleStream from_finite(FiniteSchedule schedule);  // idle after the end
  static ScheduleStream from_periodic(PeriodicSchedule schedule);

 private:
  std::function<Matching(Time)> generator_;
  std::optional<Time> period_;
};

/// Throws VertexClash(t, v) / UnknownEdge(t, e) on the first violated step.
void validate_schedule(const RootedInstance& instance, const std::vector<Matching>& prefix);

FiniteSchedule concat(const FiniteSchedule& a, const FiniteSchedule& b);
FiniteSchedule reverse(const FiniteSchedule& schedule);
PeriodicSchedule repeat(const FiniteSchedule& schedule);  // EmptySchedule on length 0

}  // namespace freshcast
