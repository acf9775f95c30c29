#include "freshcast/json_io.hpp"

#include <ostream>

namespace freshcast {

using nlohmann::json;

json instance_to_json(const RootedInstance& instance) {
  json edges = json::array();
  for (const auto& [a, b] : instance.edges) edges.push_back({a, b});
  return json{{"n", instance.n}, {"root", instance.root}, {"edges", edges}};
}

RootedInstance instance_from_json(const json& j) {
  RootedInstance instance;
  instance.n = j.at("n").get<int>();
  instance.root = j.at("root").get<Vertex>();
  for (const auto& e : j.at("edges")) {
    instance.edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  }
  instance.is_tree = static_cast<int>(instance.edges.size()) == instance.n - 1;
  validate(instance);
  return instance;
}

namespace {

json steps_to_json(const std::vector<Matching>& steps) {
  json out = json::array();
  for (const auto& matching : steps) {
    json step = json::array();
    for (const auto& [a, b] : matching.edges()) step.push_back({a, b});
    out.push_back(step);
  }
  return out;
}

}  // namespace

json schedule_to_json(const FiniteSchedule& schedule) {
  return json{{"period", nullptr}, {"steps", steps_to_json(schedule.steps)}};
}

json schedule_to_json(const PeriodicSchedule& schedule) {
  return json{{"period", schedule.period()}, {"steps", steps_to_json(schedule.body().steps)}};
}

ScheduleFile schedule_from_json(const json& j) {
  ScheduleFile file;
  for (const auto& step : j.at("steps")) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : step) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    file.steps.steps.push_back(Matching(std::move(edges)));
  }
  if (j.contains("period") && !j.at("period").is_null()) {
    file.period = j.at("period").get<Time>();
    if (*file.period != file.steps.length()) {
      throw Error(ErrorKind::EmptySchedule, "period field must equal the step count");
    }
  }
  return file;
}

json rat_to_json(const Rat& value) {
  return json{{"num", value.num()}, {"den", value.den()}, {"decimal", value.to_double()}};
}

void write_trace_csv(std::ostream& out, const RootedTrace& trace) {
  out << "t,v,latency\n";
  for (Time t = 0; t <= trace.horizon(); ++t) {
    for (Vertex v = 0; v < trace.n; ++v) {
      out << t << ',' << v << ',' << trace.latency[static_cast<std::size_t>(t)][v] << '\n';
    }
  }
}

void write_trace_csv(std::ostream& out, const AllPairsTrace& trace) {
  out << "t,v,u,latency\n";
  for (Time t = 0; t <= trace.horizon(); ++t) {
    for (Vertex v = 0; v < trace.n; ++v) {
      for (Vertex u = 0; u < trace.n; ++u) {
        out << t << ',' << v << ',' << u << ',' << trace.at(t, v, u) << '\n';
      }
    }
  }
}

}  // namespace freshcast
