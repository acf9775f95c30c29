#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "freshcast/instance.hpp"
#include "freshcast/rational.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/simulate.hpp"

namespace freshcast {

nlohmann::json instance_to_json(const RootedInstance& instance);
RootedInstance instance_from_json(const nlohmann::json& j);

/// {"period": int|null, "steps": [[[u,v],...], ...]}
nlohmann::json schedule_to_json(const FiniteSchedule& schedule);
nlohmann::json schedule_to_json(const PeriodicSchedule& schedule);
struct ScheduleFile {
  FiniteSchedule steps;
  std::optional<Time> period;
};
ScheduleFile schedule_from_json(const nlohmann::json& j);

nlohmann::json rat_to_json(const Rat& value);

/// CSV rows `t,v,latency` / `t,v,u,latency`, header included.
void write_trace_csv(std::ostream& out, const RootedTrace& trace);
void write_trace_csv(std::ostream& out, const AllPairsTrace& trace);

}  // namespace freshcast
