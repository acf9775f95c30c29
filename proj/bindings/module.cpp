#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "freshcast/broadcast.hpp"
#include "freshcast/instance.hpp"
#include "freshcast/interleave.hpp"
#include "freshcast/oracle.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/simulate.hpp"
#include "freshcast/transforms.hpp"
#include "freshcast/tree_approx.hpp"

namespace py = pybind11;
using namespace freshcast;

namespace {

using Steps = std::vector<std::vector<std::pair<Vertex, Vertex>>>;

FiniteSchedule to_schedule(const Steps& steps) {
  FiniteSchedule out;
  for (const auto& step : steps) out.steps.push_back(Matching(step));
  return out;
}

Steps from_schedule(const FiniteSchedule& schedule) {
  Steps out;
  for (const auto& matching : schedule.steps) out.push_back(matching.edges());
  return out;
}

ScheduleStream stream_of(const Steps& steps, bool periodic) {
  FiniteSchedule schedule = to_schedule(steps);
  return periodic ? ScheduleStream::from_periodic(PeriodicSchedule(std::move(schedule)))
                  : ScheduleStream::from_finite(std::move(schedule));
}

ObjectiveSpec spec_of(const std::string& kind, int p, Time window) {
  ObjectiveSpec spec;
  if (kind == "max") spec.kind = ObjectiveKind::MaxRooted;
  else if (kind == "avg") spec.kind = ObjectiveKind::AvgRooted;
  else if (kind == "lp") { spec.kind = ObjectiveKind::LpRooted; spec.p = p; }
  else if (kind == "ap-avg") spec.kind = ObjectiveKind::AllPairsAvg;
  else if (kind == "ap-max") spec.kind = ObjectiveKind::AllPairsMax;
  else if (kind == "time-avg") { spec.kind = ObjectiveKind::TimeAvg; spec.window = window; }
  else throw Error(ErrorKind::Internal, "unknown objective kind " + kind);
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Telephone-model information freshness: simulation, schedule synthesis and oracles";

  py::register_exception<Error>(m, "FreshcastError");

  py::class_<Rat>(m, "Rat")
      .def(py::init<std::int64_t>())
      .def(py::init<std::int64_t, std::int64_t>())
      .def_property_readonly("num", &Rat::num)
      .def_property_readonly("den", &Rat::den)
      .def("__float__", &Rat::to_double)
      .def("__repr__", [](const Rat& r) { return "Rat(" + r.to_string() + ")"; })
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self)
      .def(py::self > py::self)
      .def(py::self >= py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self);

  py::class_<RootedInstance>(m, "Instance")
      .def(py::init([](int n, Vertex root, std::vector<std::pair<Vertex, Vertex>> edges) {
             RootedInstance instance{n, root, std::move(edges), false};
             instance.is_tree = static_cast<int>(instance.edges.size()) == n - 1;
             validate(instance);
             return instance;
           }),
           py::arg("n"), py::arg("root"), py::arg("edges"))
      .def_readonly("n", &RootedInstance::n)
      .def_readonly("root", &RootedInstance::root)
      .def_readonly("edges", &RootedInstance::edges)
      .def_readonly("is_tree", &RootedInstance::is_tree);

  m.def("validate", &validate);
  m.def("star", &star, py::arg("leaves"));
  m.def("path", &path, py::arg("vertices"));
  m.def("complete_binary_tree", &complete_binary_tree, py::arg("depth"));
  m.def("random_tree", &random_tree, py::arg("vertices"), py::arg("seed"));
  m.def("gap_tree", &gap_tree, py::arg("n"));
  m.def("gap_subtree_sizes", &gap_subtree_sizes, py::arg("n"));

  m.def("validate_schedule",
        [](const RootedInstance& instance, const Steps& steps) {
          validate_schedule(instance, to_schedule(steps).steps);
        });

  m.def(
      "simulate",
      [](const RootedInstance& instance, const Steps& steps, Time horizon, bool periodic) {
        return simulate(instance, stream_of(steps, periodic), horizon).latency;
      },
      py::arg("instance"), py::arg("steps"), py::arg("horizon"), py::arg("periodic") = false,
      "Rooted latency vectors for t = 0..horizon");

  m.def(
      "simulate_allpairs",
      [](const RootedInstance& instance, const Steps& steps, Time horizon, bool periodic) {
        return simulate_allpairs(instance, stream_of(steps, periodic), horizon).latency;
      },
      py::arg("instance"), py::arg("steps"), py::arg("horizon"), py::arg("periodic") = false,
      "Flattened latency matrices (v*n+u) for t = 0..horizon");

  m.def(
      "objective",
      [](const RootedInstance& instance, const Steps& steps, Time horizon, bool periodic,
         const std::string& kind, int p, Time window) {
        ObjectiveSpec spec = spec_of(kind, p, window);
        if (spec.kind == ObjectiveKind::AllPairsAvg || spec.kind == ObjectiveKind::AllPairsMax) {
          return objective(simulate_allpairs(instance, stream_of(steps, periodic), horizon), spec);
        }
        return objective(simulate(instance, stream_of(steps, periodic), horizon), spec);
      },
      py::arg("instance"), py::arg("steps"), py::arg("horizon"), py::arg("periodic") = false,
      py::arg("kind") = "max", py::arg("p") = 2, py::arg("window") = 1);

  m.def(
      "supremum_objective",
      [](const RootedInstance& instance, const Steps& body, const std::string& kind, int p,
         Time window) {
        return supremum_objective(instance, PeriodicSchedule(to_schedule(body)),
                                  spec_of(kind, p, window));
      },
      py::arg("instance"), py::arg("body"), py::arg("kind") = "max", py::arg("p") = 2,
      py::arg("window") = 1, "Exact supremum over all time for a periodic schedule");

  m.def("detect_periodicity",
        [](const RootedInstance& instance, const Steps& steps, Time horizon, bool periodic,
           Time period) {
          return detect_periodicity(simulate(instance, stream_of(steps, periodic), horizon),
                                    period);
        });

  py::class_<BroadcastResult>(m, "BroadcastResult")
      .def_property_readonly("steps",
                             [](const BroadcastResult& r) { return from_schedule(r.schedule); })
      .def_readonly("delays", &BroadcastResult::delay)
      .def_readonly("makespan", &BroadcastResult::makespan)
      .def_readonly("average", &BroadcastResult::average);

  m.def("tree_min_broadcast", &tree_min_broadcast);
  m.def("abt_greedy", &abt_greedy);
  m.def("first_arrivals", [](const RootedInstance& instance, const Steps& steps) {
    return first_arrivals(instance, to_schedule(steps));
  });
  m.def("receive_times", [](const RootedInstance& instance, const Steps& steps) {
    return receive_times(instance, to_schedule(steps));
  });

  m.def(
      "euler_tour_schedule",
      [](const RootedInstance& instance) {
        return from_schedule(euler_tour_schedule(instance).body());
      },
      "Periodic body of the one-edge-at-a-time Euler tour");

  m.def("truncate_and_repeat",
        [](const RootedInstance& instance, const Steps& steps, bool periodic, Time bound) {
          return from_schedule(
              truncate_and_repeat(instance, stream_of(steps, periodic), bound).body());
        });

  m.def("maxrvc_from_broadcast", [](const RootedInstance& instance, const Steps& steps) {
    return from_schedule(maxrvc_from_broadcast(instance, to_schedule(steps)).body());
  });

  m.def("reverse_doubling",
        [](const RootedInstance& instance, const Steps& gather, const std::vector<Time>& arrivals) {
          return from_schedule(reverse_doubling(instance, to_schedule(gather), arrivals));
        });

  py::class_<ClockToRootResult>(m, "ClockToRoot")
      .def_readonly("t_max", &ClockToRootResult::t_max)
      .def_readonly("max_weight", &ClockToRootResult::max_weight)
      .def_readonly("chunk_length", &ClockToRootResult::chunk_length)
      .def_readonly("bound_rooted", &ClockToRootResult::bound_rooted)
      .def_readonly("bound_allpairs", &ClockToRootResult::bound_allpairs)
      .def_property_readonly("broadcast",
                             [](const ClockToRootResult& r) { return r.broadcast; })
      .def("prefix",
           [](const ClockToRootResult& r, Time length) {
             return from_schedule(r.stream.prefix(length));
           })
      .def("period", [](const ClockToRootResult& r) { return r.stream.period(); });

  m.def("avgrvc_from_abt", &avgrvc_from_abt);
  m.def("clock_to_root", &clock_to_root);
  m.def("clock_to_root_eval",
        [](const RootedInstance& instance, const ClockToRootResult& r, Time horizon, int samples) {
          BoundReport report = clock_to_root_eval(instance, r, horizon, samples);
          return py::make_tuple(report.achieved, report.bound, report.ok);
        });
  m.def("clock_to_root_allpairs_eval",
        [](const RootedInstance& instance, const ClockToRootResult& r, Time horizon, int samples) {
          BoundReport report = clock_to_root_allpairs_eval(instance, r, horizon, samples);
          return py::make_tuple(report.achieved, report.bound, report.ok);
        });

  m.def("pow2_tail_slack", &pow2_tail_slack);
  m.def("pow2_half_partition", [](const std::vector<std::int64_t>& periods) {
    auto result = pow2_half_partition(periods);
    return result ? py::cast(*result) : py::object(py::none());
  });
  m.def("regular_sequence", &regular_sequence);

  py::class_<TreeApproxResult>(m, "TreeApproxResult")
      .def_property_readonly("periods",
                             [](const TreeApproxResult& r) {
                               std::vector<Time> out;
                               for (std::size_t v = 0; v < r.periods.exponent.size(); ++v) {
                                 out.push_back(r.periods.period(static_cast<Vertex>(v)));
                               }
                               return out;
                             })
      .def_property_readonly("offsets",
                             [](const TreeApproxResult& r) { return r.offsets.offset; })
      .def_property_readonly("steps",
                             [](const TreeApproxResult& r) {
                               return from_schedule(r.schedule.schedule.body());
                             })
      .def_property_readonly("realized_periods",
                             [](const TreeApproxResult& r) { return r.schedule.realized_period; })
      .def_readonly("latency_bound", &TreeApproxResult::latency_bound);

  m.def("tree_avgrvc_approx", &tree_avgrvc_approx);
  m.def("gap_lower_bound", &gap_lower_bound);

  m.def("oracle_broadcast", [](const RootedInstance& instance, const std::string& kind) {
    OracleResult r = oracle_broadcast(
        instance, kind == "abt" ? BroadcastObjective::Abt : BroadcastObjective::MinTime);
    return py::make_tuple(r.value, from_schedule(r.witness));
  });
  m.def(
      "oracle_rvc",
      [](const RootedInstance& instance, const std::string& kind, Time max_period) {
        OracleResult r = oracle_rvc(
            instance, kind == "avg" ? RvcObjective::Avg : RvcObjective::Max, max_period);
        return py::make_tuple(r.value, from_schedule(r.witness));
      },
      py::arg("instance"), py::arg("kind"), py::arg("max_period") = 0);
  m.def("oracle_regperi", [](const RootedInstance& instance) {
    RegPeriodsOracle r = oracle_regperi(instance);
    return py::make_tuple(r.total, r.exponents);
  });
}
