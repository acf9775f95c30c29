// Command-line front end: instance generation, simulation, schedule
// transforms, broadcast solvers, freshness pipelines, brute-force oracles and
// the oracle-vs-algorithm verification suites.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "freshcast/broadcast.hpp"
#include "freshcast/instance.hpp"
#include "freshcast/interleave.hpp"
#include "freshcast/json_io.hpp"
#include "freshcast/oracle.hpp"
#include "freshcast/schedule.hpp"
#include "freshcast/simulate.hpp"
#include "freshcast/transforms.hpp"
#include "freshcast/tree_approx.hpp"

using json = nlohmann::json;
using namespace freshcast;

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

RootedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return instance_from_json(j);
}

ScheduleFile load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return schedule_from_json(j);
}

int thread_budget() {
  if (const char* env = std::getenv("FRESHCAST_THREADS")) {
    int value = std::atoi(env);
    if (value >= 1) return value;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, count) across up to FRESHCAST_THREADS workers;
/// results land in index order, so output is independent of parallelism.
template <typename Fn>
std::vector<std::string> parallel_reports(std::size_t count, Fn fn) {
  std::vector<std::string> reports(count);
  int workers = std::min<std::size_t>(thread_budget(), count == 0 ? 1 : count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) reports[i] = fn(i);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        reports[i] = fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return reports;
}

struct ParsedObjective {
  ObjectiveSpec spec;
  bool allpairs = false;
};

ParsedObjective parse_objective(const std::string& text) {
  ParsedObjective out;
  if (text == "max") {
    out.spec.kind = ObjectiveKind::MaxRooted;
  } else if (text == "avg") {
    out.spec.kind = ObjectiveKind::AvgRooted;
  } else if (text == "ap-avg") {
    out.spec.kind = ObjectiveKind::AllPairsAvg;
    out.allpairs = true;
  } else if (text == "ap-max") {
    out.spec.kind = ObjectiveKind::AllPairsMax;
    out.allpairs = true;
  } else if (text.rfind("lp:", 0) == 0) {
    out.spec.kind = ObjectiveKind::LpRooted;
    out.spec.p = std::stoi(text.substr(3));
  } else if (text.rfind("time-avg:", 0) == 0) {
    out.spec.kind = ObjectiveKind::TimeAvg;
    out.spec.window = std::stoll(text.substr(9));
    out.spec.time_avg_base = ObjectiveKind::AvgRooted;
  } else {
    throw CLI::ValidationError("--objective", "unknown objective " + text);
  }
  return out;
}

json run_report(const RootedInstance& instance, const std::string& algorithm, const Rat& achieved,
                const std::optional<Rat>& bound, bool ok, double runtime_ms,
                std::optional<std::uint64_t> seed = {}) {
  json report{{"instance", {{"n", instance.n}, {"root", instance.root}}},
              {"algorithm", algorithm},
              {"achieved", rat_to_json(achieved)},
              {"bound", bound ? rat_to_json(*bound) : json(nullptr)},
              {"ok", ok},
              {"runtime_ms", runtime_ms}};
  if (seed) report["seed"] = *seed;
  return report;
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

int cmd_gen(const std::string& kind, int n, int depth, std::uint64_t seed,
            const std::string& output) {
  RootedInstance instance;
  if (kind == "star") {
    instance = star(n);
  } else if (kind == "path") {
    instance = path(n);
  } else if (kind == "cbt") {
    instance = complete_binary_tree(depth);
  } else if (kind == "random") {
    instance = random_tree(n, seed);
  } else if (kind == "gap") {
    instance = gap_tree(n);
  } else {
    throw CLI::ValidationError("--kind", "unknown instance kind " + kind);
  }
  write_output(output, instance_to_json(instance).dump(2));
  return 0;
}

int cmd_simulate(const std::string& instance_path, const std::string& schedule_path, Time horizon,
                 const std::string& objective_text, const std::string& trace_path,
                 const std::string& output) {
  Stopwatch watch;
  RootedInstance instance = load_instance(instance_path);
  ScheduleFile file = load_schedule(schedule_path);
  validate_schedule(instance, file.steps.steps);
  ScheduleStream stream = file.period
                              ? ScheduleStream::from_periodic(PeriodicSchedule(file.steps))
                              : ScheduleStream::from_finite(file.steps);
  ParsedObjective parsed = parse_objective(objective_text);

  Rat achieved;
  std::string evaluation = "observed-window";
  bool per_time_norm = parsed.spec.kind != ObjectiveKind::TimeAvg;
  if (file.period && per_time_norm) {
    achieved = supremum_objective(instance, PeriodicSchedule(file.steps), parsed.spec);
    evaluation = "exact-supremum";
    if (!trace_path.empty()) {
      if (parsed.allpairs) {
        std::ofstream out(trace_path);
        write_trace_csv(out, simulate_allpairs(instance, stream, horizon));
      } else {
        std::ofstream out(trace_path);
        write_trace_csv(out, simulate(instance, stream, horizon));
      }
    }
  } else if (parsed.allpairs) {
    AllPairsTrace trace = simulate_allpairs(instance, stream, horizon);
    achieved = objective(trace, parsed.spec);
    if (!trace_path.empty()) {
      std::ofstream out(trace_path);
      write_trace_csv(out, trace);
    }
  } else {
    RootedTrace trace = simulate(instance, stream, horizon);
    achieved = objective(trace, parsed.spec);
    if (!trace_path.empty()) {
      std::ofstream out(trace_path);
      write_trace_csv(out, trace);
    }
  }
  json report = run_report(instance, "simulate:" + objective_text, achieved, std::nullopt, true,
                           watch.ms());
  report["evaluation"] = evaluation;
  write_output(output, report.dump(2));
  return 0;
}

int cmd_broadcast(const std::string& instance_path, const std::string& alg,
                  const std::string& output) {
  RootedInstance instance = load_instance(instance_path);
  BroadcastResult result =
      alg == "min-time" ? tree_min_broadcast(instance) : abt_greedy(instance);
  json delays = json::array();
  for (Time d : result.delay) delays.push_back(d);
  json report{{"algorithm", alg},
              {"schedule", schedule_to_json(result.schedule)},
              {"delays", delays},
              {"makespan", result.makespan},
              {"average", rat_to_json(result.average)}};
  write_output(output, report.dump(2));
  return 0;
}

int cmd_transform(const std::string& instance_path, const std::string& kind,
                  const std::string& schedule_path, Time bound, Time k0,
                  const std::string& norm_text, const std::string& output) {
  RootedInstance instance = load_instance(instance_path);
  NormKind norm = NormKind::RootedLinf;
  if (norm_text == "rooted-l1") norm = NormKind::RootedL1;
  if (norm_text == "ap-linf") norm = NormKind::AllPairsLinf;
  if (norm_text == "ap-l1") norm = NormKind::AllPairsL1;

  json out;
  if (kind == "euler") {
    out = schedule_to_json(euler_tour_schedule(instance));
  } else {
    ScheduleFile file = load_schedule(schedule_path);
    if (kind == "periodic") {
      ScheduleStream stream = file.period
                                  ? ScheduleStream::from_periodic(PeriodicSchedule(file.steps))
                                  : ScheduleStream::from_finite(file.steps);
      out = schedule_to_json(truncate_and_repeat(instance, stream, bound));
    } else if (kind == "time-avg") {
      ScheduleStream stream = file.period
                                  ? ScheduleStream::from_periodic(PeriodicSchedule(file.steps))
                                  : ScheduleStream::from_finite(file.steps);
      out = schedule_to_json(truncate_and_repeat_time_avg(instance, stream, bound, k0, norm));
    } else if (kind == "repeat-broadcast") {
      out = schedule_to_json(maxrvc_from_broadcast(instance, file.steps));
    } else if (kind == "reverse-doubling") {
      std::vector<Time> arrivals = receive_times(instance, file.steps);
      out = schedule_to_json(reverse_doubling(instance, file.steps, arrivals));
    } else {
      throw CLI::ValidationError("--kind", "unknown transform " + kind);
    }
  }
  write_output(output, out.dump(2));
  return 0;
}

int cmd_freshness(const std::string& instance_path, const std::string& alg, Time steps,
                  const std::string& trace_path, const std::string& output) {
  Stopwatch watch;
  RootedInstance instance = load_instance(instance_path);
  if (alg == "interleave") {
    ClockToRootResult result = avgrvc_from_abt(instance);
    Time horizon = std::max<Time>(steps, 1);
    RootedTrace trace = simulate(instance, result.stream, horizon);
    if (!trace_path.empty()) {
      std::ofstream out(trace_path);
      write_trace_csv(out, trace);
    }
    Rat achieved(0);
    for (Time t : sample_times(horizon, 1000)) {
      achieved = Rat::max(achieved, Rat(rooted_l1(trace, t), instance.n));
    }
    bool ok = achieved <= result.bound_rooted;
    json report = run_report(instance, "interleave", achieved, result.bound_rooted, ok,
                             watch.ms());
    report["t_max"] = result.t_max;
    report["chunk_length"] = result.chunk_length;
    write_output(output, report.dump(2));
    return ok ? 0 : 1;
  }
  if (alg == "tree40") {
    TreeApproxResult result = tree_avgrvc_approx(instance);
    Rat achieved = supremum_objective(instance, result.schedule.schedule,
                                      {ObjectiveKind::AvgRooted});
    bool ok = achieved <= result.latency_bound;
    if (!trace_path.empty()) {
      RootedTrace trace = simulate(instance, ScheduleStream::from_periodic(result.schedule.schedule),
                                   steps > 0 ? steps : 4 * result.schedule.schedule.period());
      std::ofstream out(trace_path);
      write_trace_csv(out, trace);
    }
    json report = run_report(instance, "tree40", achieved, result.latency_bound, ok, watch.ms());
    json periods = json::array();
    json offsets = json::array();
    for (Vertex v = 0; v < instance.n; ++v) {
      periods.push_back(result.periods.period(v));
      offsets.push_back(result.offsets.offset[v]);
    }
    report["periods"] = periods;
    report["offsets"] = offsets;
    report["schedule"] = schedule_to_json(result.schedule.schedule);
    write_output(output, report.dump(2));
    return ok ? 0 : 1;
  }
  throw CLI::ValidationError("--alg", "unknown freshness algorithm " + alg);
}

int cmd_oracle(const std::string& instance_path, const std::string& objective_text,
               Time max_period, const std::string& output) {
  RootedInstance instance = load_instance(instance_path);
  json report;
  if (objective_text == "min-time" || objective_text == "abt") {
    OracleResult result = oracle_broadcast(instance, objective_text == "abt"
                                                         ? BroadcastObjective::Abt
                                                         : BroadcastObjective::MinTime);
    report = json{{"objective", objective_text},
                  {"value", rat_to_json(result.value)},
                  {"witness", schedule_to_json(result.witness)},
                  {"label", "exact optimum over all schedules"}};
  } else if (objective_text == "max" || objective_text == "avg") {
    OracleResult result = oracle_rvc(
        instance, objective_text == "avg" ? RvcObjective::Avg : RvcObjective::Max, max_period);
    json witness = schedule_to_json(result.witness);
    witness["period"] = *result.period;
    report = json{{"objective", objective_text},
                  {"value", rat_to_json(result.value)},
                  {"witness", witness},
                  {"max_period", result.max_period},
                  {"label", "period-restricted optimum + factor-2 certificate"}};
  } else if (objective_text == "regperi") {
    RegPeriodsOracle result = oracle_regperi(instance);
    json exponents = json::array();
    for (int e : result.exponents) exponents.push_back(e);
    report = json{{"objective", "regperi"},
                  {"value", rat_to_json(Rat(result.total))},
                  {"exponents", exponents},
                  {"label", "exact optimum via budget DP"}};
  } else {
    throw CLI::ValidationError("--objective", "unknown oracle objective " + objective_text);
  }
  write_output(output, report.dump(2));
  return 0;
}

int cmd_verify(const std::string& suite, int max_n, const std::string& output) {
  Stopwatch watch;
  std::ostringstream log;
  bool ok = true;

  if (suite == "trees") {
    std::vector<RootedInstance> corpus;
    for (int n = 1; n <= std::min(max_n, 7); ++n) {
      for (const RootedInstance& t : all_rooted_trees(n)) corpus.push_back(t);
    }
    std::vector<std::string> reports =
        parallel_reports(corpus.size(), [&corpus](std::size_t i) -> std::string {
          const RootedInstance& t = corpus[i];
          std::ostringstream line;
          bool good = true;
          good = good && Rat(tree_min_broadcast(t).makespan) ==
                             oracle_broadcast(t, BroadcastObjective::MinTime).value;
          good = good &&
                 abt_greedy(t).average == oracle_broadcast(t, BroadcastObjective::Abt).value;
          if (t.n >= 2 && t.n <= 5) {
            Rat vc_max = oracle_rvc(t, RvcObjective::Max).value;
            PeriodicSchedule repeated = maxrvc_from_broadcast(t, tree_min_broadcast(t).schedule);
            Rat achieved = supremum_objective(t, repeated, {ObjectiveKind::MaxRooted});
            good = good && achieved <= Rat(2) * vc_max;
            Rat vc_avg = oracle_rvc(t, RvcObjective::Avg).value;
            Rat tree40 = supremum_objective(t, tree_avgrvc_approx(t).schedule.schedule,
                                            {ObjectiveKind::AvgRooted});
            good = good && tree40 <= Rat(40) * vc_avg;
          }
          line << (good ? "ok" : "FAIL") << " n=" << t.n << " tree#" << i;
          return line.str();
        });
    for (const std::string& line : reports) {
      log << line << '\n';
      if (line.rfind("FAIL", 0) == 0) ok = false;
    }
  } else if (suite == "claims") {
    std::function<void(std::vector<std::int64_t>&)> recurse =
        [&](std::vector<std::int64_t>& seq) {
          if (!seq.empty()) {
            Rat sum(0);
            for (std::int64_t p : seq) sum += Rat(1, p);
            if (sum <= Rat(1)) {
              try {
                pow2_tail_slack(seq);
                if (seq.size() >= 2) pow2_half_partition(seq);
              } catch (const Error&) {
                ok = false;
              }
            }
          }
          if (seq.size() == 8) return;
          std::int64_t floor = seq.empty() ? 1 : seq.back();
          for (std::int64_t p = floor; p <= 64; p *= 2) {
            seq.push_back(p);
            recurse(seq);
            seq.pop_back();
          }
        };
    std::vector<std::int64_t> seq;
    recurse(seq);
    log << (ok ? "ok" : "FAIL") << " power-of-two claims, k <= 8, exponents <= 6\n";
  } else if (suite == "gap") {
    Rat previous(0);
    for (int n : {256, 1024, 4096}) {
      RootedInstance g = gap_tree(n);
      Rat average = abt_greedy(g).average;
      Rat limit = Rat(9, 2) * log2_lower(static_cast<std::uint64_t>(n));
      bool within = average <= limit;
      Rat ratio = gap_lower_bound(g) / average;
      bool growing = previous < ratio;
      previous = ratio;
      ok = ok && within && growing;
      log << (within && growing ? "ok" : "FAIL") << " n=" << n << " abt=" << average.to_string()
          << " limit=" << limit.to_string() << " ratio=" << ratio.to_string() << '\n';
    }
  } else {
    throw CLI::ValidationError("--suite", "unknown suite " + suite);
  }

  log << (ok ? "PASS" : "FAIL") << " suite=" << suite << " runtime_ms=" << watch.ms() << '\n';
  write_output(output, log.str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freshcast: telephone-model information freshness schedules"};
  app.require_subcommand(1);

  std::string kind, instance_path, schedule_path, objective_text = "max", alg, norm = "rooted-linf";
  std::string output = "-", trace_path, suite = "trees";
  int n = 8, depth = 2, max_n = 6;
  Time horizon = 100, bound = 0, k0 = 1, max_period = 0, steps = 1000;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--kind", kind, "star|path|cbt|random|gap")->required();
  gen->add_option("--n", n, "size parameter");
  gen->add_option("--depth", depth, "depth for cbt");
  gen->add_option("--seed", seed, "seed for random");
  gen->add_option("-o,--output", output, "output path or -");

  auto* sim = app.add_subcommand("simulate", "simulate a schedule and evaluate an objective");
  sim->add_option("-i,--instance", instance_path)->required();
  sim->add_option("--schedule", schedule_path)->required();
  sim->add_option("--horizon", horizon);
  sim->add_option("--objective", objective_text, "max|avg|lp:<p>|ap-avg|ap-max|time-avg:<K0>");
  sim->add_option("--trace", trace_path, "trace CSV path");
  sim->add_option("-o,--output", output);

  auto* bc = app.add_subcommand("broadcast", "tree broadcast solvers");
  bc->add_option("-i,--instance", instance_path)->required();
  bc->add_option("--alg", alg, "min-time|abt")->required();
  bc->add_option("-o,--output", output);

  auto* tr = app.add_subcommand("transform", "schedule-to-schedule constructions");
  tr->add_option("-i,--instance", instance_path)->required();
  tr->add_option("--kind", kind, "periodic|time-avg|euler|repeat-broadcast|reverse-doubling")
      ->required();
  tr->add_option("--schedule", schedule_path);
  tr->add_option("--bound", bound);
  tr->add_option("--k0", k0);
  tr->add_option("--norm", norm, "rooted-linf|rooted-l1|ap-linf|ap-l1");
  tr->add_option("-o,--output", output);

  auto* fresh = app.add_subcommand("freshness", "infinite low-latency schedules");
  fresh->add_option("-i,--instance", instance_path)->required();
  fresh->add_option("--alg", alg, "interleave|tree40")->required();
  fresh->add_option("--steps", steps);
  fresh->add_option("--trace", trace_path);
  fresh->add_option("-o,--output", output);

  auto* orc = app.add_subcommand("oracle", "brute-force optima on tiny instances");
  orc->add_option("-i,--instance", instance_path)->required();
  orc->add_option("--objective", objective_text, "max|avg|min-time|abt|regperi")->required();
  orc->add_option("--max-period", max_period);
  orc->add_option("-o,--output", output);

  auto* ver = app.add_subcommand("verify", "oracle-vs-algorithm checks");
  ver->add_option("--suite", suite, "trees|claims|gap");
  ver->add_option("--max-n", max_n);
  ver->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(kind, n, depth, seed, output);
    if (sim->parsed()) {
      return cmd_simulate(instance_path, schedule_path, horizon, objective_text, trace_path,
                          output);
    }
    if (bc->parsed()) return cmd_broadcast(instance_path, alg, output);
    if (tr->parsed()) {
      return cmd_transform(instance_path, kind, schedule_path, bound, k0, norm, output);
    }
    if (fresh->parsed()) return cmd_freshness(instance_path, alg, steps, trace_path, output);
    if (orc->parsed()) return cmd_oracle(instance_path, objective_text, max_period, output);
    if (ver->parsed()) return cmd_verify(suite, max_n, output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
