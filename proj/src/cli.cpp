#include "igrover/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "igrover/costs.hpp"
#include "igrover/fullstate.hpp"
#include "igrover/instance.hpp"
#include "igrover/reduced.hpp"

namespace igrover::cli {

using nlohmann::json;

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Writes to path, or to out when path is empty.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, "cannot write " + path);
  f << text;
}

Schedule resolve_schedule(const ClassCounts& counts, const RunConfig& config) {
  if (config.L_override) return {*config.L_override, config.policy};
  return choose_L(counts, config.policy);
}

json counts_json(const ClassCounts& c) {
  return {{"k11", c.k11}, {"k10", c.k10}, {"k00", c.k00}, {"n", c.n}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string_view engine_name(EngineChoice e) {
  switch (e) {
    case EngineChoice::Reduced: return "reduced";
    case EngineChoice::Full: return "full";
    case EngineChoice::Both: return "both";
  }
  return "?";
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto inst = load_instance(config.instance_path);
    const auto counts = partition_classes(inst);
    const CostModel model{config.t_x, config.t_y};
    validate(model);
    if (config.max_reps == 0) throw Error(ErrorKind::Parse, "--reps must be positive");

    const bool use_full = config.engine != EngineChoice::Reduced;
    const std::uint64_t cap = full_state_cap();
    if (use_full && inst.n() > cap) {
      throw Error(ErrorKind::InstanceTooLarge,
                  "n=" + std::to_string(inst.n()) + " exceeds the full-engine cap " +
                      std::to_string(cap) + " (set IGROVER_FULL_CAP or use --engine reduced)");
    }
    if (!config.dump_state_path.empty() && !use_full) {
      throw Error(ErrorKind::Parse, "--dump-state needs --engine full or both");
    }

    const Schedule sched = resolve_schedule(counts, config);
    std::optional<ReducedRun> reduced;
    std::optional<FullRun> full;
    if (config.engine != EngineChoice::Full) reduced = run_schedule(counts, sched);
    if (use_full) full = run_schedule_full(inst, sched, cap);

    double deviation = 0.0;
    if (reduced && full) {
      deviation = trace_distance(reduced->trace, full->trace);
      if (!(deviation <= config.tol)) {
        err << "engine disagreement: max deviation " << shortest(deviation) << " exceeds tol "
            << shortest(config.tol) << "\n";
        return kEngineMismatch;
      }
    }

    if (!config.trace_path.empty()) {
      std::ostringstream csv;
      write_trace_csv(csv, reduced ? reduced->trace : full->trace);
      emit(config.trace_path, out, csv.str());
    }
    if (!config.dump_state_path.empty()) {
      std::ofstream f(config.dump_state_path, std::ios::binary);
      if (!f) throw Error(ErrorKind::Parse, "cannot write " + config.dump_state_path);
      write_state_dump(f, full->final_state);
    }

    const auto outcome = run_with_repetitions(inst, sched, config.max_reps, config.seed,
                                              use_full ? Engine::Full : Engine::Reduced);
    const auto naive = naive_grover_cost(counts, model);

    json result = {
        {"instance", instance_to_json(inst)},
        {"engine", engine_name(config.engine)},
        {"L", sched.L},
        {"policy", config.L_override ? "override" : to_string(sched.policy)},
        {"counts",
         {{"x_queries", outcome.stats.count_x},
          {"y_queries", outcome.stats.count_y},
          {"repetitions", outcome.stats.repetitions}}},
        {"cost",
         {{"t_x", model.t_x},
          {"t_y", model.t_y},
          {"total", query_cost(outcome.stats, model)},
          {"naive_total", naive.cost}}},
        {"p_success_exact", outcome.p_success_exact},
        {"measured_index", outcome.measured_index},
        {"verified", outcome.verified},
        {"seed", outcome.seed},
    };
    if (reduced && full) result["max_engine_deviation"] = deviation;
    emit(config.out_path, out, result.dump(2) + "\n");

    if (!outcome.verified) {
      err << "no verified index after " << outcome.repetitions << " repetitions\n";
      return kExhaustedRepetitions;
    }
    return kOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kValidationError;
  }
}

namespace {

struct GridCell {
  Index n;
  Index x_size;
  Index y_size;

  auto key() const { return std::tie(n, x_size, y_size); }
  bool operator<(const GridCell& o) const { return key() < o.key(); }
};

std::vector<Index> index_list(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw Error(ErrorKind::Parse, std::string("grid needs a nonempty \"") + key + "\" array");
  }
  std::vector<Index> v;
  for (const auto& e : j.at(key)) {
    if (!e.is_number_unsigned()) {
      throw Error(ErrorKind::Parse, std::string("grid \"") + key + "\" entries must be positive integers");
    }
    v.push_back(e.get<Index>());
  }
  return v;
}

std::vector<GridCell> load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open grid file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  std::vector<GridCell> cells;
  for (Index n : index_list(j, "n")) {
    for (Index x : index_list(j, "x")) {
      for (Index y : index_list(j, "y")) {
        if (n < 2 || y < 1 || y > x || x > n) {
          throw Error(ErrorKind::Parse, "grid cell (n=" + std::to_string(n) + ", |X|=" +
                                            std::to_string(x) + ", |Y|=" + std::to_string(y) +
                                            ") violates 1 <= |Y| <= |X| <= n");
        }
        cells.push_back({n, x, y});
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end(),
                          [](const GridCell& a, const GridCell& b) { return a.key() == b.key(); }),
              cells.end());
  return cells;
}

}  // namespace

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.instance_path.empty() == config.grid_path.empty()) {
      throw Error(ErrorKind::Parse, "sweep needs exactly one of --instance or --grid");
    }
    const CostModel model{config.t_x, config.t_y};
    validate(model);

    std::vector<GridCell> cells;
    if (!config.grid_path.empty()) {
      cells = load_grid(config.grid_path);
    } else {
      const auto inst = load_instance(config.instance_path);
      cells.push_back({inst.n(), inst.x_size(), inst.y_size()});
    }

    std::ostringstream csv;
    csv << "n,x_size,y_size,L,p_success,cost\n";
    for (const auto& cell : cells) {
      const auto counts = make_counts(cell.n, cell.x_size, cell.y_size);
      std::vector<SweepRow> rows;
      if (config.window) {
        rows = sweep_L(counts, *config.window).table;
      } else {
        const auto sched = resolve_schedule(counts, config);
        rows.push_back({sched.L, success_probability(run_schedule_final(counts, sched.L))});
      }
      for (const auto& row : rows) {
        const QueryStats stats{3 * row.L, 1, 1};
        csv << cell.n << ',' << cell.x_size << ',' << cell.y_size << ',' << row.L << ','
            << shortest(row.p_success) << ',' << shortest(query_cost(stats, model)) << '\n';
      }
    }
    emit(config.out_path, out, csv.str());
    return kOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kValidationError;
  }
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto inst = load_instance(config.instance_path);
    const auto counts = partition_classes(inst);
    const CostModel model{config.t_x, config.t_y};
    const Schedule sched = resolve_schedule(counts, config);
    const auto cmp = compare_costs(counts, sched, model);

    json report = {
        {"instance", instance_to_json(inst)},
        {"class_counts", counts_json(counts)},
        {"L", sched.L},
        {"policy", config.L_override ? "override" : to_string(sched.policy)},
        {"t_x", model.t_x},
        {"t_y", model.t_y},
        {"new",
         {{"x_queries", cmp.stats.count_x}, {"y_queries", cmp.stats.count_y}, {"cost", cmp.new_cost}}},
        {"naive", {{"iterations", cmp.naive_iterations}, {"cost", cmp.naive_cost}}},
        {"ratio", optional_json(cmp.ratio)},
        {"crossover_t_y", optional_json(cmp.crossover_t_y)},
        {"baseline_wins", cmp.baseline_wins},
    };
    emit(config.out_path, out, report.dump(2) + "\n");
    return kOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kValidationError;
  }
}

namespace {

void add_common(CLI::App* app, RunConfig& c, std::string& policy) {
  app->add_option("--policy", policy, "L selection: paper|half|sweep")
      ->check(CLI::IsMember({"paper", "half", "sweep"}));
  app->add_option("--L", c.L_override, "override the number of Phase-1 steps");
  app->add_option("--tx", c.t_x, "cost of one f_X query");
  app->add_option("--ty", c.t_y, "cost of one f_Y query");
  app->add_option("--out", c.out_path, "output path (default stdout)");
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-oracle Grover search simulator", "igrover"};
  app.require_subcommand(1);

  RunConfig run_cfg, sweep_cfg, compare_cfg;
  std::string run_policy = "paper", sweep_policy = "paper", compare_policy = "paper";
  std::string engine = "reduced";

  auto* run = app.add_subcommand("run", "simulate one instance, measure and verify");
  run->add_option("--instance", run_cfg.instance_path, "instance JSON")->required();
  run->add_option("--engine", engine, "reduced|full|both")
      ->check(CLI::IsMember({"reduced", "full", "both"}));
  run->add_option("--seed", run_cfg.seed, "measurement seed");
  run->add_option("--reps", run_cfg.max_reps, "maximum repetitions");
  run->add_option("--trace", run_cfg.trace_path, "trace CSV path");
  run->add_option("--tol", run_cfg.tol, "engine agreement tolerance");
  run->add_option("--dump-state", run_cfg.dump_state_path, "binary dump of the final full state");
  add_common(run, run_cfg, run_policy);

  auto* sweep = app.add_subcommand("sweep", "tabulate success probability and cost");
  sweep->add_option("--instance", sweep_cfg.instance_path, "instance JSON");
  sweep->add_option("--grid", sweep_cfg.grid_path, "grid JSON {\"n\":[..],\"x\":[..],\"y\":[..]}");
  sweep->add_option("--window", sweep_cfg.window, "sweep L within +-window of the formula L");
  add_common(sweep, sweep_cfg, sweep_policy);

  auto* compare = app.add_subcommand("compare", "cost against plain Grover on f_Y");
  compare->add_option("--instance", compare_cfg.instance_path, "instance JSON")->required();
  add_common(compare, compare_cfg, compare_policy);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  if (*run) {
    run_cfg.policy = policy_from_string(run_policy);
    run_cfg.engine = engine == "full"   ? EngineChoice::Full
                     : engine == "both" ? EngineChoice::Both
                                        : EngineChoice::Reduced;
    return cmd_run(run_cfg, out, err);
  }
  if (*sweep) {
    sweep_cfg.policy = policy_from_string(sweep_policy);
    return cmd_sweep(sweep_cfg, out, err);
  }
  compare_cfg.policy = policy_from_string(compare_policy);
  return cmd_compare(compare_cfg, out, err);
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return main(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace igrover::cli
