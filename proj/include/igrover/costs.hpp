#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "igrover/fullstate.hpp"
#include "igrover/instance.hpp"
#include "igrover/reduced.hpp"
#include "igrover/trace.hpp"

namespace igrover {

/// Per-step half-rotation angle θ in two forms. The chord form
/// 2·arcsin(DS/2) is used for scheduling; the small-angle form √(|X|/n) is
/// reported for comparison.
struct AngleParams {
  double theta_chord = 0.0;
  double theta_approx = 0.0;
  double alpha_target = 0.0;  // π/2
  double ds = 0.0;            // chord length √((k11 + k10)/n)
};

AngleParams compute_theta(const ClassCounts& counts);

inline constexpr std::uint64_t kDefaultSweepWindow = 3;

/// PaperFormula: round(π/(4θ)). RoundedHalf: max(0, round(π/(4θ) − 1/2)).
/// Swept: best L from sweep_L with kDefaultSweepWindow.
Schedule choose_L(const ClassCounts& counts, SelectionPolicy policy);

struct SweepRow {
  std::uint64_t L = 0;
  double p_success = 0.0;
};

struct SweepResult {
  Schedule best;
  std::vector<SweepRow> table;
};

/// Evaluates every L in [max(0, L₀ − window), L₀ + window] around the
/// paper-formula L₀. Ties (within 1e−12) go to the smaller L.
SweepResult sweep_L(const ClassCounts& counts, std::uint64_t window);

/// Abstract per-evaluation costs of f_X and f_Y.
struct CostModel {
  double t_x = 1.0;
  double t_y = 1.0;
};

void validate(const CostModel& model);

double query_cost(const QueryStats& stats, const CostModel& model);

struct NaiveGroverCost {
  std::uint64_t iterations = 0;
  double cost = 0.0;
};

/// Plain Grover on f_Y alone: floor((π/4)·√(n/|Y|)) iterations, each one f_Y query.
NaiveGroverCost naive_grover_cost(const ClassCounts& counts, const CostModel& model);

struct CostComparison {
  double new_cost = 0.0;
  double naive_cost = 0.0;
  std::uint64_t naive_iterations = 0;
  QueryStats stats;
  std::optional<double> ratio;              // new / naive; empty when naive is free
  std::optional<double> crossover_t_y;      // t_y solving count_x·t_x + t_y = iter·t_y
  bool baseline_wins = false;               // ratio > 1
};

CostComparison compare_costs(const ClassCounts& counts, const Schedule& sched,
                             const CostModel& model);

enum class Engine { Reduced, Full };

/// Pick K00/K10/K11 with probability x²/y²/z², then a uniform member of that
/// class. Exact because amplitudes are equal within a class.
Index sample_from_reduced(const ReducedState& p, const ProblemInstance& inst, Rng& rng);

struct RunOutcome {
  Index measured_index = 0;
  bool verified = false;  // false means repetitions were exhausted
  std::uint64_t repetitions = 0;
  QueryStats stats;       // per-run counts, repetitions used
  double p_success_exact = 0.0;
  std::uint64_t seed = 0;
};

/// Runs the schedule, measures, verifies; restarts from Phase 0 with fresh
/// randomness until verified or max_reps runs have been made. An outcome with
/// verified == false is the ExhaustedRepetitions case.
RunOutcome run_with_repetitions(const ProblemInstance& inst, const Schedule& sched,
                                std::uint64_t max_reps, std::uint64_t seed,
                                Engine engine = Engine::Reduced);

/// Throws ExhaustedRepetitions when the outcome is unverified.
const RunOutcome& require_verified(const RunOutcome& outcome);

}  // namespace igrover
