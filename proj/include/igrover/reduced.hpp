#pragma once

#include <vector>

#include "igrover/instance.hpp"
#include "igrover/trace.hpp"

namespace igrover {

/// Reduced image S of the uniform superposition; the diffusion axis.
struct SpherePoint {
  double x_s = 0.0;
  double y_s = 0.0;
  double z_s = 0.0;

  static SpherePoint from_counts(const ClassCounts& counts);
  ReducedState as_state() const { return {x_s, y_s, z_s}; }
};

ReducedState initial_point(const ClassCounts& counts);

// Pure reflections. O_X fixes the x-axis, O_Y fixes the xy-plane, and the
// diffusion reflects through the line spanned by S: 2(p·s)s − p.
ReducedState reflect_oracle_x(const ReducedState& p);
ReducedState reflect_oracle_y(const ReducedState& p);
ReducedState reflect_diffusion(const ReducedState& p, const SpherePoint& s);

inline double success_probability(const ReducedState& p) { return p.z * p.z; }

/// O(1)-memory simulator over the three class amplitudes, with oracle query
/// counters.
class ReducedSimulator {
 public:
  explicit ReducedSimulator(const ClassCounts& counts);

  void apply_oracle_x();
  void apply_oracle_y();
  void apply_diffusion();

  const ReducedState& state() const { return state_; }
  const SpherePoint& sphere_point() const { return s_; }
  const ClassCounts& counts() const { return counts_; }
  std::uint64_t oracle_x_queries() const { return count_x_; }
  std::uint64_t oracle_y_queries() const { return count_y_; }

 private:
  ClassCounts counts_;
  SpherePoint s_;
  ReducedState state_;
  std::uint64_t count_x_ = 0;
  std::uint64_t count_y_ = 0;
};

struct ReducedRun {
  ReducedState final_state;
  Trace trace;
  QueryStats stats;
};

/// Phase 0 (init), L × (O_X, D), 1 × (O_Y, D), 2L × (O_X, D); one trace
/// record per operation.
ReducedRun run_schedule(const ClassCounts& counts, const Schedule& sched);

/// Final point only; skips trace allocation for large L sweeps.
ReducedState run_schedule_final(const ClassCounts& counts, std::uint64_t L);

/// Rotation angles between consecutive Phase-1 points (the initial point
/// followed by each post-diffusion point). Throws InsufficientTrace when
/// fewer than three such points exist.
std::vector<double> phase1_rotation_check(const Trace& trace);

/// Points the Phase-1 rotation visits: init followed by post-diffusion points.
std::vector<ReducedState> phase1_points(const Trace& trace);

/// Largest distance of the given points from their least-squares plane.
double coplanarity_residual(const std::vector<ReducedState>& points);

}  // namespace igrover
