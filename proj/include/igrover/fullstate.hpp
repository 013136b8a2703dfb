#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "igrover/instance.hpp"
#include "igrover/trace.hpp"

namespace igrover {

inline constexpr std::uint64_t kDefaultFullCap = std::uint64_t{1} << 20;

/// Full-engine size cap; IGROVER_FULL_CAP overrides the default of 2^20.
std::uint64_t full_state_cap();

/// n real amplitudes d_0 … d_{n−1}.
struct FullState {
  std::vector<double> amplitudes;

  std::size_t size() const { return amplitudes.size(); }
  double norm() const;
};

enum class OracleKind { X, Y };

FullState init_uniform(Index n);

/// d_i ↦ (−1)^{f(i)} d_i, evaluating the predicate per index.
void apply_oracle_full(FullState& st, const ProblemInstance& inst, OracleKind which);

/// d_i ↦ 2m − d_i with m the mean amplitude.
void apply_diffusion_full(FullState& st);

/// Fixed-order pairwise sum; result is independent of how callers chunk work.
double pairwise_sum(std::span<const double> v);

/// Class-projected point (√k00·a00, √k10·a10, √k11·a11). Throws
/// NotClassUniform if any class spreads by more than 1e−9.
ReducedState project_to_reduced(const FullState& st, const ProblemInstance& inst);

/// Brute-force simulator. Caches the marked index sets of both oracles and the
/// class label of every index, so each oracle costs O(|X|) or O(|Y|).
class FullStateSimulator {
 public:
  explicit FullStateSimulator(const ProblemInstance& inst, std::uint64_t cap = full_state_cap());

  void apply_oracle(OracleKind which);
  void apply_diffusion() { apply_diffusion_full(state_); }

  ReducedState project() const;
  /// Largest within-class amplitude spread.
  double class_spread() const;

  const FullState& state() const { return state_; }
  std::uint64_t oracle_x_queries() const { return count_x_; }
  std::uint64_t oracle_y_queries() const { return count_y_; }

 private:
  ClassCounts counts_;
  FullState state_;
  std::vector<Index> marked_x_;
  std::vector<Index> marked_y_;
  std::vector<std::uint8_t> labels_;  // IndexClass per index
  std::uint64_t count_x_ = 0;
  std::uint64_t count_y_ = 0;
};

struct FullRun {
  FullState final_state;
  Trace trace;  // class-projected points
  QueryStats stats;
};

/// Same operation sequence as run_schedule. Throws InstanceTooLarge when
/// n exceeds cap.
FullRun run_schedule_full(const ProblemInstance& inst, const Schedule& sched,
                          std::uint64_t cap = full_state_cap());

/// Final state only; no per-operation projection.
FullState run_schedule_full_final(const ProblemInstance& inst, std::uint64_t L,
                                  std::uint64_t cap = full_state_cap());

// Seeded generator used for every measurement draw.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits; platform independent,
/// unlike std::uniform_real_distribution.
double uniform01(Rng& rng);

/// Uniform integer in [0, bound) by rejection; platform independent.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Index i with probability d_i².
Index sample_measurement(const FullState& st, Rng& rng);
Index sample_measurement(const FullState& st, std::uint64_t seed);

// Debug dump: "IGSV", u32 version, u64 n, then n little-endian f64.
inline constexpr std::uint32_t kStateDumpVersion = 1;
void write_state_dump(std::ostream& out, const FullState& st);
FullState read_state_dump(std::istream& in);

}  // namespace igrover
