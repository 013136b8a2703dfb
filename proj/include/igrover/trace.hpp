#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace igrover {

/// Weighted class amplitudes (x, y, z) = (√k00·a00, √k10·a10, √k11·a11).
/// Always a point on the unit sphere.
struct ReducedState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const ReducedState& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm_sq() const { return dot(*this); }

  friend bool operator==(const ReducedState&, const ReducedState&) = default;
};

double max_abs_diff(const ReducedState& a, const ReducedState& b);

enum class OpKind { Init, OracleX, OracleY, Diffusion };

std::string_view to_string(OpKind op);
OpKind op_from_string(std::string_view s);

struct TraceRecord {
  int phase = 0;           // 0..3
  std::uint64_t step = 0;  // 0-based within the phase
  OpKind op = OpKind::Init;
  ReducedState point;
  double p_success = 0.0;  // z²
};

using Trace = std::vector<TraceRecord>;

enum class SelectionPolicy { PaperFormula, RoundedHalf, Swept };

std::string_view to_string(SelectionPolicy p);
// Accepts the CLI spellings paper|half|sweep and the long names.
SelectionPolicy policy_from_string(std::string_view s);

struct Schedule {
  std::uint64_t L = 0;
  SelectionPolicy policy = SelectionPolicy::PaperFormula;
};

/// Oracle queries of a single run plus how many runs were made.
/// A full schedule issues count_x = 3L and count_y = 1 per run.
struct QueryStats {
  std::uint64_t count_x = 0;
  std::uint64_t count_y = 0;
  std::uint64_t repetitions = 1;

  friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

// Trace CSV: header "phase,step,op,x,y,z,p_success", doubles with 17
// significant digits.
void write_trace_csv(std::ostream& out, const Trace& trace);
Trace read_trace_csv(std::istream& in);

/// Largest pointwise coordinate difference between two traces of equal shape;
/// +inf when the shapes (length, phase, step, op) differ.
double trace_distance(const Trace& a, const Trace& b);

}  // namespace igrover
