#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "igrover/trace.hpp"

namespace igrover::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kEngineMismatch = 2,
  kExhaustedRepetitions = 3,
};

enum class EngineChoice { Reduced, Full, Both };

struct RunConfig {
  std::string instance_path;
  std::string grid_path;  // sweep only
  EngineChoice engine = EngineChoice::Reduced;
  SelectionPolicy policy = SelectionPolicy::PaperFormula;
  std::optional<std::uint64_t> L_override;
  std::optional<std::uint64_t> window;  // sweep only
  std::uint64_t seed = 0;
  std::uint64_t max_reps = 20;
  double t_x = 1.0;
  double t_y = 1.0;
  double tol = 1e-9;
  std::string trace_path;
  std::string out_path;
  std::string dump_state_path;
};

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace igrover::cli
