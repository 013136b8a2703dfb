#include "igrover/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "igrover/errors.hpp"

namespace igrover {

double max_abs_diff(const ReducedState& a, const ReducedState& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

std::string_view to_string(OpKind op) {
  switch (op) {
    case OpKind::Init: return "init";
    case OpKind::OracleX: return "oracle_x";
    case OpKind::OracleY: return "oracle_y";
    case OpKind::Diffusion: return "diffusion";
  }
  return "?";
}

OpKind op_from_string(std::string_view s) {
  if (s == "init") return OpKind::Init;
  if (s == "oracle_x") return OpKind::OracleX;
  if (s == "oracle_y") return OpKind::OracleY;
  if (s == "diffusion") return OpKind::Diffusion;
  throw Error(ErrorKind::Parse, "unknown op \"" + std::string(s) + "\"");
}

std::string_view to_string(SelectionPolicy p) {
  switch (p) {
    case SelectionPolicy::PaperFormula: return "paper_formula";
    case SelectionPolicy::RoundedHalf: return "rounded_half";
    case SelectionPolicy::Swept: return "swept";
  }
  return "?";
}

SelectionPolicy policy_from_string(std::string_view s) {
  if (s == "paper" || s == "paper_formula") return SelectionPolicy::PaperFormula;
  if (s == "half" || s == "rounded_half") return SelectionPolicy::RoundedHalf;
  if (s == "sweep" || s == "swept") return SelectionPolicy::Swept;
  throw Error(ErrorKind::Parse, "unknown policy \"" + std::string(s) + "\"");
}

namespace {

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "phase,step,op,x,y,z,p_success\n";
  for (const auto& r : trace) {
    out << r.phase << ',' << r.step << ',' << to_string(r.op) << ',' << format17(r.point.x) << ','
        << format17(r.point.y) << ',' << format17(r.point.z) << ',' << format17(r.p_success)
        << '\n';
  }
}

Trace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "phase,step,op,x,y,z,p_success") {
    throw Error(ErrorKind::Parse, "trace CSV header mismatch");
  }
  Trace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw Error(ErrorKind::Parse, "trace row needs 7 fields: " + line);
    try {
      TraceRecord r;
      r.phase = std::stoi(cells[0]);
      r.step = std::stoull(cells[1]);
      r.op = op_from_string(cells[2]);
      r.point = {std::stod(cells[3]), std::stod(cells[4]), std::stod(cells[5])};
      r.p_success = std::stod(cells[6]);
      trace.push_back(r);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "malformed trace row: " + line);
    }
  }
  return trace;
}

double trace_distance(const Trace& a, const Trace& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].phase != b[i].phase || a[i].step != b[i].step || a[i].op != b[i].op) {
      return std::numeric_limits<double>::infinity();
    }
    worst = std::max(worst, max_abs_diff(a[i].point, b[i].point));
  }
  return worst;
}

}  // namespace igrover
