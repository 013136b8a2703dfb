#include "igrover/fullstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace igrover {

std::uint64_t full_state_cap() {
  if (const char* env = std::getenv("IGROVER_FULL_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultFullCap;
}

double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t kBlock = 128;
  if (v.size() <= kBlock) {
    double s = 0.0;
    for (double d : v) s += d;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double FullState::norm() const {
  std::vector<double> sq(amplitudes.size());
  std::transform(amplitudes.begin(), amplitudes.end(), sq.begin(), [](double d) { return d * d; });
  return std::sqrt(pairwise_sum(sq));
}

FullState init_uniform(Index n) {
  return FullState{std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)))};
}

void apply_oracle_full(FullState& st, const ProblemInstance& inst, OracleKind which) {
  if (st.size() != inst.n()) {
    throw Error(ErrorKind::DimensionMismatch, "state has " + std::to_string(st.size()) +
                                                  " amplitudes, instance has n=" +
                                                  std::to_string(inst.n()));
  }
  const MembershipSpec& f = which == OracleKind::X ? inst.x_spec() : inst.y_spec();
  for (Index i = 0; i < inst.n(); ++i) {
    if (f.contains(i)) st.amplitudes[i] = -st.amplitudes[i];
  }
}

void apply_diffusion_full(FullState& st) {
  const double m = pairwise_sum(st.amplitudes) / static_cast<double>(st.size());
  const double two_m = 2.0 * m;
  for (double& d : st.amplitudes) d = two_m - d;
}

namespace {

struct ClassStats {
  double sum[3] = {0.0, 0.0, 0.0};
  double lo[3];
  double hi[3];
  Index count[3] = {0, 0, 0};

  ClassStats() {
    std::fill(std::begin(lo), std::end(lo), std::numeric_limits<double>::infinity());
    std::fill(std::begin(hi), std::end(hi), -std::numeric_limits<double>::infinity());
  }

  void add(int c, double d) {
    sum[c] += d;
    lo[c] = std::min(lo[c], d);
    hi[c] = std::max(hi[c], d);
    ++count[c];
  }

  double spread() const {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
      if (count[c] > 0) s = std::max(s, hi[c] - lo[c]);
    }
    return s;
  }

  // Weighted class amplitude √k·a with a the class mean.
  double weighted(int c) const {
    if (count[c] == 0) return 0.0;
    const auto k = static_cast<double>(count[c]);
    return std::sqrt(k) * (sum[c] / k);
  }

  ReducedState project() const {
    return {weighted(static_cast<int>(IndexClass::K00)), weighted(static_cast<int>(IndexClass::K10)),
            weighted(static_cast<int>(IndexClass::K11))};
  }
};

constexpr double kUniformityTol = 1e-9;

void require_uniform(const ClassStats& cs) {
  if (cs.spread() > kUniformityTol) {
    throw Error(ErrorKind::NotClassUniform,
                "within-class amplitude spread " + std::to_string(cs.spread()) + " exceeds 1e-9");
  }
}

}  // namespace

ReducedState project_to_reduced(const FullState& st, const ProblemInstance& inst) {
  if (st.size() != inst.n()) {
    throw Error(ErrorKind::DimensionMismatch, "state and instance sizes differ");
  }
  ClassStats cs;
  for (Index i = 0; i < inst.n(); ++i) {
    cs.add(static_cast<int>(classify(inst, i)), st.amplitudes[i]);
  }
  require_uniform(cs);
  return cs.project();
}

FullStateSimulator::FullStateSimulator(const ProblemInstance& inst, std::uint64_t cap)
    : counts_(partition_classes(inst)) {
  if (inst.n() > cap) {
    throw Error(ErrorKind::InstanceTooLarge, "n=" + std::to_string(inst.n()) +
                                                 " exceeds the full-state cap of " +
                                                 std::to_string(cap));
  }
  state_ = init_uniform(inst.n());
  marked_x_.reserve(counts_.k11 + counts_.k10);
  marked_y_.reserve(counts_.k11);
  inst.x_spec().for_each_member(inst.n(), [&](Index i) {
    marked_x_.push_back(i);
    return true;
  });
  inst.y_spec().for_each_member(inst.n(), [&](Index i) {
    marked_y_.push_back(i);
    return true;
  });
  labels_.assign(inst.n(), static_cast<std::uint8_t>(IndexClass::K00));
  for (Index i : marked_x_) labels_[i] = static_cast<std::uint8_t>(IndexClass::K10);
  for (Index i : marked_y_) labels_[i] = static_cast<std::uint8_t>(IndexClass::K11);
}

void FullStateSimulator::apply_oracle(OracleKind which) {
  const auto& marked = which == OracleKind::X ? marked_x_ : marked_y_;
  for (Index i : marked) state_.amplitudes[i] = -state_.amplitudes[i];
  if (which == OracleKind::X) {
    ++count_x_;
  } else {
    ++count_y_;
  }
}

ReducedState FullStateSimulator::project() const {
  ClassStats cs;
  for (std::size_t i = 0; i < labels_.size(); ++i) cs.add(labels_[i], state_.amplitudes[i]);
  require_uniform(cs);
  return cs.project();
}

double FullStateSimulator::class_spread() const {
  ClassStats cs;
  for (std::size_t i = 0; i < labels_.size(); ++i) cs.add(labels_[i], state_.amplitudes[i]);
  return cs.spread();
}

FullRun run_schedule_full(const ProblemInstance& inst, const Schedule& sched, std::uint64_t cap) {
  FullStateSimulator sim(inst, cap);
  FullRun run;
  run.trace.reserve(1 + 2 * (3 * sched.L + 1));

  auto record = [&](int phase, std::uint64_t step, OpKind op) {
    const ReducedState p = sim.project();
    run.trace.push_back({phase, step, op, p, p.z * p.z});
  };
  auto steps = [&](int phase, std::uint64_t count, OracleKind which) {
    const OpKind op = which == OracleKind::X ? OpKind::OracleX : OpKind::OracleY;
    for (std::uint64_t k = 0; k < count; ++k) {
      sim.apply_oracle(which);
      record(phase, k, op);
      sim.apply_diffusion();
      record(phase, k, OpKind::Diffusion);
    }
  };

  record(0, 0, OpKind::Init);
  steps(1, sched.L, OracleKind::X);
  steps(2, 1, OracleKind::Y);
  steps(3, 2 * sched.L, OracleKind::X);

  run.stats = {sim.oracle_x_queries(), sim.oracle_y_queries(), 1};
  run.final_state = sim.state();
  return run;
}

FullState run_schedule_full_final(const ProblemInstance& inst, std::uint64_t L,
                                  std::uint64_t cap) {
  FullStateSimulator sim(inst, cap);
  for (std::uint64_t k = 0; k < L; ++k) {
    sim.apply_oracle(OracleKind::X);
    sim.apply_diffusion();
  }
  sim.apply_oracle(OracleKind::Y);
  sim.apply_diffusion();
  for (std::uint64_t k = 0; k < 2 * L; ++k) {
    sim.apply_oracle(OracleKind::X);
    sim.apply_diffusion();
  }
  return sim.state();
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Rejection keeps the draw exact for any bound.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

Index sample_measurement(const FullState& st, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  Index last_nonzero = 0;
  for (Index i = 0; i < st.size(); ++i) {
    const double p = st.amplitudes[i] * st.amplitudes[i];
    if (p > 0.0) last_nonzero = i;
    acc += p;
    if (u < acc) return i;
  }
  // Rounding left the cumulative mass just short of u.
  return last_nonzero;
}

Index sample_measurement(const FullState& st, std::uint64_t seed) {
  Rng rng(seed);
  return sample_measurement(st, rng);
}

namespace {

constexpr char kMagic[4] = {'I', 'G', 'S', 'V'};

template <typename T>
void put_le(std::ostream& out, T v) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t k = 0; k < sizeof(T); ++k) bytes[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw Error(ErrorKind::Parse, "state dump truncated");
  }
  T v = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) v |= static_cast<T>(bytes[k]) << (8 * k);
  return v;
}

}  // namespace

void write_state_dump(std::ostream& out, const FullState& st) {
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, kStateDumpVersion);
  put_le<std::uint64_t>(out, st.size());
  for (double d : st.amplitudes) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(d));
}

FullState read_state_dump(std::istream& in) {
  char magic[4];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error(ErrorKind::Parse, "not an IGSV state dump");
  }
  if (get_le<std::uint32_t>(in) != kStateDumpVersion) {
    throw Error(ErrorKind::Parse, "unsupported state dump version");
  }
  const auto n = get_le<std::uint64_t>(in);
  FullState st;
  st.amplitudes.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    st.amplitudes.push_back(std::bit_cast<double>(get_le<std::uint64_t>(in)));
  }
  return st;
}

}  // namespace igrover
