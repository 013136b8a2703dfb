#include "igrover/reduced.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace igrover {

SpherePoint SpherePoint::from_counts(const ClassCounts& counts) {
  const auto n = static_cast<double>(counts.n);
  return {std::sqrt(static_cast<double>(counts.k00) / n),
          std::sqrt(static_cast<double>(counts.k10) / n),
          std::sqrt(static_cast<double>(counts.k11) / n)};
}

ReducedState initial_point(const ClassCounts& counts) {
  return SpherePoint::from_counts(counts).as_state();
}

ReducedState reflect_oracle_x(const ReducedState& p) { return {p.x, -p.y, -p.z}; }

ReducedState reflect_oracle_y(const ReducedState& p) { return {p.x, p.y, -p.z}; }

ReducedState reflect_diffusion(const ReducedState& p, const SpherePoint& s) {
  const double c = 2.0 * (p.x * s.x_s + p.y * s.y_s + p.z * s.z_s);
  return {c * s.x_s - p.x, c * s.y_s - p.y, c * s.z_s - p.z};
}

ReducedSimulator::ReducedSimulator(const ClassCounts& counts)
    : counts_(counts), s_(SpherePoint::from_counts(counts)), state_(s_.as_state()) {}

void ReducedSimulator::apply_oracle_x() {
  state_ = reflect_oracle_x(state_);
  ++count_x_;
}

void ReducedSimulator::apply_oracle_y() {
  state_ = reflect_oracle_y(state_);
  ++count_y_;
}

void ReducedSimulator::apply_diffusion() { state_ = reflect_diffusion(state_, s_); }

ReducedRun run_schedule(const ClassCounts& counts, const Schedule& sched) {
  ReducedSimulator sim(counts);
  ReducedRun run;
  run.trace.reserve(1 + 2 * (3 * sched.L + 1));

  auto record = [&](int phase, std::uint64_t step, OpKind op) {
    run.trace.push_back({phase, step, op, sim.state(), success_probability(sim.state())});
  };
  auto steps = [&](int phase, std::uint64_t count, bool use_y) {
    for (std::uint64_t k = 0; k < count; ++k) {
      if (use_y) {
        sim.apply_oracle_y();
        record(phase, k, OpKind::OracleY);
      } else {
        sim.apply_oracle_x();
        record(phase, k, OpKind::OracleX);
      }
      sim.apply_diffusion();
      record(phase, k, OpKind::Diffusion);
    }
  };

  record(0, 0, OpKind::Init);
  steps(1, sched.L, false);
  steps(2, 1, true);
  steps(3, 2 * sched.L, false);

  run.final_state = sim.state();
  run.stats = {sim.oracle_x_queries(), sim.oracle_y_queries(), 1};
  return run;
}

ReducedState run_schedule_final(const ClassCounts& counts, std::uint64_t L) {
  const SpherePoint s = SpherePoint::from_counts(counts);
  ReducedState p = s.as_state();
  for (std::uint64_t k = 0; k < L; ++k) p = reflect_diffusion(reflect_oracle_x(p), s);
  p = reflect_diffusion(reflect_oracle_y(p), s);
  for (std::uint64_t k = 0; k < 2 * L; ++k) p = reflect_diffusion(reflect_oracle_x(p), s);
  return p;
}

std::vector<ReducedState> phase1_points(const Trace& trace) {
  std::vector<ReducedState> points;
  for (const auto& r : trace) {
    if ((r.phase == 0 && r.op == OpKind::Init) || (r.phase == 1 && r.op == OpKind::Diffusion)) {
      points.push_back(r.point);
    }
  }
  return points;
}

std::vector<double> phase1_rotation_check(const Trace& trace) {
  const auto points = phase1_points(trace);
  if (points.size() < 3) {
    throw Error(ErrorKind::InsufficientTrace,
                "need at least 3 Phase-1 points, trace has " + std::to_string(points.size()));
  }
  std::vector<double> angles;
  angles.reserve(points.size() - 1);
  for (std::size_t k = 1; k < points.size(); ++k) {
    const Eigen::Vector3d a(points[k - 1].x, points[k - 1].y, points[k - 1].z);
    const Eigen::Vector3d b(points[k].x, points[k].y, points[k].z);
    angles.push_back(std::atan2(a.cross(b).norm(), a.dot(b)));
  }
  return angles;
}

double coplanarity_residual(const std::vector<ReducedState>& points) {
  if (points.size() < 4) return 0.0;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : points) centroid += Eigen::Vector3d(p.x, p.y, p.z);
  centroid /= static_cast<double>(points.size());

  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    const Eigen::Vector3d d = Eigen::Vector3d(p.x, p.y, p.z) - centroid;
    scatter += d * d.transpose();
  }
  // Eigenvalues ascending; the first eigenvector is the plane normal.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(scatter);
  const Eigen::Vector3d normal = solver.eigenvectors().col(0);

  double worst = 0.0;
  for (const auto& p : points) {
    worst = std::max(worst, std::abs(normal.dot(Eigen::Vector3d(p.x, p.y, p.z) - centroid)));
  }
  return worst;
}

}  // namespace igrover
