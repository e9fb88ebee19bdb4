#include "abl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace abl {

double derivative_bound_value(double n_dim, double p0_size, double max_f, double complement_dim) {
  return 2.0 * (p0_size / std::sqrt(n_dim)) * max_f * complement_dim;
}

double general_t_bound(double c, double n_dim, double p0_size, double max_f,
                       double complement_dim) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must be in (0,1)");
  const double numerator = c * std::sqrt(n_dim) - p0_size / std::sqrt(n_dim);
  if (numerator <= 0.0) return 0.0;  // initial state already succeeds
  const double denominator = 2.0 * p0_size * max_f * complement_dim;
  if (denominator == 0.0) return std::numeric_limits<double>::infinity();
  return numerator / denominator;
}

double beta0_floor(double e1, double t, double n_dim) {
  return 1.0 - 2.0 * e1 * t / std::sqrt(n_dim);
}

double success_ceiling(double e1, double t, double n_dim) {
  return 2.0 * e1 * t / std::sqrt(n_dim) + 1.0 / std::sqrt(n_dim);
}

double zalka_slack(const StateVector& psi, const StateVector& u, std::uint64_t w) {
  if (psi.n != u.n) throw std::invalid_argument("zalka_slack: dimension mismatch");
  if (w >= psi.dim()) throw std::invalid_argument("zalka_slack: w out of range");
  if (std::abs(norm(psi) - 1.0) > 1e-9 || std::abs(norm(u) - 1.0) > 1e-9) {
    throw std::invalid_argument("zalka_slack: inputs must be unit vectors");
  }
  const double w_overlap_sq = std::norm(psi.amps[w]);
  const double u_overlap_sq = std::norm(inner(u, psi));
  const double u_w = std::abs(u.amps[w]);
  return (1.0 + u_w) - (w_overlap_sq + u_overlap_sq);
}

bool any_violation(const std::vector<BoundReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const BoundReport& r) { return !r.holds; });
}

std::vector<BoundReport> verify_trajectory(const AdiabaticProblem& problem,
                                           const Trajectory& trajectory, double c) {
  if (trajectory.samples.empty()) {
    throw std::invalid_argument("verify_trajectory: empty trajectory");
  }
  for (const auto& s : trajectory.samples) {
    if (s.norm <= 0.0) throw std::invalid_argument("verify_trajectory: bad sample");
  }
  const double n_dim = static_cast<double>(problem.h1.table.size());
  const double p0_size = static_cast<double>(problem.solutions.size());
  const double max_f = problem.h0.max_value();
  const double q_k_size = static_cast<double>(problem.h0.class_sizes[problem.h0.largest_class()]);
  const double complement_dim = n_dim - q_k_size;
  const double total_time = problem.schedule.total_time;
  const auto& final_sample = trajectory.samples.back();

  std::vector<BoundReport> reports;

  // (a) probability-flow rate into the solution set.
  {
    BoundReport r;
    r.name = "flow_derivative_bound";
    r.analytic = derivative_bound_value(n_dim, p0_size, max_f, complement_dim);
    r.measured = 0.0;
    for (const auto& s : trajectory.samples) {
      r.measured = std::max(r.measured, std::abs(s.flow_derivative));
    }
    r.slack = r.analytic - r.measured;
    r.holds = r.slack >= -kTrajectorySlackTol;
    reports.push_back(r);
  }

  // (b) runtime lower bound at success level c; only binding when the run
  // actually reached c.
  if (p0_size > 0.0) {
    BoundReport r;
    r.name = "runtime_lower_bound";
    r.analytic = general_t_bound(c, n_dim, p0_size, max_f, complement_dim);
    r.measured = total_time;
    r.applicable = final_sample.success >= c;
    r.slack = r.applicable ? r.measured - r.analytic : 0.0;
    r.holds = !r.applicable || r.slack >= -kTrajectorySlackTol;
    reports.push_back(r);
  }

  // (c) projector problems: flow-out-of-|u> floor and the success ceiling.
  if (problem.projector_final) {
    const double e1 = problem.h1.max_value();
    BoundReport floor_r;
    floor_r.name = "beta0_floor";
    floor_r.slack = std::numeric_limits<double>::infinity();
    for (const auto& s : trajectory.samples) {
      const double slack = s.beta0_sq - beta0_floor(e1, s.t, n_dim);
      if (slack < floor_r.slack) {
        floor_r.slack = slack;
        floor_r.analytic = beta0_floor(e1, s.t, n_dim);
        floor_r.measured = s.beta0_sq;
      }
    }
    floor_r.holds = floor_r.slack >= -kTrajectorySlackTol;
    reports.push_back(floor_r);

    BoundReport ceil_r;
    ceil_r.name = "success_ceiling";
    ceil_r.analytic = success_ceiling(e1, total_time, n_dim);
    ceil_r.measured = final_sample.overlap_w_sq;
    ceil_r.slack = ceil_r.analytic - ceil_r.measured;
    ceil_r.holds = ceil_r.slack >= -kTrajectorySlackTol;
    reports.push_back(ceil_r);
  }

  // (d) overlap inequality along the whole trajectory (w = first solution).
  if (p0_size > 0.0) {
    BoundReport r;
    r.name = "zalka_overlap";
    r.analytic = 1.0 + 1.0 / std::sqrt(n_dim);  // |<u|w>| = 1/sqrt(N)
    r.slack = std::numeric_limits<double>::infinity();
    for (const auto& s : trajectory.samples) {
      const double lhs = s.overlap_w_sq + s.beta0_sq;
      if (r.analytic - lhs < r.slack) {
        r.slack = r.analytic - lhs;
        r.measured = lhs;
      }
    }
    r.holds = r.slack >= -kAlgebraicSlackTol;
    reports.push_back(r);
  }

  return reports;
}

}  // namespace abl
