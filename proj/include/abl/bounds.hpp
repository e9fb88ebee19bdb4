#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abl/evolution.hpp"
#include "abl/hamiltonian.hpp"
#include "abl/hilbert.hpp"

namespace abl {

/// One inequality evaluated against a trajectory. Slack is oriented so that
/// slack >= 0 means the bound holds (bound side minus measured side).
struct BoundReport {
  std::string name;
  double analytic = 0.0;
  double measured = 0.0;
  double slack = 0.0;
  bool applicable = true;
  bool holds = true;
};

// Tolerances: integrator error dominates trajectory slacks, rounding
// dominates algebraic ones.
inline constexpr double kTrajectorySlackTol = 1e-6;
inline constexpr double kAlgebraicSlackTol = 1e-9;

/// 2 (|P0|/sqrt(N)) max_k F_k (N - |Q_K|): ceiling on the total probability
/// flow rate into the solution set.
double derivative_bound_value(double n_dim, double p0_size, double max_f, double complement_dim);

/// Minimum T forcing final success >= c. +infinity when the denominator
/// vanishes with positive numerator; 0 when the bound is vacuous.
double general_t_bound(double c, double n_dim, double p0_size, double max_f,
                       double complement_dim);

/// 1 - 2 E1 T / sqrt(N); may be negative (vacuous), reported raw.
double beta0_floor(double e1, double t, double n_dim);

/// 2 E1 T / sqrt(N) + 1 / sqrt(N).
double success_ceiling(double e1, double t, double n_dim);

/// (1 + |<u|w>|) - (|<w|psi>|^2 + |<u|psi>|^2); nonnegative for unit vectors.
/// Throws std::invalid_argument when psi or u is not normalized.
double zalka_slack(const StateVector& psi, const StateVector& u, std::uint64_t w);

/// Evaluates every bound in scope against a recorded trajectory:
/// flow-derivative ceiling, runtime lower bound at level c, the beta0 floor
/// and success ceiling (projector problems), and the overlap inequality.
std::vector<BoundReport> verify_trajectory(const AdiabaticProblem& problem,
                                           const Trajectory& trajectory, double c);

bool any_violation(const std::vector<BoundReport>& reports);

}  // namespace abl
