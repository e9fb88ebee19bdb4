#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "abl/hamiltonian.hpp"
#include "abl/hilbert.hpp"

namespace abl {

struct TrajectorySample {
  double t = 0.0;
  double success = 0.0;       // prob mass on the solution set
  double beta0_sq = 0.0;      // |<u|psi>|^2
  double overlap_w_sq = 0.0;  // |<w|psi>|^2 for the first solution (0 if none)
  double norm = 0.0;
  double flow_derivative = 0.0;  // d/dt of the solution-set probability
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::uint64_t step_count = 0;
};

struct IntegratorConfig {
  enum class Method { strang, rk4 };
  Method method = Method::strang;
  double dt = 0.0;  // <= 0 selects min(1e-2, 0.1 / max energy)
  std::uint64_t sample_every = 1;
};

double default_dt(const AdiabaticProblem& problem);

/// Strang step: A(dt/2) B(dt) A(dt/2) with the interpolation coefficient
/// frozen at s(t + dt/2). Norm-preserving up to rounding.
void step_strang(const AdiabaticProblem& problem, StateVector& psi, double t, double dt);

/// Classical RK4 on psi' = -i H(t) psi; no renormalization (drift is a
/// diagnostic, not something to hide).
void step_rk4(const AdiabaticProblem& problem, StateVector& psi, double t, double dt);

using Observer = std::function<void(double t, const StateVector& psi)>;

/// Integrates from |u> at t=0 to t=T (last step shortened to land exactly on
/// T), recording samples at t=0, every sample_every steps, and t=T.
/// Observers are called at the same instants and must not mutate the state.
std::pair<StateVector, Trajectory> evolve(const AdiabaticProblem& problem,
                                          const IntegratorConfig& config,
                                          const std::vector<Observer>& observers = {});

/// Exact instantaneous d/dt sum_{w in targets} |<w|psi>|^2 under H(s(t)):
/// 2 sum_w Im(conj(psi_w) (H psi)_w). Matches the finite-difference
/// derivative of prob_mass along the flow.
double exact_flow_derivative(const AdiabaticProblem& problem, const StateVector& psi, double t,
                             std::span<const std::uint64_t> targets);

struct MinTimeOptions {
  double t_hi_start = 1.0;
  double tol_rel = 1e-2;
  double t_cap = 1e6;
  IntegratorConfig integrator;
};

/// Doubles T from t_hi_start until the final success probability reaches
/// p_target, then bisects to relative tolerance tol_rel; returns the upper
/// bracket (first observed crossing; success vs T need not be monotone).
/// Returns 0 when the initial state already meets p_target.
/// Throws std::runtime_error when T exceeds t_cap.
double min_time_search(const std::function<AdiabaticProblem(double)>& family, double p_target,
                       const MinTimeOptions& options = {});

}  // namespace abl
