#include "abl/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace abl {

double default_dt(const AdiabaticProblem& problem) {
  const double max_e = problem.max_energy();
  return max_e > 0.0 ? std::min(1e-2, 0.1 / max_e) : 1e-2;
}

namespace {

// amps[z] *= scale * exp(-i theta F(z)), using the ladder so only
// ladder-many exponentials are evaluated.
void apply_phase(const DiagonalHamiltonian& h, double theta, double scale,
                 std::vector<cdouble>& amps) {
  std::vector<cdouble> phases(h.ladder.size());
  for (std::size_t k = 0; k < h.ladder.size(); ++k) {
    phases[k] = scale * std::exp(cdouble(0.0, -theta * h.ladder[k]));
  }
  for (std::size_t z = 0; z < amps.size(); ++z) amps[z] *= phases[h.class_index[z]];
}

// Half-step of the Hadamard-diagonal factor: W exp(-i theta F) W.
void apply_half_h0(const AdiabaticProblem& p, double theta, std::vector<cdouble>& amps) {
  const double inv_n = 1.0 / static_cast<double>(amps.size());
  fwht_raw(amps);
  apply_phase(p.h0, theta, inv_n, amps);
  fwht_raw(amps);
}

void scaled_minus_i_h(const AdiabaticProblem& p, double s, const StateVector& in, StateVector& out,
                      std::vector<cdouble>& scratch) {
  apply_hamiltonian(p, s, in, out, scratch);
  for (auto& a : out.amps) a = cdouble(a.imag(), -a.real());  // times -i
}

}  // namespace

void step_strang(const AdiabaticProblem& problem, StateVector& psi, double t, double dt) {
  const double sm = problem.schedule.value(t + dt / 2.0);
  const double theta = (dt / 2.0) * (1.0 - sm);
  apply_half_h0(problem, theta, psi.amps);
  apply_phase(problem.h1, dt * sm, 1.0, psi.amps);
  apply_half_h0(problem, theta, psi.amps);
}

void step_rk4(const AdiabaticProblem& problem, StateVector& psi, double t, double dt) {
  const double s1 = problem.schedule.value(t);
  const double s2 = problem.schedule.value(t + dt / 2.0);
  const double s4 = problem.schedule.value(t + dt);
  StateVector k1, k2, k3, k4, tmp;
  std::vector<cdouble> scratch;
  scaled_minus_i_h(problem, s1, psi, k1, scratch);
  tmp = psi;
  for (std::size_t z = 0; z < tmp.amps.size(); ++z) tmp.amps[z] += (dt / 2.0) * k1.amps[z];
  scaled_minus_i_h(problem, s2, tmp, k2, scratch);
  tmp = psi;
  for (std::size_t z = 0; z < tmp.amps.size(); ++z) tmp.amps[z] += (dt / 2.0) * k2.amps[z];
  scaled_minus_i_h(problem, s2, tmp, k3, scratch);
  tmp = psi;
  for (std::size_t z = 0; z < tmp.amps.size(); ++z) tmp.amps[z] += dt * k3.amps[z];
  scaled_minus_i_h(problem, s4, tmp, k4, scratch);
  for (std::size_t z = 0; z < psi.amps.size(); ++z) {
    psi.amps[z] +=
        (dt / 6.0) * (k1.amps[z] + 2.0 * k2.amps[z] + 2.0 * k3.amps[z] + k4.amps[z]);
  }
}

double exact_flow_derivative(const AdiabaticProblem& problem, const StateVector& psi, double t,
                             std::span<const std::uint64_t> targets) {
  const double s = problem.schedule.value(t);
  StateVector h_psi;
  std::vector<cdouble> scratch;
  apply_hamiltonian(problem, s, psi, h_psi, scratch);
  double acc = 0.0;
  for (std::uint64_t w : targets) {
    acc += std::imag(std::conj(psi.amps[w]) * h_psi.amps[w]);
  }
  return 2.0 * acc;
}

namespace {

TrajectorySample sample_state(const AdiabaticProblem& problem, const StateVector& psi, double t) {
  TrajectorySample s;
  s.t = t;
  s.success = prob_mass(psi, problem.solutions);
  cdouble u_overlap(0.0, 0.0);
  for (const auto& a : psi.amps) u_overlap += a;
  u_overlap /= std::sqrt(static_cast<double>(psi.dim()));
  s.beta0_sq = std::norm(u_overlap);
  s.overlap_w_sq = problem.solutions.empty() ? 0.0 : std::norm(psi.amps[problem.solutions[0]]);
  s.norm = norm(psi);
  s.flow_derivative = exact_flow_derivative(problem, psi, t, problem.solutions);
  return s;
}

}  // namespace

std::pair<StateVector, Trajectory> evolve(const AdiabaticProblem& problem,
                                          const IntegratorConfig& config,
                                          const std::vector<Observer>& observers) {
  problem.validate();
  const double total_time = problem.schedule.total_time;
  const double dt = config.dt > 0.0 ? config.dt : default_dt(problem);
  if (dt > total_time) throw std::invalid_argument("dt exceeds total time");
  if (config.sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  if (dt * problem.max_energy() > 0.5) {
    std::cerr << "warning: dt * max energy = " << dt * problem.max_energy()
              << " > 0.5; phase advance per step is large\n";
  }

  StateVector psi = uniform_state(problem.n);
  Trajectory traj;
  auto record = [&](double t) {
    traj.samples.push_back(sample_state(problem, psi, t));
    for (const auto& obs : observers) obs(t, psi);
  };
  record(0.0);

  const bool strang = config.method == IntegratorConfig::Method::strang;
  // Adjacent Strang half-steps of the H0 factor merge (same F, summed
  // angles), so between samples each step costs one full H0 factor.
  double pending_theta = 0.0;
  bool half_open = false;

  double t = 0.0;
  std::uint64_t step = 0;
  while (t < total_time) {
    double h = std::min(dt, total_time - t);
    // Guard against a vanishing final sliver from rounding.
    if (total_time - (t + h) < dt * 1e-12) h = total_time - t;
    if (strang) {
      const double sm = problem.schedule.value(t + h / 2.0);
      const double theta = (h / 2.0) * (1.0 - sm);
      apply_half_h0(problem, pending_theta + theta, psi.amps);
      apply_phase(problem.h1, h * sm, 1.0, psi.amps);
      pending_theta = theta;
      half_open = true;
    } else {
      step_rk4(problem, psi, t, h);
    }
    t += h;
    ++step;
    const bool at_end = t >= total_time;
    if (step % config.sample_every == 0 || at_end) {
      if (half_open) {
        apply_half_h0(problem, pending_theta, psi.amps);
        pending_theta = 0.0;
        half_open = false;
      }
      record(at_end ? total_time : t);
    }
    if (at_end) break;
  }
  traj.step_count = step;
  return {std::move(psi), std::move(traj)};
}

double min_time_search(const std::function<AdiabaticProblem(double)>& family, double p_target,
                       const MinTimeOptions& options) {
  if (!(p_target > 0.0 && p_target < 1.0)) {
    throw std::invalid_argument("p_target must be in (0,1)");
  }
  IntegratorConfig cfg = options.integrator;
  cfg.sample_every = std::numeric_limits<std::uint64_t>::max();  // endpoints only

  auto success_at = [&](double total_time) {
    const AdiabaticProblem problem = family(total_time);
    IntegratorConfig local = cfg;
    const double base_dt = cfg.dt > 0.0 ? cfg.dt : default_dt(problem);
    local.dt = std::min(base_dt, total_time);
    auto [psi, traj] = evolve(problem, local);
    (void)traj;
    return prob_mass(psi, problem.solutions);
  };

  {
    const AdiabaticProblem probe = family(options.t_hi_start);
    const double p0 = static_cast<double>(probe.solutions.size()) /
                      static_cast<double>(std::uint64_t{1} << probe.n);
    if (p_target <= p0) return 0.0;
  }

  double lo = 0.0;
  double hi = options.t_hi_start;
  while (success_at(hi) < p_target) {
    lo = hi;
    hi *= 2.0;
    if (hi > options.t_cap) {
      throw std::runtime_error("min_time_search: target success unreachable below T cap");
    }
  }
  while (hi - lo > options.tol_rel * hi) {
    const double mid = 0.5 * (lo + hi);
    if (success_at(mid) >= p_target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace abl
