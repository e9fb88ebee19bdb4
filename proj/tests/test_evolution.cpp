#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "abl/bounds.hpp"
#include "abl/evolution.hpp"
#include "oracle.hpp"

using namespace abl;

namespace {

AdiabaticProblem zero_problem(int n, double total_time) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  AdiabaticProblem p;
  p.n = n;
  p.h0 = diagonal_from_table(Basis::hadamard, std::vector<double>(dim, 0.0));
  p.h1 = diagonal_from_table(Basis::computational, std::vector<double>(dim, 0.0));
  p.schedule = Schedule{Schedule::Kind::linear, total_time};
  p.solutions = {0};
  return p;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

}  // namespace

TEST_CASE("zero hamiltonian leaves the state alone") {
  const auto p = zero_problem(4, 1.0);
  StateVector s1 = uniform_state(4);
  step_strang(p, s1, 0.0, 0.1);
  StateVector s2 = uniform_state(4);
  step_rk4(p, s2, 0.0, 0.1);
  const StateVector u = uniform_state(4);
  for (std::uint64_t z = 0; z < u.dim(); ++z) {
    CHECK(std::abs(s1.amps[z] - u.amps[z]) < 1e-15);
    CHECK(std::abs(s2.amps[z] - u.amps[z]) < 1e-14);
  }
}

TEST_CASE("diagonal final hamiltonian evolves by exact phases") {
  // F = 0, so each strang step is exactly diag(exp(-i dt s_m E(z))).
  const int n = 3;
  const std::uint64_t dim = 8;
  AdiabaticProblem p;
  p.n = n;
  p.h0 = diagonal_from_table(Basis::hadamard, std::vector<double>(dim, 0.0));
  std::vector<double> e_table = {0, 1, 2, 3, 4, 5, 6, 7};
  p.h1 = diagonal_from_table(Basis::computational, e_table);
  p.schedule = Schedule{Schedule::Kind::linear, 1.0};
  p.solutions = {0};

  std::mt19937_64 rng(5);
  StateVector psi = testing::random_unit_state(n, rng);
  const StateVector before = psi;
  const double t = 0.25, dt = 0.125;
  step_strang(p, psi, t, dt);
  const double sm = p.schedule.value(t + dt / 2.0);
  for (std::uint64_t z = 0; z < dim; ++z) {
    const cdouble expected = before.amps[z] * std::exp(cdouble(0.0, -dt * sm * e_table[z]));
    CHECK(std::abs(psi.amps[z] - expected) < 1e-14);
  }
}

TEST_CASE("rk4 norm drift stays tiny") {
  const auto p = build_search_problem(6, 11, 1.0, 1.0);
  StateVector psi = uniform_state(6);
  const double dt = 1e-3;
  for (int i = 0; i < 100; ++i) step_rk4(p, psi, i * dt, dt);
  CHECK(std::abs(norm(psi) - 1.0) < 100 * 1e-12);
}

TEST_CASE("strang and rk4 agree") {
  const auto p = build_search_problem(4, 9, 1.0, 10.0);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.sample_every = 1000000;
  cfg.method = IntegratorConfig::Method::strang;
  auto [psi_s, traj_s] = evolve(p, cfg);
  cfg.method = IntegratorConfig::Method::rk4;
  auto [psi_r, traj_r] = evolve(p, cfg);
  CHECK(fidelity(psi_s, psi_r) >= 1.0 - 1e-8);
  CHECK(std::abs(norm(psi_s) - 1.0) < 1e-9);
}

TEST_CASE("strang is globally second order") {
  const auto p = build_search_problem(4, 3, 1.0, 2.0);
  auto run = [&](double dt) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.sample_every = 1000000000;
    return evolve(p, cfg).first;
  };
  const StateVector ref = run(2.0 / 4096.0);
  auto err = [&](const StateVector& psi) {
    double worst = 0.0;
    for (std::uint64_t z = 0; z < psi.dim(); ++z) {
      worst = std::max(worst, std::abs(psi.amps[z] - ref.amps[z]));
    }
    return worst;
  };
  const double e1 = err(run(2.0 / 256.0));
  const double e2 = err(run(2.0 / 512.0));
  const double ratio = e1 / e2;
  CHECK(ratio >= 3.3);
  CHECK(ratio <= 4.8);
}

TEST_CASE("observers do not perturb the evolution") {
  const auto p = build_search_problem(5, 17, 1.0, 3.0);
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.sample_every = 10;
  auto [plain, traj_plain] = evolve(p, cfg);
  int calls = 0;
  std::vector<Observer> observers = {[&calls](double, const StateVector&) { ++calls; }};
  auto [observed, traj_obs] = evolve(p, cfg, observers);
  CHECK(calls == static_cast<int>(traj_obs.samples.size()));
  REQUIRE(plain.amps.size() == observed.amps.size());
  CHECK(std::memcmp(plain.amps.data(), observed.amps.data(),
                    plain.amps.size() * sizeof(cdouble)) == 0);
}

TEST_CASE("near-zero total time keeps the initial distribution") {
  auto p = build_search_problem(6, 5, 1.0, 1e-6);
  IntegratorConfig cfg;
  cfg.dt = 1e-6;
  auto [psi, traj] = evolve(p, cfg);
  CHECK(prob_mass(psi, p.solutions) == doctest::Approx(1.0 / 64.0).epsilon(1e-9));
}

TEST_CASE("dt larger than T is a config error") {
  const auto p = build_search_problem(3, 1, 1.0, 0.5);
  IntegratorConfig cfg;
  cfg.dt = 1.0;
  CHECK_THROWS_AS(evolve(p, cfg), std::invalid_argument);
}

TEST_CASE("trajectory sampling covers both endpoints") {
  const auto p = build_search_problem(4, 2, 1.0, 1.0);
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.sample_every = 7;
  auto [psi, traj] = evolve(p, cfg);
  REQUIRE(traj.samples.size() >= 2);
  CHECK(traj.samples.front().t == 0.0);
  CHECK(traj.samples.back().t == 1.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  }
  CHECK(traj.step_count == 100);
}

TEST_CASE("flow derivative vanishes at t = 0") {
  const auto p = build_search_problem(6, 33, 1.0, 2.0);
  const double d = exact_flow_derivative(p, uniform_state(6), 0.0, p.solutions);
  CHECK(std::abs(d) < 1e-14);
}

TEST_CASE("flow derivative matches centered finite differences") {
  const auto p = build_search_problem(6, 42, 1.0, 4.0);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.sample_every = 500;
  auto [psi_final, traj] = evolve(p, cfg);
  (void)psi_final;

  // Re-derive the state at an interior sample and difference along the flow.
  StateVector psi = uniform_state(6);
  const double t_probe = 2.0;
  double t = 0.0;
  while (t < t_probe - 1e-12) {
    step_strang(p, psi, t, 1e-3);
    t += 1e-3;
  }
  const double exact = exact_flow_derivative(p, psi, t_probe, p.solutions);
  const double delta = 1e-6;
  StateVector fwd = psi, bwd = psi;
  step_strang(p, fwd, t_probe, delta);
  step_strang(p, bwd, t_probe, -delta);
  const double fd =
      (prob_mass(fwd, p.solutions) - prob_mass(bwd, p.solutions)) / (2.0 * delta);
  CHECK(std::abs(exact - fd) < 1e-6);
}

TEST_CASE("min_time_search returns 0 for an already-satisfied target") {
  auto family = [](double total_time) {
    return build_search_problem(4, 1, 1.0, total_time);
  };
  CHECK(min_time_search(family, 1.0 / 16.0) == 0.0);
}

TEST_CASE("min_time_search meets the analytic lower bound") {
  auto family = [](double total_time) {
    return build_search_problem(6, 21, 1.0, total_time);
  };
  MinTimeOptions opts;
  opts.integrator.dt = 0.05;
  const double min_t = min_time_search(family, 0.5, opts);
  const double bound = general_t_bound(0.5, 64.0, 1.0, 1.0, 1.0);
  CHECK(min_t >= bound);
  // First crossing, so the run just below must miss the target.
  CHECK(min_t > 0.0);
}

TEST_CASE("min_time_search reports unreachable targets") {
  auto family = [](double total_time) {
    return build_search_problem(6, 21, 1.0, total_time);
  };
  MinTimeOptions opts;
  opts.t_cap = 4.0;
  opts.integrator.dt = 0.05;
  CHECK_THROWS_AS(min_time_search(family, 0.9, opts), std::runtime_error);
}
