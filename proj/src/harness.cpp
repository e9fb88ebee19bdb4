#include "abl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "abl/bounds.hpp"
#include "abl/evolution.hpp"
#include "abl/hamiltonian.hpp"
#include "abl/satio.hpp"

namespace abl {

namespace {

Schedule::Kind parse_schedule(const std::string& name) {
  if (name == "linear") return Schedule::Kind::linear;
  if (name == "smoothstep") return Schedule::Kind::smoothstep;
  throw std::invalid_argument("unknown schedule '" + name + "'");
}

IntegratorConfig::Method parse_method(const std::string& name) {
  if (name == "strang") return IntegratorConfig::Method::strang;
  if (name == "rk4") return IntegratorConfig::Method::rk4;
  throw std::invalid_argument("unknown integrator '" + name + "'");
}

std::vector<double> make_f_table(const std::string& kind, int n) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> table(dim, 0.0);
  if (kind == "search") {
    for (std::uint64_t z = 1; z < dim; ++z) table[z] = 1.0;
  } else if (kind == "twoclass") {
    for (std::uint64_t z = dim / 2; z < dim; ++z) table[z] = 1.0;
  } else if (kind == "fourclass") {
    if (n < 2) throw std::invalid_argument("fourclass F table needs n >= 2");
    for (std::uint64_t z = 0; z < dim; ++z) table[z] = static_cast<double>(z & 3);
  } else {
    throw std::invalid_argument("unknown F table '" + kind + "'");
  }
  return table;
}

std::uint64_t pick_target(const Json& config, int n, std::uint64_t seed) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (config.contains("w")) {
    const std::uint64_t w = config["w"].get<std::uint64_t>();
    if (w >= dim) throw std::invalid_argument("w out of range");
    return w;
  }
  std::mt19937_64 rng(seed);
  return std::uniform_int_distribution<std::uint64_t>(0, dim - 1)(rng);
}

struct ResolvedRun {
  int n = 0;
  double e1 = 1.0;
  double total_time = 1.0;
  std::string schedule = "linear";
  std::string integrator = "strang";
  double dt = 0.0;
  std::uint64_t sample_every = 0;  // 0 = auto
  std::uint64_t seed = 0;
  double c = 0.5;
  std::string f_table = "search";
};

ResolvedRun resolve_run(const Json& config) {
  ResolvedRun r;
  if (!config.contains("n")) throw std::invalid_argument("missing 'n'");
  r.n = config["n"].get<int>();
  r.e1 = config.value("e1", 1.0);
  r.total_time = config.value("t", 1.0);
  r.schedule = config.value("schedule", std::string("linear"));
  r.integrator = config.value("integrator", std::string("strang"));
  r.dt = config.value("dt", 0.0);
  r.sample_every = config.value("sample_every", std::uint64_t{0});
  r.seed = config.value("seed", std::uint64_t{0});
  r.c = config.value("c", 0.5);
  r.f_table = config.value("f_table", std::string("search"));
  return r;
}

IntegratorConfig make_integrator(const ResolvedRun& r, const AdiabaticProblem& problem) {
  IntegratorConfig cfg;
  cfg.method = parse_method(r.integrator);
  cfg.dt = r.dt > 0.0 ? r.dt : default_dt(problem);
  if (r.sample_every > 0) {
    cfg.sample_every = r.sample_every;
  } else {
    const auto steps = static_cast<std::uint64_t>(std::ceil(problem.schedule.total_time / cfg.dt));
    cfg.sample_every = std::max<std::uint64_t>(1, steps / 512);
  }
  return cfg;
}

Json bounds_to_json(const std::vector<BoundReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) {
    arr.push_back({{"name", r.name},
                   {"analytic", r.analytic},
                   {"measured", r.measured},
                   {"slack", r.slack},
                   {"applicable", r.applicable},
                   {"holds", r.holds}});
  }
  return arr;
}

Json echo_config(const ResolvedRun& r, const std::string& experiment) {
  return Json{{"experiment", experiment}, {"n", r.n},
              {"e1", r.e1},              {"t", r.total_time},
              {"schedule", r.schedule},  {"integrator", r.integrator},
              {"dt", r.dt},              {"seed", r.seed},
              {"c", r.c},               {"f_table", r.f_table}};
}

HarnessResult run_single(const Json& config, const std::string& experiment, bool verify_only) {
  const ResolvedRun r = resolve_run(config);
  const std::uint64_t dim = std::uint64_t{1} << r.n;
  const std::uint64_t w = pick_target(config, r.n, r.seed);

  HarnessResult out;
  Json& rec = out.record;
  rec["experiment"] = verify_only ? "verify" : experiment;
  rec["config"] = echo_config(r, experiment);
  rec["config"]["w"] = w;
  rec["N"] = dim;

  if (r.total_time <= 0.0) {
    // No evolution: the start state is the answer.
    rec["final_success"] = 1.0 / static_cast<double>(dim);
    rec["beta0_sq_final"] = 1.0;
    rec["norm_final"] = 1.0;
    rec["step_count"] = 0;
    rec["bounds"] = Json::array();
    rec["bound_violation"] = false;
    return out;
  }

  AdiabaticProblem problem =
      experiment == "search"
          ? build_search_problem(r.n, w, r.e1, r.total_time, parse_schedule(r.schedule))
          : build_projector_problem(r.n, w, make_f_table(r.f_table, r.n), r.e1, r.total_time,
                                    parse_schedule(r.schedule));
  const IntegratorConfig cfg = make_integrator(r, problem);
  auto [psi, traj] = evolve(problem, cfg);
  const auto reports = verify_trajectory(problem, traj, r.c);
  out.bound_violation = any_violation(reports);

  if (!verify_only) {
    rec["final_success"] = traj.samples.back().success;
    rec["beta0_sq_final"] = traj.samples.back().beta0_sq;
    rec["norm_final"] = traj.samples.back().norm;
    rec["step_count"] = traj.step_count;
    rec["samples"] = traj.samples.size();
  }
  rec["bounds"] = bounds_to_json(reports);
  rec["bound_violation"] = out.bound_violation;

  if (config.value("csv", false) && !verify_only) {
    double min_slack = std::numeric_limits<double>::infinity();
    for (const auto& rep : reports) {
      if (rep.applicable) min_slack = std::min(min_slack, rep.slack);
    }
    std::ostringstream csv;
    csv << "experiment,n,N,e1,t,final_success,beta0_sq_final,min_slack\n";
    csv << experiment << ',' << r.n << ',' << dim << ',' << r.e1 << ',' << r.total_time << ','
        << traj.samples.back().success << ',' << traj.samples.back().beta0_sq << ',' << min_slack
        << '\n';
    out.csv = csv.str();
  }
  return out;
}

AdiabaticProblem build_sweep_problem(const Json& config, int n, std::uint64_t w, double e1,
                                     double total_time, Schedule::Kind kind) {
  const std::string problem_kind = config.value("problem", std::string("search"));
  if (problem_kind == "search") return build_search_problem(n, w, e1, total_time, kind);
  if (problem_kind == "projector") {
    const std::string f_kind = config.value("f_table", std::string("search"));
    return build_projector_problem(n, w, make_f_table(f_kind, n), e1, total_time, kind);
  }
  throw std::invalid_argument("unknown sweep problem '" + problem_kind + "'");
}

HarnessResult run_sweep(const Json& config) {
  HarnessResult out;
  Json& rec = out.record;
  rec["experiment"] = "sweep";

  const double e1 = config.value("e1", 1.0);
  const auto kind = parse_schedule(config.value("schedule", std::string("linear")));
  const std::uint64_t seed = config.value("seed", std::uint64_t{0});
  const double p_target = config.value("p_target", 0.5);
  const double c = config.value("c", p_target);

  if (config.contains("n_min") && config.contains("n_max")) {
    const int n_min = config["n_min"].get<int>();
    const int n_max = config["n_max"].get<int>();
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("empty n range");
    rec["mode"] = "n";
    rec["p_target"] = p_target;

    struct Row {
      int n;
      double min_t = std::numeric_limits<double>::quiet_NaN();
      double bound = 0.0;
      bool unreachable = false;
    };
    std::vector<Row> rows(static_cast<std::size_t>(n_max - n_min + 1));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].n = n_min + static_cast<int>(i);

    const double dt = config.value("dt", 0.0);
    const double t_cap = config.value("t_cap", 1e6);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= rows.size()) return;
        Row& row = rows[i];
        const std::uint64_t dim = std::uint64_t{1} << row.n;
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(row.n));
        const std::uint64_t w =
            std::uniform_int_distribution<std::uint64_t>(0, dim - 1)(rng);
        auto family = [&config, row, w, e1, kind](double total_time) {
          return build_sweep_problem(config, row.n, w, e1, total_time, kind);
        };
        AdiabaticProblem probe = family(1.0);
        MinTimeOptions opts;
        opts.t_hi_start = config.value("t_hi_start", 1.0);
        opts.t_cap = t_cap;
        opts.integrator.dt = dt;
        row.bound = general_t_bound(
            p_target, static_cast<double>(dim), static_cast<double>(probe.solutions.size()),
            probe.h0.max_value(),
            static_cast<double>(dim - probe.h0.class_sizes[probe.h0.largest_class()]));
        try {
          row.min_t = min_time_search(family, p_target, opts);
        } catch (const std::runtime_error&) {
          row.unreachable = true;
        }
      }
    };
    const unsigned n_workers = sweep_workers(rows.size());
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::ostringstream csv;
    csv << "n,N,minT,general_T_bound,ratio\n";
    Json json_rows = Json::array();
    bool violation = false;
    for (const Row& row : rows) {
      const std::uint64_t dim = std::uint64_t{1} << row.n;
      const double ratio = row.bound > 0.0 ? row.min_t / row.bound
                                           : std::numeric_limits<double>::quiet_NaN();
      csv << row.n << ',' << dim << ',' << row.min_t << ',' << row.bound << ',' << ratio << '\n';
      json_rows.push_back({{"n", row.n},
                           {"N", dim},
                           {"minT", row.min_t},
                           {"general_T_bound", row.bound},
                           {"ratio", ratio},
                           {"unreachable", row.unreachable}});
      if (!row.unreachable && row.min_t < row.bound - kTrajectorySlackTol) violation = true;
    }
    rec["rows"] = json_rows;
    rec["bound_violation"] = violation;
    out.bound_violation = violation;
    out.csv = csv.str();
    return out;
  }

  if (config.contains("t_min") && config.contains("t_max")) {
    const double t_min = config["t_min"].get<double>();
    const double t_max = config["t_max"].get<double>();
    const int t_steps = config.value("t_steps", 16);
    if (!(t_min > 0.0) || t_max < t_min || t_steps < 1) {
      throw std::invalid_argument("empty T range");
    }
    if (!config.contains("n")) throw std::invalid_argument("missing 'n'");
    const int n = config["n"].get<int>();
    const std::uint64_t dim = std::uint64_t{1} << n;
    rec["mode"] = "t";

    std::mt19937_64 rng(seed);
    const std::uint64_t w = config.contains("w")
                                ? config["w"].get<std::uint64_t>()
                                : std::uniform_int_distribution<std::uint64_t>(0, dim - 1)(rng);

    struct Row {
      double total_time;
      double success = 0.0;
      double ceiling = 0.0;
      double slack = 0.0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(t_steps));
    for (int i = 0; i < t_steps; ++i) {
      rows[static_cast<std::size_t>(i)].total_time =
          t_steps == 1 ? t_min : t_min + (t_max - t_min) * i / (t_steps - 1);
    }
    const double dt = config.value("dt", 0.0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= rows.size()) return;
        Row& row = rows[i];
        AdiabaticProblem problem =
            build_sweep_problem(config, n, w, e1, row.total_time, kind);
        IntegratorConfig icfg;
        icfg.dt = dt > 0.0 ? std::min(dt, row.total_time) : default_dt(problem);
        icfg.dt = std::min(icfg.dt, row.total_time);
        icfg.sample_every = std::numeric_limits<std::uint64_t>::max();
        auto [psi, traj] = evolve(problem, icfg);
        (void)traj;
        row.success = prob_mass(psi, problem.solutions);
        row.ceiling =
            success_ceiling(problem.h1.max_value(), row.total_time, static_cast<double>(dim));
        row.slack = row.ceiling - row.success;
      }
    };
    const unsigned n_workers = sweep_workers(rows.size());
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::ostringstream csv;
    csv << "T,success,ceiling,slack\n";
    Json json_rows = Json::array();
    bool violation = false;
    for (const Row& row : rows) {
      csv << row.total_time << ',' << row.success << ',' << row.ceiling << ',' << row.slack
          << '\n';
      json_rows.push_back({{"T", row.total_time},
                           {"success", row.success},
                           {"ceiling", row.ceiling},
                           {"slack", row.slack}});
      if (row.slack < -kTrajectorySlackTol) violation = true;
    }
    rec["n"] = n;
    rec["w"] = w;
    rec["rows"] = json_rows;
    rec["bound_violation"] = violation;
    out.bound_violation = violation;
    out.csv = csv.str();
    return out;
  }

  throw std::invalid_argument("sweep needs n_min/n_max or t_min/t_max");
}

HarnessResult run_sat(const Json& config) {
  std::string text;
  if (config.contains("cnf_text")) {
    text = config["cnf_text"].get<std::string>();
  } else if (config.contains("cnf_path")) {
    std::ifstream in(config["cnf_path"].get<std::string>());
    if (!in) throw std::invalid_argument("cannot open " + config["cnf_path"].get<std::string>());
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    throw std::invalid_argument("sat experiment needs cnf_path or cnf_text");
  }
  const CnfFormula cnf = parse_dimacs(text);
  if (cnf.n_vars > 20) throw std::invalid_argument("sat experiment limited to 20 variables");

  const double total_time = config.value("t", 1.0);
  const auto kind = parse_schedule(config.value("schedule", std::string("linear")));
  AdiabaticProblem problem = build_3sat_problem(cnf, total_time, kind);

  HarnessResult out;
  Json& rec = out.record;
  rec["experiment"] = "sat";
  rec["n_vars"] = cnf.n_vars;
  rec["clauses"] = cnf.clauses.size();
  rec["t"] = total_time;
  rec["solutions_count"] = problem.solutions.size();
  rec["satisfiable"] = !problem.solutions.empty();

  IntegratorConfig cfg;
  cfg.method = parse_method(config.value("integrator", std::string("strang")));
  const double dt = config.value("dt", 0.0);
  cfg.dt = dt > 0.0 ? dt : default_dt(problem);
  const auto steps = static_cast<std::uint64_t>(std::ceil(total_time / cfg.dt));
  cfg.sample_every = std::max<std::uint64_t>(1, steps / 512);
  auto [psi, traj] = evolve(problem, cfg);
  rec["step_count"] = traj.step_count;
  rec["norm_final"] = traj.samples.back().norm;

  if (problem.solutions.empty()) {
    rec["note"] = "unsatisfiable instance; success metrics omitted";
    rec["bounds"] = Json::array();
    rec["bound_violation"] = false;
    return out;
  }
  rec["final_success"] = traj.samples.back().success;
  const auto reports = verify_trajectory(problem, traj, config.value("c", 0.5));
  rec["bounds"] = bounds_to_json(reports);
  out.bound_violation = any_violation(reports);
  rec["bound_violation"] = out.bound_violation;
  return out;
}

HarnessResult run_zalka(const Json& config) {
  if (!config.contains("n")) throw std::invalid_argument("missing 'n'");
  const int n = config["n"].get<int>();
  const std::uint64_t trials = config.value("trials", std::uint64_t{1000});
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::uint64_t seed = config.value("seed", std::uint64_t{0});
  const std::uint64_t dim = std::uint64_t{1} << n;

  std::mt19937_64 rng(seed);
  const std::uint64_t w = std::uniform_int_distribution<std::uint64_t>(0, dim - 1)(rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const StateVector u = uniform_state(n);

  StateVector psi;
  psi.n = n;
  psi.amps.resize(dim);
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    double norm_sq = 0.0;
    for (auto& a : psi.amps) {
      a = cdouble(gauss(rng), gauss(rng));
      norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& a : psi.amps) a *= scale;
    min_slack = std::min(min_slack, zalka_slack(psi, u, w));
  }

  HarnessResult out;
  out.record = Json{{"experiment", "zalka-test"}, {"n", n},           {"trials", trials},
                    {"seed", seed},               {"w", w},           {"min_slack", min_slack},
                    {"pass", min_slack >= -1e-9}};
  out.bound_violation = min_slack < -1e-9;
  out.record["bound_violation"] = out.bound_violation;
  return out;
}

}  // namespace

unsigned sweep_workers(std::size_t rows) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("ABL_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
  }
  return std::max<unsigned>(1, std::min<unsigned>(workers, static_cast<unsigned>(rows)));
}

std::string random_cnf_dimacs(int n_vars, int n_clauses, std::uint64_t seed) {
  if (n_vars < 3) throw std::invalid_argument("random CNF needs at least 3 variables");
  if (n_clauses < 1) throw std::invalid_argument("random CNF needs at least 1 clause");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_var(1, n_vars);
  std::uniform_int_distribution<int> coin(0, 1);
  std::ostringstream out;
  out << "p cnf " << n_vars << ' ' << n_clauses << '\n';
  for (int c = 0; c < n_clauses; ++c) {
    int v1 = pick_var(rng);
    int v2, v3;
    do { v2 = pick_var(rng); } while (v2 == v1);
    do { v3 = pick_var(rng); } while (v3 == v1 || v3 == v2);
    for (int v : {v1, v2, v3}) out << (coin(rng) ? v : -v) << ' ';
    out << "0\n";
  }
  return out.str();
}

HarnessResult run_experiment(const Json& config) {
  if (!config.is_object()) throw std::invalid_argument("config must be a JSON object");
  const std::string experiment = config.value("experiment", std::string());
  if (experiment == "search" || experiment == "projector") {
    return run_single(config, experiment, /*verify_only=*/false);
  }
  if (experiment == "verify") {
    const std::string kind = config.value("problem", std::string("search"));
    Json inner = config;
    return run_single(inner, kind, /*verify_only=*/true);
  }
  if (experiment == "sweep") return run_sweep(config);
  if (experiment == "sat") return run_sat(config);
  if (experiment == "zalka-test") return run_zalka(config);
  throw std::invalid_argument("unknown experiment '" + experiment + "'");
}

}  // namespace abl
