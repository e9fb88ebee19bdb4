// Command-line front end; talks to the core only through the C API.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "abl/abl.h"

namespace {

using Json = nlohmann::ordered_json;

struct CommonFlags {
  int n = 8;
  double e1 = 1.0;
  double t = 1.0;
  double dt = 0.0;
  std::string schedule = "linear";
  std::string integrator = "strang";
  std::uint64_t seed = 0;
  std::string out_path;
  std::string csv_path;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_time = true) {
  cmd->add_option("--n", f.n, "qubit count");
  cmd->add_option("--e1", f.e1, "final-Hamiltonian energy scale E1");
  if (with_time) cmd->add_option("--t", f.t, "total evolution time T");
  cmd->add_option("--dt", f.dt, "integrator step (0 = auto)");
  cmd->add_option("--schedule", f.schedule, "schedule kind")
      ->check(CLI::IsMember({"linear", "smoothstep"}));
  cmd->add_option("--integrator", f.integrator, "integration method")
      ->check(CLI::IsMember({"strang", "rk4"}));
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--out", f.out_path, "write the JSON record here instead of stdout");
  cmd->add_option("--csv", f.csv_path, "write the CSV table here");
}

void fill_common(Json& config, const CommonFlags& f) {
  config["n"] = f.n;
  config["e1"] = f.e1;
  config["t"] = f.t;
  config["dt"] = f.dt;
  config["schedule"] = f.schedule;
  config["integrator"] = f.integrator;
  config["seed"] = f.seed;
}

int execute(const Json& config, const CommonFlags& f) {
  abl_result* result = nullptr;
  const abl_status status = abl_run_json(config.dump().c_str(), &result);
  if (status != ABL_OK) {
    std::cerr << "error: " << abl_last_error() << '\n';
    return 2;
  }
  const std::string json = abl_result_json(result);
  if (f.out_path.empty()) {
    std::cout << json << '\n';
  } else {
    std::ofstream out(f.out_path);
    if (!out) {
      std::cerr << "error: cannot write " << f.out_path << '\n';
      abl_result_free(result);
      return 2;
    }
    out << json << '\n';
  }
  if (!f.csv_path.empty()) {
    const char* csv = abl_result_csv(result);
    if (csv == nullptr) {
      std::cerr << "warning: experiment produced no CSV table\n";
    } else {
      std::ofstream out(f.csv_path);
      if (!out) {
        std::cerr << "error: cannot write " << f.csv_path << '\n';
        abl_result_free(result);
        return 2;
      }
      out << csv;
    }
  }
  const int violation = abl_result_bound_violation(result);
  abl_result_free(result);
  return violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic state-vector simulator and runtime-bound checker"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(abl_version()));

  CommonFlags f;
  std::string experiment = "search";
  std::string f_table = "search";
  bool have_w = false;
  std::uint64_t w = 0;

  auto* run = app.add_subcommand("run", "single evolution with bound verification");
  add_common(run, f);
  run->add_option("--experiment", experiment, "problem kind")
      ->check(CLI::IsMember({"search", "projector"}));
  run->add_option("--f-table", f_table, "H0 eigenvalue table for projector problems")
      ->check(CLI::IsMember({"search", "twoclass", "fourclass"}));
  auto* w_opt = run->add_option("--w", w, "solution index (default: from seed)");

  auto* verify = app.add_subcommand("verify", "bound reports only");
  add_common(verify, f);
  verify->add_option("--experiment", experiment, "problem kind")
      ->check(CLI::IsMember({"search", "projector"}));
  verify->add_option("--f-table", f_table, "H0 eigenvalue table for projector problems");
  auto* vw_opt = verify->add_option("--w", w, "solution index (default: from seed)");

  auto* sweep = app.add_subcommand("sweep", "T-sweep or min-time n-sweep");
  add_common(sweep, f, /*with_time=*/false);
  std::string problem = "search";
  double p_target = 0.5;
  int n_min = 0, n_max = 0, t_steps = 16;
  double t_min = 0.0, t_max = 0.0;
  sweep->add_option("--problem", problem, "problem kind")
      ->check(CLI::IsMember({"search", "projector"}));
  sweep->add_option("--f-table", f_table, "H0 eigenvalue table for projector problems");
  sweep->add_option("--p-target", p_target, "target success probability (n-sweeps)");
  auto* nmin_opt = sweep->add_option("--n-min", n_min, "first qubit count");
  auto* nmax_opt = sweep->add_option("--n-max", n_max, "last qubit count");
  auto* tmin_opt = sweep->add_option("--t-min", t_min, "first T");
  auto* tmax_opt = sweep->add_option("--t-max", t_max, "last T");
  sweep->add_option("--t-steps", t_steps, "number of T samples");

  auto* sat = app.add_subcommand("sat", "3SAT instance pipeline");
  add_common(sat, f);
  std::string cnf_path;
  sat->add_option("--cnf", cnf_path, "DIMACS CNF file")->required();

  auto* zalka = app.add_subcommand("zalka-test", "randomized overlap-inequality test");
  add_common(zalka, f, /*with_time=*/false);
  std::uint64_t trials = 100000;
  zalka->add_option("--trials", trials, "number of Haar-random vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  Json config;
  if (run->parsed() || verify->parsed()) {
    config["experiment"] = run->parsed() ? experiment : "verify";
    if (verify->parsed()) config["problem"] = experiment;
    fill_common(config, f);
    config["f_table"] = f_table;
    have_w = w_opt->count() > 0 || vw_opt->count() > 0;
    if (have_w) config["w"] = w;
  } else if (sweep->parsed()) {
    config["experiment"] = "sweep";
    fill_common(config, f);
    config.erase("t");
    config["problem"] = problem;
    config["f_table"] = f_table;
    config["p_target"] = p_target;
    if (nmin_opt->count() > 0) config["n_min"] = n_min;
    if (nmax_opt->count() > 0) config["n_max"] = n_max;
    if (tmax_opt->count() > 0) {
      config["t_min"] = tmin_opt->count() > 0 ? t_min : t_max / t_steps;
      config["t_max"] = t_max;
    } else if (tmin_opt->count() > 0) {
      config["t_min"] = t_min;
    }
    config["t_steps"] = t_steps;
  } else if (sat->parsed()) {
    config["experiment"] = "sat";
    fill_common(config, f);
    config["cnf_path"] = cnf_path;
  } else if (zalka->parsed()) {
    config["experiment"] = "zalka-test";
    config["n"] = f.n;
    config["trials"] = trials;
    config["seed"] = f.seed;
  }
  return execute(config, f);
}
