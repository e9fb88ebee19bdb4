#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "abl/harness.hpp"
#include "abl/satio.hpp"

using namespace abl;

TEST_CASE("search run record") {
  const Json config = {{"experiment", "search"}, {"n", 6}, {"e1", 1.0},
                       {"t", 3.0},              {"seed", 7}};
  const HarnessResult result = run_experiment(config);
  const Json& rec = result.record;
  CHECK(rec["experiment"] == "search");
  CHECK(rec["N"] == 64);
  const double success = rec["final_success"].get<double>();
  CHECK(success >= 0.0);
  CHECK(success <= 1.0);
  CHECK(rec["norm_final"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rec["bounds"].is_array());
  CHECK(!rec["bounds"].empty());
  for (const auto& b : rec["bounds"]) {
    if (b["applicable"].get<bool>()) CHECK(b["slack"].get<double>() >= -1e-6);
  }
  CHECK(!result.bound_violation);
}

TEST_CASE("zero total time reports the initial distribution") {
  const Json config = {{"experiment", "search"}, {"n", 6}, {"t", 0.0}, {"seed", 1}};
  const auto rec = run_experiment(config).record;
  CHECK(rec["final_success"].get<double>() == doctest::Approx(1.0 / 64.0));
  CHECK(rec["step_count"] == 0);
}

TEST_CASE("determinism: same config, same bytes") {
  const Json config = {{"experiment", "projector"}, {"n", 6},        {"f_table", "twoclass"},
                       {"e1", 2.0},                 {"t", 2.0},      {"seed", 42},
                       {"integrator", "strang"},    {"dt", 1e-3}};
  const std::string a = run_experiment(config).record.dump(2);
  const std::string b = run_experiment(config).record.dump(2);
  CHECK(a == b);
}

TEST_CASE("T-sweep CSV columns") {
  const Json config = {{"experiment", "sweep"}, {"problem", "search"}, {"n", 4},
                       {"t_min", 0.5},          {"t_max", 2.0},        {"t_steps", 4},
                       {"seed", 3}};
  const HarnessResult result = run_experiment(config);
  CHECK(result.csv.rfind("T,success,ceiling,slack\n", 0) == 0);
  CHECK(result.record["rows"].size() == 4);
  for (const auto& row : result.record["rows"]) {
    CHECK(row["slack"].get<double>() >= -1e-6);
  }
}

TEST_CASE("n-sweep rows carry the bound and ratio") {
  const Json config = {{"experiment", "sweep"}, {"problem", "search"}, {"n_min", 4},
                       {"n_max", 5},            {"p_target", 0.5},     {"dt", 0.05},
                       {"seed", 3}};
  const HarnessResult result = run_experiment(config);
  CHECK(result.csv.rfind("n,N,minT,general_T_bound,ratio\n", 0) == 0);
  REQUIRE(result.record["rows"].size() == 2);
  for (const auto& row : result.record["rows"]) {
    CHECK(!row["unreachable"].get<bool>());
    CHECK(row["minT"].get<double>() >= row["general_T_bound"].get<double>());
  }
}

TEST_CASE("unreachable sweep rows are marked, not fatal") {
  const Json config = {{"experiment", "sweep"}, {"problem", "search"}, {"n_min", 4},
                       {"n_max", 4},            {"p_target", 0.99},    {"dt", 0.05},
                       {"t_cap", 8.0},          {"seed", 3}};
  const HarnessResult result = run_experiment(config);
  CHECK(result.record["rows"][0]["unreachable"].get<bool>());
}

TEST_CASE("empty sweep range is a usage error") {
  CHECK_THROWS_AS(run_experiment({{"experiment", "sweep"}, {"n_min", 6}, {"n_max", 5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_experiment({{"experiment", "sweep"}, {"n", 4}}), std::invalid_argument);
}

TEST_CASE("sat experiment on an inline satisfiable instance") {
  const Json config = {{"experiment", "sat"},
                       {"cnf_text", "p cnf 3 2\n1 2 3 0\n-1 2 3 0\n"},
                       {"t", 2.0},
                       {"seed", 1}};
  const auto rec = run_experiment(config).record;
  CHECK(rec["satisfiable"].get<bool>());
  CHECK(rec["solutions_count"].get<int>() == 6);
  CHECK(rec["final_success"].get<double>() > 6.0 / 8.0 - 0.5);
}

TEST_CASE("sat experiment flags unsatisfiable instances") {
  // (x1) and (-x1) as 2-literal padding-free contradiction via two clauses.
  const Json config = {{"experiment", "sat"},
                       {"cnf_text", "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n"},
                       {"t", 1.0}};
  const auto rec = run_experiment(config).record;
  CHECK(!rec["satisfiable"].get<bool>());
  CHECK(rec["solutions_count"].get<int>() == 0);
  CHECK(!rec.contains("final_success"));
}

TEST_CASE("zalka experiment is reproducible and nonnegative") {
  const Json config = {{"experiment", "zalka-test"}, {"n", 6}, {"trials", 500}, {"seed", 11}};
  const auto a = run_experiment(config).record;
  const auto b = run_experiment(config).record;
  CHECK(a["min_slack"].get<double>() == b["min_slack"].get<double>());
  CHECK(a["min_slack"].get<double>() >= -1e-12);
  CHECK(a["pass"].get<bool>());
}

TEST_CASE("unknown experiment is rejected") {
  CHECK_THROWS_AS(run_experiment({{"experiment", "nope"}}), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(Json::array()), std::invalid_argument);
}

TEST_CASE("random cnf generator is well formed and seeded") {
  const std::string a = random_cnf_dimacs(8, 32, 5);
  const std::string b = random_cnf_dimacs(8, 32, 5);
  CHECK(a == b);
  const CnfFormula cnf = parse_dimacs(a);
  CHECK(cnf.n_vars == 8);
  CHECK(cnf.clauses.size() == 32);
  for (const auto& clause : cnf.clauses) CHECK(clause.size() == 3);
}
