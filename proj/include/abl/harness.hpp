#pragma once

#include <string>

#include <json.hpp>

namespace abl {

using Json = nlohmann::ordered_json;

/// Outcome of one harness invocation. `record` is the machine-truth JSON;
/// `csv` is the optional flat table (empty when the experiment has none).
struct HarnessResult {
  Json record;
  std::string csv;
  bool bound_violation = false;
};

/// Dispatches on config["experiment"]:
///   search | projector — single evolution + bound verification
///   sat                — DIMACS instance pipeline
///   sweep              — T-sweep or n-sweep (min-time scaling) with CSV rows
///   verify             — like search/projector but the record is bound
///                        reports only
///   zalka-test         — randomized overlap-inequality test
/// Identical config (including seed) yields byte-identical JSON; timing is
/// never part of the record.
/// Throws std::invalid_argument on malformed configs.
HarnessResult run_experiment(const Json& config);

/// Worker-pool width for sweeps: ABL_THREADS env var, else hardware
/// concurrency, clamped to [1, rows].
unsigned sweep_workers(std::size_t rows);

/// Uniform random 3SAT: `clauses` clauses of 3 distinct variables, random
/// polarities, reproducible from seed. Emits DIMACS text.
std::string random_cnf_dimacs(int n_vars, int n_clauses, std::uint64_t seed);

}  // namespace abl
