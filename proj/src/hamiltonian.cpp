#include "abl/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "abl/satio.hpp"

namespace abl {

EigenLadder EigenLadder::validated(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("eigen ladder must be nonempty");
  if (values.front() != 0.0) throw std::invalid_argument("eigen ladder must start at 0");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw std::invalid_argument("eigen ladder must be strictly increasing");
    }
  }
  return EigenLadder{std::move(values)};
}

Partition Partition::from_class_function(int n, std::size_t num_classes,
                                         std::function<std::size_t(std::uint64_t)> class_of) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("partition: bad qubit count");
  if (num_classes == 0) throw std::invalid_argument("partition: need at least one class");
  return Partition{n, num_classes, std::move(class_of)};
}

Partition Partition::from_explicit_classes(int n,
                                           const std::vector<std::vector<std::uint64_t>>& classes) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("partition: bad qubit count");
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::size_t> index(dim, classes.size());
  std::uint64_t covered = 0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].empty()) throw std::invalid_argument("partition: empty class");
    for (std::uint64_t z : classes[k]) {
      if (z >= dim) throw std::invalid_argument("partition: element out of range");
      if (index[z] != classes.size()) throw std::invalid_argument("partition: classes overlap");
      index[z] = k;
      ++covered;
    }
  }
  if (covered != dim) throw std::invalid_argument("partition: classes do not cover {0,1}^n");
  auto shared = std::make_shared<std::vector<std::size_t>>(std::move(index));
  return Partition{n, classes.size(),
                   [shared](std::uint64_t z) { return (*shared)[z]; }};
}

std::size_t DiagonalHamiltonian::largest_class() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < class_sizes.size(); ++k) {
    if (class_sizes[k] > class_sizes[best]) best = k;
  }
  return best;
}

DiagonalHamiltonian make_diagonal(const Partition& partition, const EigenLadder& ladder,
                                  Basis basis) {
  if (ladder.values.size() != partition.num_classes) {
    throw std::invalid_argument("ladder length must equal class count");
  }
  DiagonalHamiltonian h;
  h.basis = basis;
  h.ladder = ladder.values;
  const std::uint64_t dim = std::uint64_t{1} << partition.n;
  h.table.resize(dim);
  h.class_index.resize(dim);
  h.class_sizes.assign(partition.num_classes, 0);
  for (std::uint64_t z = 0; z < dim; ++z) {
    const std::size_t k = partition.class_of(z);
    if (k >= partition.num_classes) {
      throw std::invalid_argument("partition: class index out of range");
    }
    h.table[z] = h.ladder[k];
    h.class_index[z] = static_cast<std::uint32_t>(k);
    ++h.class_sizes[k];
  }
  for (std::size_t k = 0; k < h.class_sizes.size(); ++k) {
    if (h.class_sizes[k] == 0) {
      throw std::invalid_argument("partition: class " + std::to_string(k) + " is empty");
    }
  }
  return h;
}

DiagonalHamiltonian make_diagonal(const Partition& partition, std::vector<double> class_values,
                                  Basis basis) {
  // Classes may be listed in any order; canonicalize by eigenvalue.
  std::vector<std::size_t> order(class_values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return class_values[a] < class_values[b]; });
  std::vector<double> sorted;
  std::vector<std::size_t> remap(class_values.size());
  sorted.reserve(class_values.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    sorted.push_back(class_values[order[rank]]);
    remap[order[rank]] = rank;
  }
  auto inner = partition.class_of;
  Partition relabeled = Partition::from_class_function(
      partition.n, partition.num_classes,
      [inner, remap](std::uint64_t z) { return remap[inner(z)]; });
  return make_diagonal(relabeled, EigenLadder::validated(std::move(sorted)), basis);
}

DiagonalHamiltonian diagonal_from_table(Basis basis, std::vector<double> table) {
  if (table.empty()) throw std::invalid_argument("empty eigenvalue table");
  std::map<double, std::uint32_t> rank;
  for (double v : table) rank.emplace(v, 0);
  DiagonalHamiltonian h;
  h.basis = basis;
  h.ladder.reserve(rank.size());
  std::uint32_t next = 0;
  for (auto& [value, idx] : rank) {
    idx = next++;
    h.ladder.push_back(value);
  }
  h.class_index.resize(table.size());
  h.class_sizes.assign(rank.size(), 0);
  for (std::size_t z = 0; z < table.size(); ++z) {
    const std::uint32_t k = rank[table[z]];
    h.class_index[z] = k;
    ++h.class_sizes[k];
  }
  h.table = std::move(table);
  return h;
}

double Schedule::value(double t) const {
  double x = t / total_time;
  x = std::clamp(x, 0.0, 1.0);
  switch (kind) {
    case Kind::linear:
      return x;
    case Kind::smoothstep:
      return x * x * (3.0 - 2.0 * x);
  }
  return x;
}

void AdiabaticProblem::validate() const {
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (h0.table.size() != dim || h1.table.size() != dim) {
    throw std::invalid_argument("hamiltonian table size mismatch");
  }
  if (h0.basis != Basis::hadamard || h1.basis != Basis::computational) {
    throw std::invalid_argument("H0 must be hadamard-basis, H1 computational-basis");
  }
  if (h0.table[0] != 0.0) throw std::invalid_argument("H0 must vanish on 0^n (|u> ground state)");
  if (!(schedule.total_time > 0.0)) throw std::invalid_argument("total time must be positive");
  for (std::uint64_t w : solutions) {
    if (w >= dim || h1.table[w] != 0.0) {
      throw std::invalid_argument("H1 must vanish exactly on the solution set");
    }
  }
  // With a nontrivial H1 the zero class must be exactly the solution set.
  if (!solutions.empty() && h1.ladder.size() > 1) {
    if (h1.ladder.front() != 0.0 || h1.class_sizes.front() != solutions.size()) {
      throw std::invalid_argument("H1 must vanish exactly on the solution set");
    }
  }
}

AdiabaticProblem build_search_problem(int n, std::uint64_t w, double e1, double total_time,
                                      Schedule::Kind kind) {
  // h_search(z) = 0 iff z = 0^n, so H0 = I - |u><u| up to the basis change.
  std::vector<double> f_table(std::uint64_t{1} << n, 1.0);
  f_table[0] = 0.0;
  return build_projector_problem(n, w, std::move(f_table), e1, total_time, kind);
}

AdiabaticProblem build_projector_problem(int n, std::uint64_t w, std::vector<double> f_table,
                                         double e1, double total_time, Schedule::Kind kind) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("bad qubit count");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (w >= dim) throw std::invalid_argument("solution index out of range");
  if (f_table.size() != dim) throw std::invalid_argument("F table size mismatch");
  if (f_table[0] != 0.0) throw std::invalid_argument("F(0^n) must be 0");
  if (e1 < 0.0) throw std::invalid_argument("E1 must be nonnegative");
  AdiabaticProblem p;
  p.n = n;
  p.h0 = diagonal_from_table(Basis::hadamard, std::move(f_table));
  std::vector<double> e_table(dim, e1);
  e_table[w] = 0.0;
  p.h1 = diagonal_from_table(Basis::computational, std::move(e_table));
  p.schedule = Schedule{kind, total_time};
  p.solutions = {w};
  p.projector_final = true;
  p.validate();
  return p;
}

AdiabaticProblem build_3sat_problem(const CnfFormula& cnf, double total_time,
                                    Schedule::Kind kind) {
  if (cnf.clauses.empty()) throw std::invalid_argument("empty formula");
  const int n = cnf.n_vars;
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("variable count out of range");
  const std::uint64_t dim = std::uint64_t{1} << n;
  AdiabaticProblem p;
  p.n = n;
  std::vector<double> v_table(dim), h_table(dim);
  for (std::uint64_t z = 0; z < dim; ++z) {
    const int v = violated_count(cnf, z, n);
    v_table[z] = static_cast<double>(v);
    h_table[z] = static_cast<double>(h_weight(cnf, z));
    if (v == 0) p.solutions.push_back(z);
  }
  p.h0 = diagonal_from_table(Basis::hadamard, std::move(h_table));
  p.h1 = diagonal_from_table(Basis::computational, std::move(v_table));
  p.schedule = Schedule{kind, total_time};
  p.validate();
  return p;
}

void apply_hamiltonian(const AdiabaticProblem& problem, double s, const StateVector& psi,
                       StateVector& out, std::vector<cdouble>& scratch) {
  if (psi.n != problem.n) throw std::invalid_argument("apply_hamiltonian: dimension mismatch");
  if (s < 0.0 || s > 1.0) throw std::domain_error("interpolation parameter s outside [0,1]");
  const std::uint64_t dim = psi.dim();
  scratch.assign(psi.amps.begin(), psi.amps.end());
  fwht_raw(scratch);
  for (std::uint64_t z = 0; z < dim; ++z) scratch[z] *= problem.h0.table[z];
  fwht_raw(scratch);
  // The two raw butterflies contribute a factor N.
  const double a = (1.0 - s) / static_cast<double>(dim);
  out.n = psi.n;
  out.amps.resize(dim);
  for (std::uint64_t z = 0; z < dim; ++z) {
    out.amps[z] = a * scratch[z] + s * problem.h1.table[z] * psi.amps[z];
  }
}

StateVector apply_hamiltonian(const AdiabaticProblem& problem, double s, const StateVector& psi) {
  StateVector out;
  std::vector<cdouble> scratch;
  apply_hamiltonian(problem, s, psi, out, scratch);
  return out;
}

}  // namespace abl
