#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "abl/hilbert.hpp"

namespace abl {
struct CnfFormula;

enum class Basis { computational, hadamard };

/// Strictly increasing eigenvalues, first entry 0.
struct EigenLadder {
  std::vector<double> values;

  /// Throws std::invalid_argument on empty, non-zero start, or non-strict increase.
  static EigenLadder validated(std::vector<double> values);
};

/// Partition of {0,1}^n into disjoint classes, given as z -> class index.
/// Explicit class lists are only materialized by callers for small n.
struct Partition {
  int n = 0;
  std::size_t num_classes = 0;
  std::function<std::size_t(std::uint64_t)> class_of;

  static Partition from_class_function(int n, std::size_t num_classes,
                                       std::function<std::size_t(std::uint64_t)> class_of);
  /// classes must be disjoint, nonempty and cover {0,1}^n (checked on build).
  static Partition from_explicit_classes(int n,
                                         const std::vector<std::vector<std::uint64_t>>& classes);
};

/// Hamiltonian diagonal in one of the two bases, eigenvalues constant on
/// partition classes. table[z] = ladder[class_index[z]].
struct DiagonalHamiltonian {
  Basis basis = Basis::computational;
  std::vector<double> table;
  std::vector<double> ladder;
  std::vector<std::uint32_t> class_index;
  std::vector<std::uint64_t> class_sizes;

  double max_value() const { return ladder.empty() ? 0.0 : ladder.back(); }
  /// Smallest index among the largest classes.
  std::size_t largest_class() const;
};

/// Builds the table from a partition and ladder; validates coverage,
/// disjointness (implied by the function form), ladder/class count match,
/// and that every class is nonempty.
DiagonalHamiltonian make_diagonal(const Partition& partition, const EigenLadder& ladder,
                                  Basis basis);

/// Same, but takes the eigenvalue of each class in the partition's own class
/// order (any order); classes are relabeled so eigenvalues increase.
DiagonalHamiltonian make_diagonal(const Partition& partition, std::vector<double> class_values,
                                  Basis basis);

/// Canonicalizes an arbitrary eigenvalue table: distinct values sorted
/// ascending become the ladder, classes are the preimages. Requires min = 0.
DiagonalHamiltonian diagonal_from_table(Basis basis, std::vector<double> table);

struct Schedule {
  enum class Kind { linear, smoothstep };
  Kind kind = Kind::linear;
  double total_time = 1.0;

  /// s(t): 0 at t=0, 1 at t=T, nondecreasing.
  double value(double t) const;
};

/// H(t) = (1-s(t)) H0 + s(t) H1 with H0 diagonal in the Hadamard basis and
/// H1 diagonal in the computational basis. solutions = ground-state class of H1.
struct AdiabaticProblem {
  int n = 0;
  DiagonalHamiltonian h0;
  DiagonalHamiltonian h1;
  Schedule schedule;
  std::vector<std::uint64_t> solutions;
  bool projector_final = false;  // H1 = E1 (I - |w><w|)

  double max_energy() const { return std::max(h0.max_value(), h1.max_value()); }
  /// Throws if the invariants (H1 zero exactly on solutions, H0 zero at 0^n,
  /// basis tags, dimensions) do not hold.
  void validate() const;
};

/// Grover-type search: H0 = I - |u><u|, H1 = E1 (I - |w><w|).
AdiabaticProblem build_search_problem(int n, std::uint64_t w, double e1, double total_time,
                                      Schedule::Kind kind = Schedule::Kind::linear);

/// Rank-(N-1) projector final Hamiltonian with an arbitrary Hadamard-basis
/// eigenvalue table f_table (f_table[0] must be 0).
AdiabaticProblem build_projector_problem(int n, std::uint64_t w, std::vector<double> f_table,
                                         double e1, double total_time,
                                         Schedule::Kind kind = Schedule::Kind::linear);

/// H1 eigenvalues = clause-violation counts v(z); H0 eigenvalues = h(z),
/// the degree-weighted Hamming weight. Solutions = satisfying assignments.
AdiabaticProblem build_3sat_problem(const CnfFormula& cnf, double total_time,
                                    Schedule::Kind kind = Schedule::Kind::linear);

/// out = [(1-s) W diag(F) W + s diag(E)] psi. scratch must have dim entries.
void apply_hamiltonian(const AdiabaticProblem& problem, double s, const StateVector& psi,
                       StateVector& out, std::vector<cdouble>& scratch);

StateVector apply_hamiltonian(const AdiabaticProblem& problem, double s, const StateVector& psi);

}  // namespace abl
