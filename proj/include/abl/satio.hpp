#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace abl {

/// 3SAT instance. Clauses hold 1..3 signed literals (positive = variable,
/// negative = negation), variable indices in [1, n_vars]. Variable i maps to
/// bit i-1 of a basis index.
struct CnfFormula {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;
};

struct DimacsParseError : std::runtime_error {
  int line;
  DimacsParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
};

/// DIMACS CNF: 'c' comment lines, one 'p cnf <vars> <clauses>' header,
/// 0-terminated clauses. Duplicate literals within a clause are collapsed;
/// tautological clauses, clauses longer than 3 literals, out-of-range
/// variables and header/count mismatches are errors.
CnfFormula parse_dimacs(const std::string& text);

/// v(z): number of clauses with every literal false under assignment z.
int violated_count(const CnfFormula& cnf, std::uint64_t z, int n_bits);

inline int violated_count(const CnfFormula& cnf, std::uint64_t z) {
  return violated_count(cnf, z, cnf.n_vars);
}

/// d[i-1] = number of clauses containing variable i in either polarity.
std::vector<int> variable_degrees(const CnfFormula& cnf);

/// h(z) = sum of d_i over set bits of z; h(0^n) = 0.
int h_weight(const CnfFormula& cnf, std::uint64_t z);

}  // namespace abl
