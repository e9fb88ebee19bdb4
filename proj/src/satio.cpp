#include "abl/satio.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace abl {

CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula cnf;
  bool have_header = false;
  int declared_clauses = 0;
  std::vector<int> current;
  int line_no = 0;
  bool warned_short = false;

  auto finish_clause = [&](int line) {
    std::vector<int> clause = current;
    current.clear();
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (int lit : clause) {
      if (std::find(clause.begin(), clause.end(), -lit) != clause.end()) {
        throw DimacsParseError(line, "tautological clause (contains v and -v)");
      }
    }
    if (clause.empty()) throw DimacsParseError(line, "empty clause");
    if (clause.size() > 3) throw DimacsParseError(line, "clause has more than 3 literals");
    if (clause.size() < 3 && !warned_short) {
      std::cerr << "warning: line " << line << ": clause shorter than 3 literals\n";
      warned_short = true;
    }
    cnf.clauses.push_back(std::move(clause));
  };

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    if (tok == "c" || tok[0] == 'c' || tok[0] == '%') continue;
    if (tok == "p") {
      if (have_header) throw DimacsParseError(line_no, "duplicate header");
      std::string fmt;
      if (!(ls >> fmt >> cnf.n_vars >> declared_clauses) || fmt != "cnf") {
        throw DimacsParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      if (cnf.n_vars < 1) throw DimacsParseError(line_no, "variable count must be >= 1");
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsParseError(line_no, "clause before 'p cnf' header");
    // tok plus the rest of the line are literals.
    do {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0') {
        throw DimacsParseError(line_no, "expected integer literal, got '" + tok + "'");
      }
      if (lit == 0) {
        finish_clause(line_no);
      } else {
        const long var = lit > 0 ? lit : -lit;
        if (var > cnf.n_vars) {
          throw DimacsParseError(line_no, "literal " + std::to_string(lit) + " out of range");
        }
        current.push_back(static_cast<int>(lit));
      }
    } while (ls >> tok);
  }
  if (!have_header) throw DimacsParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw DimacsParseError(line_no, "unterminated clause (missing 0)");
  if (static_cast<int>(cnf.clauses.size()) != declared_clauses) {
    throw DimacsParseError(line_no, "clause count " + std::to_string(cnf.clauses.size()) +
                                        " does not match header " +
                                        std::to_string(declared_clauses));
  }
  return cnf;
}

int violated_count(const CnfFormula& cnf, std::uint64_t z, int n_bits) {
  if (n_bits != cnf.n_vars) {
    throw std::invalid_argument("violated_count: assignment length mismatch");
  }
  int violated = 0;
  for (const auto& clause : cnf.clauses) {
    bool satisfied = false;
    for (int lit : clause) {
      const int var = lit > 0 ? lit : -lit;
      const bool value = (z >> (var - 1)) & 1;
      if (value == (lit > 0)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) ++violated;
  }
  return violated;
}

std::vector<int> variable_degrees(const CnfFormula& cnf) {
  std::vector<int> degrees(cnf.n_vars, 0);
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) {
      const int var = lit > 0 ? lit : -lit;
      ++degrees[var - 1];
    }
  }
  return degrees;
}

int h_weight(const CnfFormula& cnf, std::uint64_t z) {
  if (cnf.n_vars < 64 && (z >> cnf.n_vars) != 0) {
    throw std::invalid_argument("h_weight: assignment out of range");
  }
  const std::vector<int> degrees = variable_degrees(cnf);
  int acc = 0;
  for (int i = 0; i < cnf.n_vars; ++i) {
    if ((z >> i) & 1) acc += degrees[i];
  }
  return acc;
}

}  // namespace abl
