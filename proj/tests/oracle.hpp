// Test-only reference implementations, independent of the library's fast
// paths: O(N^2) Hadamard transform from the sign matrix and dense H(s)
// matrices.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "abl/hamiltonian.hpp"
#include "abl/hilbert.hpp"

namespace abl::testing {

// W psi from the (-1)^{x.y}/sqrt(N) matrix, entry by entry.
inline StateVector naive_hadamard(const StateVector& psi) {
  const std::uint64_t dim = psi.dim();
  StateVector out;
  out.n = psi.n;
  out.amps.assign(dim, cdouble(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t y = 0; y < dim; ++y) {
      const double sign = bit_dot(x, y) ? -1.0 : 1.0;
      out.amps[x] += sign * scale * psi.amps[y];
    }
  }
  return out;
}

// Dense matrix of (1-s) W diag(F) W + s diag(E).
inline std::vector<std::vector<cdouble>> dense_h(const AdiabaticProblem& p, double s) {
  const std::uint64_t dim = std::uint64_t{1} << p.n;
  std::vector<std::vector<cdouble>> h(dim, std::vector<cdouble>(dim, cdouble(0.0, 0.0)));
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t y = 0; y < dim; ++y) {
      cdouble acc(0.0, 0.0);
      for (std::uint64_t z = 0; z < dim; ++z) {
        const double sx = bit_dot(x, z) ? -1.0 : 1.0;
        const double sy = bit_dot(y, z) ? -1.0 : 1.0;
        acc += sx * sy * p.h0.table[z];
      }
      h[x][y] = (1.0 - s) * acc / static_cast<double>(dim);
    }
    h[x][x] += s * p.h1.table[x];
  }
  return h;
}

inline StateVector dense_apply(const std::vector<std::vector<cdouble>>& h,
                               const StateVector& psi) {
  StateVector out;
  out.n = psi.n;
  out.amps.assign(psi.amps.size(), cdouble(0.0, 0.0));
  for (std::size_t x = 0; x < psi.amps.size(); ++x) {
    for (std::size_t y = 0; y < psi.amps.size(); ++y) out.amps[x] += h[x][y] * psi.amps[y];
  }
  return out;
}

inline StateVector random_unit_state(int n, std::mt19937_64& rng) {
  StateVector psi;
  psi.n = n;
  psi.amps.resize(std::uint64_t{1} << n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double norm_sq = 0.0;
  for (auto& a : psi.amps) {
    a = cdouble(gauss(rng), gauss(rng));
    norm_sq += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (auto& a : psi.amps) a *= scale;
  return psi;
}

}  // namespace abl::testing
