#include "abl/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace abl {

static void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(n));
  }
}

StateVector uniform_state(int n) {
  check_qubits(n);
  StateVector s;
  s.n = n;
  const std::uint64_t dim = std::uint64_t{1} << n;
  s.amps.assign(dim, cdouble(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  return s;
}

StateVector basis_state(int n, std::uint64_t z) {
  check_qubits(n);
  StateVector s;
  s.n = n;
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (z >= dim) throw std::invalid_argument("basis index out of range");
  s.amps.assign(dim, cdouble(0.0, 0.0));
  s.amps[z] = cdouble(1.0, 0.0);
  return s;
}

void fwht_raw(std::span<cdouble> amps) {
  const std::size_t len = amps.size();
  for (std::size_t h = 1; h < len; h *= 2) {
    for (std::size_t i = 0; i < len; i += h * 2) {
      for (std::size_t j = i; j < i + h; ++j) {
        const cdouble x = amps[j];
        const cdouble y = amps[j + h];
        amps[j] = x + y;
        amps[j + h] = x - y;
      }
    }
  }
}

void fwht_inplace(StateVector& state) {
  fwht_raw(state.amps);
  const double scale = 1.0 / std::sqrt(static_cast<double>(state.dim()));
  for (auto& a : state.amps) a *= scale;
}

StateVector fwht(const StateVector& state) {
  StateVector out = state;
  fwht_inplace(out);
  return out;
}

cdouble inner(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) throw std::invalid_argument("inner: dimension mismatch");
  cdouble acc(0.0, 0.0);
  for (std::size_t z = 0; z < a.amps.size(); ++z) acc += std::conj(a.amps[z]) * b.amps[z];
  return acc;
}

double norm(const StateVector& state) {
  double acc = 0.0;
  for (const auto& a : state.amps) acc += std::norm(a);
  return std::sqrt(acc);
}

double prob_mass(const StateVector& state, std::span<const std::uint64_t> targets) {
  const std::uint64_t dim = state.dim();
  double acc = 0.0;
  for (std::uint64_t z : targets) {
    if (z >= dim) throw std::invalid_argument("prob_mass: target out of range");
    acc += std::norm(state.amps[z]);
  }
  return acc;
}

}  // namespace abl
