#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace abl {

using cdouble = std::complex<double>;

// 2^26 amplitudes is ~1 GiB; anything larger is out of scope for this tool.
inline constexpr int kMaxQubits = 26;

/// Dense state over n qubits: 2^n complex amplitudes indexed by n-bit strings,
/// bit i (LSB) holding variable i+1.
struct StateVector {
  int n = 0;
  std::vector<cdouble> amps;

  std::uint64_t dim() const { return std::uint64_t{1} << n; }
};

inline int bit_dot(std::uint64_t x, std::uint64_t y) {
  return __builtin_popcountll(x & y) & 1;
}

/// |u> = sum_z |z> / sqrt(N).
StateVector uniform_state(int n);

/// Computational basis state |z>.
StateVector basis_state(int n, std::uint64_t z);

/// Unitary Walsh-Hadamard transform W (self-inverse), in place.
/// Butterfly plus a single 1/sqrt(N) scaling pass.
void fwht_inplace(StateVector& state);

StateVector fwht(const StateVector& state);

/// Raw butterfly without normalization; composing two of these scales by N.
void fwht_raw(std::span<cdouble> amps);

/// <a|b> = sum_z conj(a_z) b_z.
cdouble inner(const StateVector& a, const StateVector& b);

double norm(const StateVector& state);

/// sum over targets of |amps[z]|^2.
double prob_mass(const StateVector& state, std::span<const std::uint64_t> targets);

}  // namespace abl
