#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/pauli.hpp"
#include "qsim/rng.hpp"

namespace qsim {

// Dense state-vector register. Basis index bit k (little-endian) is qubit k.
// The ground-truth engine: every noisy network in this project can be run on
// it directly and compared against the Pauli-frame engine.
class StateVector {
 public:
  static constexpr int kDefaultMaxQubits = 15;

  explicit StateVector(int n_qubits, int max_qubits = kDefaultMaxQubits);

  int n_qubits() const { return n_; }
  size_t size() const { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  std::complex<double> amplitude(size_t index) const { return amps_[index]; }

  void apply_gate(const Gate& g);
  void apply_circuit(const Circuit& c);
  void apply_pauli(const PauliString& p);

  // Z-basis measurement with Born sampling; collapses and renormalizes.
  int measure_z(int qubit, Rng& rng);

  // Measure then flip back to |0> if the outcome was 1.
  void reset_qubit(int qubit, Rng& rng);

  double norm_sq() const;

  // Direct amplitude access for construction of analytic states.
  void set_amplitude(size_t index, std::complex<double> v) { amps_[index] = v; }

 private:
  void check_qubit(int q) const;

  int n_;
  std::vector<std::complex<double>> amps_;
};

inline StateVector new_zero_state(int n_qubits,
                                  int max_qubits = StateVector::kDefaultMaxQubits) {
  return StateVector(n_qubits, max_qubits);
}

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Register with `low` in the low bits and `high` appended above it.
StateVector tensor(const StateVector& low, const StateVector& high);

// Measures the block of `count` qubits starting at `first` in one shot,
// collapses the register, and returns the outcome word (bit i = qubit first+i).
uint32_t measure_block(StateVector& state, int first, int count, Rng& rng);

// Extracts the low `low_bits` qubits of a register whose high qubits have been
// measured into the basis word `high_word`.
StateVector extract_low(const StateVector& state, int low_bits, uint32_t high_word);

inline void apply_fault(StateVector& s, int qubit, Pauli p) {
  if (p != Pauli::I) s.apply_pauli(PauliString::single(s.n_qubits(), qubit, p));
}

}  // namespace qsim
