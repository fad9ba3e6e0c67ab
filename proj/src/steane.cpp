#include "qsim/steane.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsim::steane {

namespace {

// Rows as 7-bit masks, bit (j-1) = qubit j:
//   r1 = 0001111 (qubits 4,5,6,7), r2 = 0110011 (2,3,6,7), r3 = 1010101 (1,3,5,7)
constexpr uint32_t kRow1 = 0x78;
constexpr uint32_t kRow2 = 0x66;
constexpr uint32_t kRow3 = 0x55;

CodeTables build_tables() {
  CodeTables t;
  t.parity_rows = {kRow1, kRow2, kRow3};
  int n_dual = 0;
  for (uint32_t bits = 0; bits < 8; ++bits) {
    uint32_t w = 0;
    if (bits & 1) w ^= kRow1;
    if (bits & 2) w ^= kRow2;
    if (bits & 4) w ^= kRow3;
    t.dual_codewords[n_dual++] = w;
    t.dual_mask_[w] = true;
  }
  int n_code = 0;
  for (uint32_t w = 0; w < 128; ++w) {
    if (hamming_syndrome(w) == 0) {
      t.code_codewords[n_code++] = w;
      t.code_mask_[w] = true;
    }
  }
  return t;
}

}  // namespace

const CodeTables& tables() {
  static const CodeTables t = build_tables();
  return t;
}

int CodeTables::min_coset_weight(uint32_t w) const {
  int best = kDataQubits + 1;
  for (uint32_t d : dual_codewords) {
    const int wt = std::popcount((w ^ d) & kAllOnes);
    if (wt < best) best = wt;
  }
  return best;
}

int hamming_syndrome(uint32_t word) {
  const int s1 = std::popcount(word & kRow1) & 1;
  const int s2 = std::popcount(word & kRow2) & 1;
  const int s3 = std::popcount(word & kRow3) & 1;
  return (s1 << 2) | (s2 << 1) | s3;
}

int correction_from_syndrome(int syndrome) {
  if (syndrome < 0 || syndrome > 7) throw std::out_of_range("syndrome value");
  return syndrome;
}

Circuit logical_zero_circuit() {
  Circuit c{kDataQubits, {}};
  c.gates = {
      gate_h(0), gate_h(1), gate_h(3),
      gate_cnot(0, 2), gate_cnot(0, 4), gate_cnot(0, 6),
      gate_cnot(1, 2), gate_cnot(1, 5), gate_cnot(1, 6),
      gate_cnot(3, 4), gate_cnot(3, 5), gate_cnot(3, 6),
  };
  return c;
}

StateVector logical_state(std::complex<double> a, std::complex<double> b) {
  const double nrm = std::norm(a) + std::norm(b);
  if (std::abs(nrm - 1.0) > 1e-9)
    throw std::invalid_argument("logical coefficients not normalized");
  const CodeTables& t = tables();
  StateVector s(kDataQubits);
  s.set_amplitude(0, {0.0, 0.0});
  const double amp = 1.0 / std::sqrt(8.0);
  for (uint32_t d : t.dual_codewords) {
    s.set_amplitude(d, a * amp);
    s.set_amplitude(d ^ kAllOnes, b * amp);
  }
  return s;
}

const StateVector& zero_logical_state() {
  static const StateVector s = logical_state(1.0, 0.0);
  return s;
}

const StateVector& plus_logical_state() {
  static const StateVector s =
      logical_state(std::sqrt(0.5), std::sqrt(0.5));
  return s;
}

Circuit transversal(GateKind kind, int n_qubits, int offset) {
  if (is_two_qubit(kind)) throw std::invalid_argument("transversal expects a one-qubit kind");
  if (offset < 0 || offset + kDataQubits > n_qubits)
    throw std::invalid_argument("transversal slice out of range");
  Circuit c{n_qubits, {}};
  for (int i = 0; i < kDataQubits; ++i)
    c.gates.push_back({kind, static_cast<uint8_t>(offset + i)});
  return c;
}

Circuit transversal_cnot(int n_qubits, int control_offset, int target_offset) {
  if (control_offset < 0 || control_offset + kDataQubits > n_qubits ||
      target_offset < 0 || target_offset + kDataQubits > n_qubits ||
      std::abs(control_offset - target_offset) < kDataQubits)
    throw std::invalid_argument("transversal cnot slices misaligned");
  Circuit c{n_qubits, {}};
  for (int i = 0; i < kDataQubits; ++i)
    c.gates.push_back(gate_cnot(control_offset + i, target_offset + i));
  return c;
}

}  // namespace qsim::steane
