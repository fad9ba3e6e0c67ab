#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "qsim/circuit.hpp"
#include "qsim/statevec.hpp"

namespace qsim::steane {

inline constexpr int kDataQubits = 7;
inline constexpr uint32_t kAllOnes = 0x7f;

// Static tables of the [[7,1,3]] code, built from the Hamming [7,4,3] code C
// and its dual C-perp. Parity-check column j is the binary representation of
// j, so syndrome-to-position decoding is plain integer reinterpretation.
//
// Convention: qubits are 1-indexed in the tables' documentation and 0-indexed
// internally; word bit (j-1) carries qubit j.
struct CodeTables {
  std::array<uint32_t, 3> parity_rows;      // r1, r2, r3 (r1 = most significant syndrome bit)
  std::array<uint32_t, 8> dual_codewords;   // C-perp = rowspan{r1,r2,r3}
  std::array<uint32_t, 16> code_codewords;  // C = ker H
  uint32_t logical_x = kAllOnes;
  uint32_t logical_z = kAllOnes;

  bool in_dual(uint32_t w) const { return dual_mask_[w & kAllOnes]; }
  bool in_code(uint32_t w) const { return code_mask_[w & kAllOnes]; }

  // Minimum Hamming weight of w's coset by C-perp.
  int min_coset_weight(uint32_t w) const;

  std::array<bool, 128> dual_mask_{};
  std::array<bool, 128> code_mask_{};
};

const CodeTables& tables();

// H*word over GF(2), value 0..7: 0 means clean, otherwise the binary of the
// flipped position for any single-bit error.
int hamming_syndrome(uint32_t word);

// 0 = no correction, 1..7 = 1-indexed data qubit to flip.
int correction_from_syndrome(int syndrome);

// Fixed encoder for |0_L>: H on qubits 1,2,4 and CNOT fan-outs 1->{3,5,7},
// 2->{3,6,7}, 4->{5,6,7} (1-indexed ordering, 0-indexed gates).
Circuit logical_zero_circuit();

// a|0_L> + b|1_L> built analytically; throws if |a|^2+|b|^2 != 1.
StateVector logical_state(std::complex<double> a, std::complex<double> b);

// (|0_L> + |1_L>)/sqrt(2): the verification-ready ancilla reference.
const StateVector& plus_logical_state();
const StateVector& zero_logical_state();

// Seven parallel same-kind one-qubit gates on qubits [offset, offset+7).
Circuit transversal(GateKind kind, int n_qubits, int offset);

// Seven parallel CNOTs, control_offset+i -> target_offset+i.
Circuit transversal_cnot(int n_qubits, int control_offset, int target_offset);

}  // namespace qsim::steane
