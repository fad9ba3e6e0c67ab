#pragma once

#include "qsim/circuit.hpp"
#include "qsim/pauli.hpp"
#include "qsim/steane.hpp"

namespace qsim {

// Stochastic engine: the register state is "ideal circuit output with this
// Pauli applied". Gates conjugate the frame, faults multiply into it, and a
// Z-basis readout is flipped exactly when the frame carries X on that qubit.
struct PauliFrame {
  PauliString frame;

  explicit PauliFrame(int n) : frame(PauliString::identity(n)) {}
  explicit PauliFrame(PauliString f) : frame(std::move(f)) {}

  int width() const { return frame.width; }

  // frame <- U * frame * U^dagger
  void apply_gate(const Gate& g);
  void apply_circuit(const Circuit& c);

  // frame <- fault * frame
  void inject(const PauliString& fault);
  void inject_at(int qubit, Pauli p);

  // 1 iff the ideal outcome of a Z measurement on `qubit` is flipped.
  int measurement_flip(int qubit) const { return (frame.x >> qubit) & 1; }

  // Frames on measured-then-reset qubits do not persist.
  void clear_qubit(int qubit) {
    const uint32_t bit = 1u << qubit;
    frame.x &= ~bit;
    frame.z &= ~bit;
  }
};

inline void apply_fault(PauliFrame& f, int qubit, Pauli p) {
  if (p != Pauli::I) f.inject_at(qubit, p);
}

// A bare PauliString doubles as a data-register frame between networks;
// faults and conditional corrections both compose into it.
inline void apply_fault(PauliString& frame, int qubit, Pauli p) {
  if (p != Pauli::I) frame = mul(PauliString::single(frame.width, qubit, p), frame);
}

enum class ResidualClass {
  kIdentity,
  kStabilizer,
  kLogicalX,
  kLogicalZ,
  kLogicalY,
  kDetectable,
};

const char* to_string(ResidualClass c);

// Classifies a 7-qubit data frame modulo the stabilizer group.
ResidualClass residual_class(const PauliString& data_frame, const steane::CodeTables& t);

}  // namespace qsim
