#pragma once

#include <stdexcept>
#include <string>

#include "qsim/pauliframe.hpp"
#include "qsim/statevec.hpp"

namespace qsim {

enum class EngineKind { kStateVector, kPauliFrame };

inline EngineKind parse_engine(const std::string& name) {
  if (name == "statevector") return EngineKind::kStateVector;
  if (name == "pauli-frame") return EngineKind::kPauliFrame;
  throw std::invalid_argument("unknown engine: " + name);
}

inline const char* to_string(EngineKind e) {
  return e == EngineKind::kStateVector ? "statevector" : "pauli-frame";
}

// A recovery correction is conditioned on measured syndromes, so it is not
// part of the ideal reference circuit: on the state vector it is a real gate,
// on the frame it composes into the tracked error.
inline void apply_correction(StateVector& s, int qubit, Pauli p) {
  switch (p) {
    case Pauli::X: s.apply_gate(gate_x(qubit)); break;
    case Pauli::Y: s.apply_gate(gate_y(qubit)); break;
    case Pauli::Z: s.apply_gate(gate_z(qubit)); break;
    case Pauli::I: break;
  }
}

inline void apply_correction(PauliFrame& f, int qubit, Pauli p) {
  if (p != Pauli::I) f.inject_at(qubit, p);
}

inline void apply_correction(PauliString& frame, int qubit, Pauli p) {
  apply_fault(frame, qubit, p);
}

}  // namespace qsim
