#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qsim {

enum class GateKind : uint8_t { H, X, Y, Z, CNOT };

inline bool is_two_qubit(GateKind k) { return k == GateKind::CNOT; }

struct Gate {
  GateKind kind;
  uint8_t q0 = 0;  // control for CNOT
  uint8_t q1 = 0;  // target for CNOT, unused otherwise

  friend bool operator==(const Gate&, const Gate&) = default;
};

inline Gate gate_h(int q) { return {GateKind::H, static_cast<uint8_t>(q)}; }
inline Gate gate_x(int q) { return {GateKind::X, static_cast<uint8_t>(q)}; }
inline Gate gate_y(int q) { return {GateKind::Y, static_cast<uint8_t>(q)}; }
inline Gate gate_z(int q) { return {GateKind::Z, static_cast<uint8_t>(q)}; }

inline Gate gate_cnot(int control, int target) {
  if (control == target) throw std::invalid_argument("cnot qubits must differ");
  return {GateKind::CNOT, static_cast<uint8_t>(control), static_cast<uint8_t>(target)};
}

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
};

}  // namespace qsim
