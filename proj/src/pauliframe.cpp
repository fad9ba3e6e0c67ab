#include "qsim/pauliframe.hpp"

#include <stdexcept>

namespace qsim {

void PauliFrame::apply_gate(const Gate& g) {
  if (g.q0 >= frame.width || (is_two_qubit(g.kind) && g.q1 >= frame.width))
    throw std::out_of_range("gate qubit outside frame");
  const uint32_t m0 = 1u << g.q0;
  uint32_t& x = frame.x;
  uint32_t& z = frame.z;
  switch (g.kind) {
    case GateKind::H: {
      // X <-> Z on the qubit; Y picks up a sign.
      if ((x & m0) && (z & m0)) frame.phase = static_cast<uint8_t>((frame.phase + 2) & 3);
      const uint32_t xb = x & m0, zb = z & m0;
      x = (x & ~m0) | zb;
      z = (z & ~m0) | xb;
      break;
    }
    case GateKind::X:
      if (z & m0) frame.phase = static_cast<uint8_t>((frame.phase + 2) & 3);
      break;
    case GateKind::Y:
      if (((x ^ z) & m0) != 0) frame.phase = static_cast<uint8_t>((frame.phase + 2) & 3);
      break;
    case GateKind::Z:
      if (x & m0) frame.phase = static_cast<uint8_t>((frame.phase + 2) & 3);
      break;
    case GateKind::CNOT: {
      // X-parts map to X-parts and Z-parts to Z-parts, so the i^phase
      // X^x Z^z normal form needs no reordering sign here.
      const uint32_t m1 = 1u << g.q1;
      if (x & m0) x ^= m1;
      if (z & m1) z ^= m0;
      break;
    }
  }
}

void PauliFrame::apply_circuit(const Circuit& c) {
  for (const Gate& g : c.gates) apply_gate(g);
}

void PauliFrame::inject(const PauliString& fault) {
  frame = mul(fault, frame);
}

void PauliFrame::inject_at(int qubit, Pauli p) {
  inject(PauliString::single(frame.width, qubit, p));
}

const char* to_string(ResidualClass c) {
  switch (c) {
    case ResidualClass::kIdentity: return "IDENTITY";
    case ResidualClass::kStabilizer: return "STABILIZER";
    case ResidualClass::kLogicalX: return "LOGICAL_X";
    case ResidualClass::kLogicalZ: return "LOGICAL_Z";
    case ResidualClass::kLogicalY: return "LOGICAL_Y";
    case ResidualClass::kDetectable: return "DETECTABLE";
  }
  return "?";
}

ResidualClass residual_class(const PauliString& data_frame, const steane::CodeTables& t) {
  if (data_frame.width != steane::kDataQubits)
    throw std::invalid_argument("residual frame must cover exactly the 7 data qubits");
  // Z checks see the X component and vice versa.
  const int syndrome_x = steane::hamming_syndrome(data_frame.x);
  const int syndrome_z = steane::hamming_syndrome(data_frame.z);
  if (syndrome_x != 0 || syndrome_z != 0) return ResidualClass::kDetectable;
  if (data_frame.is_identity()) return ResidualClass::kIdentity;
  // Zero syndrome puts each mask in C; within C, the stabilizer part is
  // exactly C-perp and the rest is the logical coset.
  const bool lx = !t.in_dual(data_frame.x);
  const bool lz = !t.in_dual(data_frame.z);
  if (lx && lz) return ResidualClass::kLogicalY;
  if (lx) return ResidualClass::kLogicalX;
  if (lz) return ResidualClass::kLogicalZ;
  return ResidualClass::kStabilizer;
}

}  // namespace qsim
