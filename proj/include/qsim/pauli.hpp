#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsim {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

// n-qubit Pauli operator i^phase * X^x * Z^z, bit k of each mask = qubit k.
// Y on qubit k is both bits set plus one factor of i (Y = i*X*Z), so the
// operator stays Hermitian when phases are tracked exactly.
//
// Phases are kept for the strict engine-equivalence tests; no metric in this
// codebase consults them (fidelity is phase-blind).
struct PauliString {
  uint32_t x = 0;
  uint32_t z = 0;
  uint8_t phase = 0;  // exponent of i, modulo 4
  uint8_t width = 0;

  static PauliString identity(int n) {
    check_width(n);
    PauliString p;
    p.width = static_cast<uint8_t>(n);
    return p;
  }

  static PauliString single(int n, int qubit, Pauli kind) {
    PauliString p = identity(n);
    p.set(qubit, kind);
    return p;
  }

  void set(int qubit, Pauli kind) {
    if (qubit < 0 || qubit >= width) throw std::out_of_range("pauli qubit index");
    const uint32_t bit = 1u << qubit;
    x &= ~bit;
    z &= ~bit;
    switch (kind) {
      case Pauli::I: break;
      case Pauli::X: x |= bit; break;
      case Pauli::Z: z |= bit; break;
      case Pauli::Y:
        x |= bit;
        z |= bit;
        phase = static_cast<uint8_t>((phase + 1) & 3);
        break;
    }
  }

  Pauli at(int qubit) const {
    const uint32_t bit = 1u << qubit;
    const bool xs = (x & bit) != 0;
    const bool zs = (z & bit) != 0;
    if (xs && zs) return Pauli::Y;
    if (xs) return Pauli::X;
    if (zs) return Pauli::Z;
    return Pauli::I;
  }

  bool is_identity() const { return x == 0 && z == 0; }
  int weight() const { return std::popcount(x | z); }

  // Drops everything above the low k qubits (used when ancilla blocks are
  // measured and discarded).
  PauliString restrict_low(int k) const {
    PauliString p = identity(k);
    const uint32_t mask = (k >= 32) ? ~0u : ((1u << k) - 1);
    p.x = x & mask;
    p.z = z & mask;
    p.phase = phase;
    return p;
  }

  std::string str() const {
    std::string s;
    s.reserve(width);
    for (int q = 0; q < width; ++q) s.push_back(pauli_char(at(q)));
    return s;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  static void check_width(int n) {
    if (n < 0 || n > 32) throw std::length_error("pauli width out of range");
  }
};

// Operator product a*b (b acts first on a ket).
inline PauliString mul(const PauliString& a, const PauliString& b) {
  if (a.width != b.width) throw std::invalid_argument("pauli width mismatch");
  PauliString r = PauliString::identity(a.width);
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  // moving a's Z block past b's X block picks up (-1)^{|a.z & b.x|}
  const int swap_sign = std::popcount(a.z & b.x) & 1;
  r.phase = static_cast<uint8_t>((a.phase + b.phase + 2 * swap_sign) & 3);
  return r;
}

}  // namespace qsim
