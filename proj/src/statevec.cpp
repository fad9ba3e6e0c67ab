#include "qsim/statevec.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsim {

namespace {

constexpr double kSqrtHalf = std::numbers::sqrt2 / 2.0;

const std::complex<double> kPhaseTable[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

StateVector::StateVector(int n_qubits, int max_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > max_qubits)
    throw std::length_error("state size out of range");
  amps_.assign(size_t{1} << n_, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index");
}

void StateVector::apply_gate(const Gate& g) {
  check_qubit(g.q0);
  const size_t dim = amps_.size();
  const size_t m0 = size_t{1} << g.q0;
  switch (g.kind) {
    case GateKind::H:
      for (size_t base = 0; base < dim; base += 2 * m0)
        for (size_t i = base; i < base + m0; ++i) {
          const auto a = amps_[i];
          const auto b = amps_[i | m0];
          amps_[i] = (a + b) * kSqrtHalf;
          amps_[i | m0] = (a - b) * kSqrtHalf;
        }
      break;
    case GateKind::X:
      for (size_t base = 0; base < dim; base += 2 * m0)
        for (size_t i = base; i < base + m0; ++i) std::swap(amps_[i], amps_[i | m0]);
      break;
    case GateKind::Y:
      for (size_t base = 0; base < dim; base += 2 * m0)
        for (size_t i = base; i < base + m0; ++i) {
          const auto a = amps_[i];
          const auto b = amps_[i | m0];
          amps_[i] = std::complex<double>(b.imag(), -b.real());   // -i*b
          amps_[i | m0] = std::complex<double>(-a.imag(), a.real());  // i*a
        }
      break;
    case GateKind::Z:
      for (size_t base = 0; base < dim; base += 2 * m0)
        for (size_t i = base + m0; i < base + 2 * m0; ++i) amps_[i] = -amps_[i];
      break;
    case GateKind::CNOT: {
      check_qubit(g.q1);
      if (g.q0 == g.q1) throw std::invalid_argument("cnot qubits must differ");
      const size_t mt = size_t{1} << g.q1;
      for (size_t i = 0; i < dim; ++i)
        if ((i & m0) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
      break;
    }
  }
}

void StateVector::apply_circuit(const Circuit& c) {
  for (const Gate& g : c.gates) apply_gate(g);
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.width != n_) throw std::invalid_argument("pauli width mismatch");
  const size_t dim = amps_.size();
  const std::complex<double> ph = kPhaseTable[p.phase & 3];
  if (p.x == 0) {
    for (size_t i = 0; i < dim; ++i) {
      const bool neg = std::popcount(i & size_t{p.z}) & 1;
      amps_[i] *= neg ? -ph : ph;
    }
    return;
  }
  for (size_t i = 0; i < dim; ++i) {
    const size_t j = i ^ p.x;
    if (j < i) continue;
    const bool neg_i = std::popcount(i & size_t{p.z}) & 1;
    const bool neg_j = std::popcount(j & size_t{p.z}) & 1;
    const auto ai = amps_[i];
    const auto aj = amps_[j];
    amps_[j] = (neg_i ? -ph : ph) * ai;
    amps_[i] = (neg_j ? -ph : ph) * aj;
  }
}

int StateVector::measure_z(int qubit, Rng& rng) {
  check_qubit(qubit);
  const size_t m = size_t{1} << qubit;
  double p0 = 0.0, p1 = 0.0;
  for (size_t i = 0; i < amps_.size(); ++i)
    ((i & m) ? p1 : p0) += std::norm(amps_[i]);
  // Select against the actual masses so a zero-mass branch can never win
  // even when p0+p1 drifts off 1 by rounding.
  const int outcome = uniform01(rng) * (p0 + p1) < p1 ? 1 : 0;
  const double keep = outcome ? p1 : p0;
  if (!(keep > 0.0)) throw std::logic_error("zero-norm measurement branch");
  const double scale = 1.0 / std::sqrt(keep);
  for (size_t i = 0; i < amps_.size(); ++i) {
    if (((i & m) != 0) == (outcome != 0))
      amps_[i] *= scale;
    else
      amps_[i] = {0.0, 0.0};
  }
  return outcome;
}

void StateVector::reset_qubit(int qubit, Rng& rng) {
  if (measure_z(qubit, rng) == 1) apply_gate(gate_x(qubit));
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("state shape mismatch");
  std::complex<double> inner = {0.0, 0.0};
  const auto as = a.amplitudes();
  const auto bs = b.amplitudes();
  for (size_t i = 0; i < as.size(); ++i) inner += std::conj(as[i]) * bs[i];
  return std::norm(inner);
}

StateVector tensor(const StateVector& low, const StateVector& high) {
  const int nl = low.n_qubits();
  StateVector out(nl + high.n_qubits());
  const auto ls = low.amplitudes();
  const auto hs = high.amplitudes();
  for (size_t h = 0; h < hs.size(); ++h) {
    const size_t base = h << nl;
    for (size_t l = 0; l < ls.size(); ++l) out.set_amplitude(base | l, hs[h] * ls[l]);
  }
  return out;
}

uint32_t measure_block(StateVector& state, int first, int count, Rng& rng) {
  if (first < 0 || count < 1 || first + count > state.n_qubits())
    throw std::out_of_range("measurement block out of range");
  const uint32_t words = 1u << count;
  std::vector<double> mass(words, 0.0);
  const auto amps = state.amplitudes();
  for (size_t i = 0; i < amps.size(); ++i)
    mass[(i >> first) & (words - 1)] += std::norm(amps[i]);

  double total = 0.0;
  for (double m : mass) total += m;
  const double target = uniform01(rng) * total;

  uint32_t word = 0;
  double cum = 0.0;
  uint32_t last_nonzero = 0;
  bool found = false;
  for (uint32_t w = 0; w < words; ++w) {
    if (mass[w] <= 0.0) continue;
    last_nonzero = w;
    cum += mass[w];
    if (target < cum) {
      word = w;
      found = true;
      break;
    }
  }
  if (!found) word = last_nonzero;

  const double scale = 1.0 / std::sqrt(mass[word]);
  for (size_t i = 0; i < amps.size(); ++i) {
    if (((i >> first) & (words - 1)) == word)
      state.set_amplitude(i, amps[i] * scale);
    else
      state.set_amplitude(i, {0.0, 0.0});
  }
  return word;
}

StateVector extract_low(const StateVector& state, int low_bits, uint32_t high_word) {
  StateVector out(low_bits);
  const size_t base = size_t{high_word} << low_bits;
  for (size_t l = 0; l < out.size(); ++l) out.set_amplitude(l, state.amplitude(base | l));
  return out;
}

}  // namespace qsim
