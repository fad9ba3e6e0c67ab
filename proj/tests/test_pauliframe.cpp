#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qsim/ancilla.hpp"
#include "qsim/noise.hpp"
#include "qsim/pauliframe.hpp"
#include "qsim/statevec.hpp"
#include "qsim/steane.hpp"

using namespace qsim;

namespace {

bool states_close(const StateVector& a, const StateVector& b, double tol = 1e-12) {
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.amplitude(i) - b.amplitude(i)) > tol) return false;
  return true;
}

StateVector random_state(int n, Rng& rng) {
  StateVector s(n);
  double norm = 0.0;
  std::vector<std::complex<double>> amps(s.size());
  for (auto& a : amps) {
    a = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
    norm += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (size_t i = 0; i < amps.size(); ++i) s.set_amplitude(i, amps[i] * scale);
  return s;
}

PauliString nth_pauli(int n_qubits, uint32_t index) {
  PauliString p = PauliString::identity(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    p.set(q, static_cast<Pauli>(index & 3));
    index >>= 2;
  }
  return p;
}

Gate random_gate(int n, Rng& rng) {
  const int pick = bounded(rng, 5);
  const int q = bounded(rng, n);
  switch (pick) {
    case 0: return gate_h(q);
    case 1: return gate_x(q);
    case 2: return gate_y(q);
    case 3: return gate_z(q);
    default: {
      int t = bounded(rng, n);
      if (t == q) t = (t + 1) % n;
      return gate_cnot(q, t);
    }
  }
}

}  // namespace

// U (P |psi>) must equal (U P U^dag) (U |psi>) amplitude-for-amplitude, so
// conjugation is checked with exact phases against the state-vector engine.
TEST_CASE("conjugation matches state-vector oracle for every gate and pauli") {
  Rng rng(77);
  const std::vector<Gate> gates = {gate_h(0),       gate_h(1),       gate_x(0),
                                   gate_y(1),       gate_z(0),       gate_cnot(0, 1),
                                   gate_cnot(1, 0)};
  for (const Gate& g : gates) {
    for (uint32_t idx = 0; idx < 16; ++idx) {
      for (uint8_t phase = 0; phase < 4; ++phase) {
        PauliString p = nth_pauli(2, idx);
        p.phase = static_cast<uint8_t>((p.phase + phase) & 3);

        PauliFrame f(2);
        f.inject(p);
        f.apply_gate(g);

        StateVector psi = random_state(2, rng);
        StateVector lhs = psi;
        lhs.apply_pauli(p);
        lhs.apply_gate(g);

        StateVector rhs = psi;
        rhs.apply_gate(g);
        rhs.apply_pauli(f.frame);

        CAPTURE(p.str());
        CHECK(states_close(lhs, rhs));
      }
    }
  }
}

TEST_CASE("named conjugation rules") {
  // X through H becomes Z
  PauliFrame f(1);
  f.inject_at(0, Pauli::X);
  f.apply_gate(gate_h(0));
  CHECK(f.frame.at(0) == Pauli::Z);

  // identity stays identity through anything
  PauliFrame id(2);
  id.apply_gate(gate_h(0));
  id.apply_gate(gate_cnot(0, 1));
  CHECK(id.frame.is_identity());

  // X on the control spreads to the target
  PauliFrame c(2);
  c.inject_at(0, Pauli::X);
  c.apply_gate(gate_cnot(0, 1));
  CHECK(c.frame.at(0) == Pauli::X);
  CHECK(c.frame.at(1) == Pauli::X);
}

TEST_CASE("inject composes masks") {
  PauliFrame f(4);
  f.inject_at(3, Pauli::X);
  CHECK(f.frame.at(3) == Pauli::X);
  f.inject_at(3, Pauli::X);
  CHECK(f.frame.is_identity());
  f.inject_at(3, Pauli::X);
  f.inject_at(3, Pauli::Z);
  CHECK(f.frame.at(3) == Pauli::Y);

  PauliString wide = PauliString::identity(5);
  CHECK_THROWS_AS(f.inject(wide), std::invalid_argument);
}

TEST_CASE("measurement flips") {
  PauliFrame f(3);
  CHECK(f.measurement_flip(1) == 0);
  f.inject_at(1, Pauli::X);
  CHECK(f.measurement_flip(1) == 1);
  PauliFrame g(3);
  g.inject_at(1, Pauli::Z);
  CHECK(g.measurement_flip(1) == 0);
}

TEST_CASE("conjugation is a group homomorphism") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Gate g = random_gate(3, rng);
    const PauliString p1 = nth_pauli(3, bounded(rng, 64));
    const PauliString p2 = nth_pauli(3, bounded(rng, 64));

    PauliFrame prod(3);
    prod.inject(mul(p1, p2));
    prod.apply_gate(g);

    PauliFrame f1(3), f2(3);
    f1.inject(p1);
    f1.apply_gate(g);
    f2.inject(p2);
    f2.apply_gate(g);

    CHECK(prod.frame == mul(f1.frame, f2.frame));
  }
}

TEST_CASE("residual classification") {
  const auto& t = steane::tables();
  CHECK(residual_class(PauliString::identity(7), t) == ResidualClass::kIdentity);

  // 1010101 is a dual codeword: an X pattern on it acts as a stabilizer
  PauliString stab = PauliString::identity(7);
  stab.x = 0x55;
  CHECK(residual_class(stab, t) == ResidualClass::kStabilizer);

  PauliString single = PauliString::single(7, 4, Pauli::X);  // qubit 5
  CHECK(residual_class(single, t) == ResidualClass::kDetectable);

  PauliString lx = PauliString::identity(7);
  lx.x = steane::kAllOnes;
  CHECK(residual_class(lx, t) == ResidualClass::kLogicalX);
  PauliString lz = PauliString::identity(7);
  lz.z = steane::kAllOnes;
  CHECK(residual_class(lz, t) == ResidualClass::kLogicalZ);
  PauliString ly = PauliString::identity(7);
  ly.x = steane::kAllOnes;
  ly.z = steane::kAllOnes;
  CHECK(residual_class(ly, t) == ResidualClass::kLogicalY);

  CHECK_THROWS_AS(residual_class(PauliString::identity(8), t), std::invalid_argument);
}

TEST_CASE("all 64 stabilizer group elements classify as trivial") {
  const auto& t = steane::tables();
  int nontrivial = 0;
  for (uint32_t xw : t.dual_codewords)
    for (uint32_t zw : t.dual_codewords) {
      PauliString p = PauliString::identity(7);
      p.x = xw;
      p.z = zw;
      const ResidualClass c = residual_class(p, t);
      if (xw == 0 && zw == 0)
        CHECK(c == ResidualClass::kIdentity);
      else
        CHECK(c == ResidualClass::kStabilizer);
      ++nontrivial;
    }
  CHECK(nontrivial == 64);
}

TEST_CASE("engine equivalence on random circuits with planned faults") {
  Rng meta(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + bounded(meta, 3);
    Circuit c{n, {}};
    const int n_gates = 8 + bounded(meta, 18);
    for (int i = 0; i < n_gates; ++i) c.gates.push_back(random_gate(n, meta));
    const ScheduledCircuit sc = schedule_asap(c);

    std::vector<PlannedFault> plan;
    const int n_faults = bounded(meta, 4);
    int32_t prev = -1;
    for (int i = 0; i < n_faults; ++i) {
      const int32_t loc = bounded(meta, sc.location_count());
      if (loc <= prev) continue;
      prev = loc;
      PlannedFault pf{loc, static_cast<Pauli>(1 + bounded(meta, 3)),
                      static_cast<Pauli>(1 + bounded(meta, 3))};
      plan.push_back(pf);
    }

    Rng unused1(1), unused2(1), unused3(1);
    StateVector ideal = random_state(n, meta);
    StateVector noisy = ideal;

    FaultInjector sv_inj(plan);
    execute_with_faults(sc, {}, noisy, unused1, &sv_inj);

    FaultInjector fr_inj(plan);
    PauliFrame frame(n);
    execute_with_faults(sc, {}, frame, unused2, &fr_inj);

    execute_with_faults(sc, {}, ideal, unused3, nullptr);
    ideal.apply_pauli(frame.frame);

    CHECK(states_close(noisy, ideal, 1e-10));
  }
}

// Both engines driven through the 8-qubit verified preparation network with
// the same planned faults must agree amplitude-for-amplitude via the frame.
TEST_CASE("engine equivalence on the full ancilla network") {
  Rng meta(808);
  const ScheduledCircuit& sc = ancilla::verified_prep_schedule();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PlannedFault> plan;
    int32_t loc = -1;
    const int n_faults = 1 + bounded(meta, 3);
    for (int i = 0; i < n_faults; ++i) {
      loc += 1 + bounded(meta, sc.location_count() / 3);
      if (loc >= sc.location_count()) break;
      plan.push_back({loc, static_cast<Pauli>(1 + bounded(meta, 3)),
                      static_cast<Pauli>(1 + bounded(meta, 3))});
    }

    Rng r1(1), r2(1), r3(1);
    StateVector noisy(8);
    FaultInjector i1(plan);
    execute_with_faults(sc, {}, noisy, r1, &i1);

    PauliFrame frame(8);
    FaultInjector i2(plan);
    execute_with_faults(sc, {}, frame, r2, &i2);

    StateVector ideal(8);
    execute_with_faults(sc, {}, ideal, r3, nullptr);
    ideal.apply_pauli(frame.frame);
    CHECK(states_close(noisy, ideal, 1e-10));
  }
}
