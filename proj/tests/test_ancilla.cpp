#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <bit>
#include <cmath>

#include "doctest.h"
#include "qsim/ancilla.hpp"
#include "qsim/steane.hpp"

using namespace qsim;
using ancilla::Kind;

namespace {

const NoiseParams kNoNoise{};

// Support word of a Pauli-shifted code state identifies its X coset.
uint32_t support_word(const StateVector& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (std::norm(s.amplitude(i)) > 1e-9) return static_cast<uint32_t>(i);
  return 0;
}

}  // namespace

TEST_CASE("clean factory accepts first try with an exact logical zero") {
  Rng rng(1);
  const auto frame = ancilla::prepare_verified_frame(kNoNoise, Kind::kAZ, rng);
  CHECK(frame.n_retries == 0);
  CHECK(frame.residual.is_identity());

  const auto sv = ancilla::prepare_verified_sv(kNoNoise, Kind::kAZ, rng);
  CHECK(sv.n_retries == 0);
  CHECK(std::abs(fidelity(sv.state, steane::zero_logical_state()) - 1.0) < 1e-12);

  const auto svx = ancilla::prepare_verified_sv(kNoNoise, Kind::kAX, rng);
  CHECK(std::abs(fidelity(svx.state, steane::plus_logical_state()) - 1.0) < 1e-12);
}

// Any single bit-flip fault anywhere in the preparation network is either
// rejected by the parity qubit or leaves a residual equivalent to weight <= 1.
TEST_CASE("exhaustive single-X injection over the preparation lattice") {
  const auto& sc = ancilla::verified_prep_schedule();
  const auto& t = steane::tables();
  int accepted_cases = 0, rejected_cases = 0;
  for (int32_t loc = 0; loc < sc.location_count(); ++loc) {
    const FaultLocation& fl = sc.fault_locations[loc];
    std::vector<PlannedFault> variants;
    if (fl.kind == FaultKind::kGate2) {
      variants.push_back({loc, Pauli::X, Pauli::I});
      variants.push_back({loc, Pauli::I, Pauli::X});
      variants.push_back({loc, Pauli::X, Pauli::X});
    } else {
      variants.push_back({loc, Pauli::X, Pauli::I});
    }
    for (const PlannedFault& pf : variants) {
      CAPTURE(loc);
      CAPTURE(static_cast<int>(pf.a));
      CAPTURE(static_cast<int>(pf.b));

      FaultInjector inj({&pf, 1});
      Rng rng(1);
      const auto frame = ancilla::run_attempt_frame(kNoNoise, Kind::kAZ, rng, &inj);

      FaultInjector inj_sv({&pf, 1});
      Rng rng_sv(1);
      const auto sv = ancilla::run_attempt_sv(kNoNoise, Kind::kAZ, rng_sv, &inj_sv);

      CHECK(frame.accepted == sv.accepted);
      if (frame.accepted) {
        ++accepted_cases;
        CHECK(frame.residual.z == 0);  // X faults stay X through this network
        CHECK(t.min_coset_weight(frame.residual.x) <= 1);
        CHECK(t.min_coset_weight(support_word(sv.state)) <= 1);
      } else {
        ++rejected_cases;
      }
    }
  }
  CHECK(accepted_cases + rejected_cases ==
        static_cast<int>(sc.gate1_locs.size() + sc.idle_locs.size() +
                         3 * sc.gate2_locs.size()));
  CHECK(rejected_cases > 0);
}

// The parity qubit counts each data flip once, so an even pattern injected
// after the network slips through with its full weight intact.
TEST_CASE("weight-two bit-flips before readout are accepted") {
  const auto& sc = ancilla::verified_prep_schedule();
  const auto& t = steane::tables();
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      // frame engine
      PauliFrame f(8);
      Rng rng(1);
      execute_with_faults(sc, {}, f, rng, nullptr);
      f.inject_at(i, Pauli::X);
      f.inject_at(j, Pauli::X);
      CHECK(f.measurement_flip(ancilla::kVerifyQubit) == 0);
      const PauliString residual = f.frame.restrict_low(7);
      CHECK(std::popcount(residual.x) == 2);
      CHECK(t.min_coset_weight(residual.x) == 2);

      // state-vector engine
      StateVector s(8);
      Rng rng2(2);
      execute_with_faults(sc, {}, s, rng2, nullptr);
      apply_fault(s, i, Pauli::X);
      apply_fault(s, j, Pauli::X);
      CHECK(s.measure_z(ancilla::kVerifyQubit, rng2) == 0);
    }
}

// A single bit flip on a finished logical zero is always caught by a
// subsequent parity accumulation: every dual codeword has even weight.
TEST_CASE("single data X between encoding and verification is rejected") {
  const auto& verify = ancilla::verification_schedule();
  for (int q = 0; q < 7; ++q) {
    PauliFrame f(8);
    f.inject_at(q, Pauli::X);
    Rng rng(1);
    execute_with_faults(verify, {}, f, rng, nullptr);
    CHECK(f.measurement_flip(ancilla::kVerifyQubit) == 1);

    StateVector reg = tensor(steane::zero_logical_state(), StateVector(1));
    apply_fault(reg, q, Pauli::X);
    Rng rng2(2);
    execute_with_faults(verify, {}, reg, rng2, nullptr);
    CHECK(reg.measure_z(ancilla::kVerifyQubit, rng2) == 1);
  }
}

// Phase faults never touch the parity readout.
TEST_CASE("verification is blind to Z faults everywhere") {
  const auto& sc = ancilla::verified_prep_schedule();
  for (int32_t loc = 0; loc < sc.location_count(); ++loc) {
    const FaultLocation& fl = sc.fault_locations[loc];
    std::vector<PlannedFault> variants = {{loc, Pauli::Z, Pauli::I}};
    if (fl.kind == FaultKind::kGate2) {
      variants.push_back({loc, Pauli::I, Pauli::Z});
      variants.push_back({loc, Pauli::Z, Pauli::Z});
    }
    for (const PlannedFault& pf : variants) {
      FaultInjector inj({&pf, 1});
      Rng rng(1);
      const auto attempt = ancilla::run_attempt_frame(kNoNoise, Kind::kAZ, rng, &inj);
      CAPTURE(loc);
      CHECK(attempt.accepted);
      CHECK(attempt.residual.x == 0);
    }
  }
}

// The coset-weight classifier used by P agrees with residual classification
// over every pure bit-flip pattern.
TEST_CASE("coset weight agrees with residual class on all 128 X patterns") {
  const auto& t = steane::tables();
  for (uint32_t x = 0; x < 128; ++x) {
    PauliString p = PauliString::identity(7);
    p.x = x;
    const ResidualClass cls = residual_class(p, t);
    const bool correctable_or_trivial =
        cls == ResidualClass::kIdentity || cls == ResidualClass::kStabilizer ||
        (cls == ResidualClass::kDetectable && t.min_coset_weight(x) <= 1);
    CHECK((t.min_coset_weight(x) >= 2) == !correctable_or_trivial);
  }
}

TEST_CASE("zero-noise estimators hit their trivial values") {
  const auto f = ancilla::estimate_fidelity(kNoNoise, Kind::kAX, true, 200,
                                            EngineKind::kPauliFrame, 99);
  CHECK(f.value == 1.0);
  CHECK(f.stderr_ == 0.0);
  CHECK(f.accept_rate == 1.0);

  const auto p = ancilla::estimate_p_two_bitflip(kNoNoise, true, 200,
                                                 EngineKind::kPauliFrame, 99);
  CHECK(p.value == 0.0);

  const auto fs = ancilla::estimate_fidelity(kNoNoise, Kind::kAX, true, 50,
                                             EngineKind::kStateVector, 99);
  CHECK(fs.value == 1.0);
}

TEST_CASE("frame and state-vector fidelity estimates agree statistically") {
  const NoiseParams np{1e-3, 1e-3, true};
  const long trials = 10000;
  const auto ff = ancilla::estimate_fidelity(np, Kind::kAX, true, trials,
                                             EngineKind::kPauliFrame, 4242);
  const auto fs = ancilla::estimate_fidelity(np, Kind::kAX, true, trials,
                                             EngineKind::kStateVector, 2424);
  const double joint = std::sqrt(ff.stderr_ * ff.stderr_ + fs.stderr_ * fs.stderr_);
  CHECK(std::abs(ff.value - fs.value) <= 3.0 * joint);
}

TEST_CASE("verification beats raw preparation on the two-bit-flip metric") {
  const NoiseParams np{1e-3, 1e-3, true};
  const long trials = 40000;
  const auto pv =
      ancilla::estimate_p_two_bitflip(np, true, trials, EngineKind::kPauliFrame, 7);
  const auto pu =
      ancilla::estimate_p_two_bitflip(np, false, trials, EngineKind::kPauliFrame, 8);
  CHECK(pv.value < pu.value);
}

TEST_CASE("starvation is reported, not swallowed") {
  // epsilon = 1 makes every attempt carry faults; most are rejected, so a
  // tiny retry cap starves quickly.
  const NoiseParams np{1.0, 0.0, true};
  Rng rng(123);
  bool starved = false;
  try {
    for (int i = 0; i < 50 && !starved; ++i)
      (void)ancilla::prepare_verified_frame(np, Kind::kAZ, rng, /*retry_cap=*/1);
  } catch (const ancilla::StarvationError&) {
    starved = true;
  }
  CHECK(starved);
}
