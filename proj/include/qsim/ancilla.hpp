#pragma once

#include <cstdint>
#include <stdexcept>

#include "qsim/engines.hpp"
#include "qsim/noise.hpp"

namespace qsim::ancilla {

// Two ancilla species, both grown from the same verified |0_L> factory:
//   a_z is consumed as-is by the phase-error extraction,
//   a_x gets one more transversal-H step, becoming (|0_L>+|1_L>)/sqrt(2).
enum class Kind { kAZ, kAX };

inline constexpr int kVerifyQubit = 7;
inline constexpr int kRetryCapDefault = 100;

class StarvationError : public std::runtime_error {
 public:
  explicit StarvationError(int attempts)
      : std::runtime_error("ancilla factory starved after " + std::to_string(attempts) +
                           " attempts") {}
};

// 8-qubit preparation network: encoder fan-outs with the parity-qubit CNOTs
// interleaved so that any single bit-flip fault either leaves a correctable
// residual or flips the parity readout. A verification pass appended after a
// finished encoder cannot do this: a fault on a fan-out control between its
// last two CNOTs leaves an even-weight, uncorrectable pair that any later
// parity accumulation counts twice.
const ScheduledCircuit& verified_prep_schedule();

// 7-qubit encoder alone (the "no recovery" comparator).
const ScheduledCircuit& unverified_prep_schedule();

// Transversal H on the 7 ancilla qubits (a_x finishing step).
const ScheduledCircuit& rotation_schedule();

// Sequential parity accumulation (7 CNOTs into qubit 8) against a finished
// register; used by tests that inject between encoding and verification.
const ScheduledCircuit& verification_schedule();

// Reference states the quality metrics compare against.
const StateVector& reference_state(Kind kind);

struct FrameAttempt {
  bool accepted = false;
  PauliString residual;  // width 7, defined only when accepted
};

struct SvAttempt {
  bool accepted = false;
  StateVector state;  // 7 qubits, defined only when accepted
};

FrameAttempt run_attempt_frame(const NoiseParams& np, Kind kind, Rng& rng,
                               FaultInjector* inj = nullptr);
SvAttempt run_attempt_sv(const NoiseParams& np, Kind kind, Rng& rng,
                         FaultInjector* inj = nullptr);

struct FramePrep {
  PauliString residual;
  int n_retries = 0;
};

struct SvPrep {
  StateVector state;
  int n_retries = 0;
};

// Retries with fresh randomness until a preparation passes verification;
// throws StarvationError past the cap. Retries happen off-line and cost the
// data register nothing.
FramePrep prepare_verified_frame(const NoiseParams& np, Kind kind, Rng& rng,
                                 int retry_cap = kRetryCapDefault,
                                 FaultInjector* inj = nullptr);
SvPrep prepare_verified_sv(const NoiseParams& np, Kind kind, Rng& rng,
                           int retry_cap = kRetryCapDefault,
                           FaultInjector* inj = nullptr);

// Unverified preparation (encoder only, plus rotation for a_x).
PauliString run_unverified_frame(const NoiseParams& np, Kind kind, Rng& rng);
StateVector run_unverified_sv(const NoiseParams& np, Kind kind, Rng& rng);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  double accept_rate = 1.0;
  long attempts = 0;
};

// Monte Carlo mean of |<ref|prepared>|^2 over accepted preparations. The
// frame engine scores a trial 1 exactly when the residual fixes the reference
// state (stabilizers, plus logical X for a_x / logical Z for a_z).
Estimate estimate_fidelity(const NoiseParams& np, Kind kind, bool with_verification,
                           long trials, EngineKind engine, uint64_t seed, int threads = 0);

// Fraction of accepted |0_L> preparations whose bit-flip content is not
// equivalent to weight <= 1 modulo the X stabilizers.
Estimate estimate_p_two_bitflip(const NoiseParams& np, bool with_verification, long trials,
                                EngineKind engine, uint64_t seed, int threads = 0);

}  // namespace qsim::ancilla
