#pragma once

#include <array>

#include "qsim/ancilla.hpp"

namespace qsim::recovery {

// Syndromes are 3-bit words 0..7; bit 2 comes from the first parity row, so
// the value itself names the flipped 1-indexed data qubit.
using Syndrome = int;

// Word-level majority; when all three repetitions disagree, fall back to a
// per-bit majority (deterministic, never ties with three votes).
Syndrome vote(Syndrome s1, Syndrome s2, Syndrome s3);

struct RecoveryReport {
  std::array<Syndrome, 3> z_syndromes{};
  std::array<Syndrome, 3> x_syndromes{};
  Syndrome voted_z = 0;
  Syndrome voted_x = 0;
  int z_correction = 0;  // 0 = none, else 1-indexed data qubit given a Z gate
  int x_correction = 0;
  int ancilla_retries = 0;

  friend bool operator==(const RecoveryReport&, const RecoveryReport&) = default;
};

// 14-qubit extraction networks; data = qubits 0..6, ancilla = 7..13.
// Phase extraction: CNOT ancilla->data (data phase errors copy up, ancilla
// bit-flips infect the data), then transversal H on the ancilla, then readout.
// Bit-flip extraction: CNOT data->ancilla, direct readout.
const ScheduledCircuit& z_extraction_schedule();
const ScheduledCircuit& x_extraction_schedule();

// Core of one extraction given an already-prepared ancilla register; the
// public extractions pull a verified ancilla first and then defer here.
Syndrome extract_core_sv(StateVector& data, const StateVector& ancilla_state, bool z_type,
                         const NoiseParams& np, Rng& rng, FaultInjector* inj = nullptr);

Syndrome extract_z_syndrome_frame(PauliString& data, const NoiseParams& np, Rng& rng,
                                  int retry_cap = ancilla::kRetryCapDefault,
                                  FaultInjector* inj = nullptr, int* retries = nullptr);
Syndrome extract_x_syndrome_frame(PauliString& data, const NoiseParams& np, Rng& rng,
                                  int retry_cap = ancilla::kRetryCapDefault,
                                  FaultInjector* inj = nullptr, int* retries = nullptr);
Syndrome extract_z_syndrome_sv(StateVector& data, const NoiseParams& np, Rng& rng,
                               int retry_cap = ancilla::kRetryCapDefault,
                               FaultInjector* inj = nullptr, int* retries = nullptr);
Syndrome extract_x_syndrome_sv(StateVector& data, const NoiseParams& np, Rng& rng,
                               int retry_cap = ancilla::kRetryCapDefault,
                               FaultInjector* inj = nullptr, int* retries = nullptr);

// One full round: three voted phase extractions with a_z ancillas, a noisy Z
// correction, then three voted bit-flip extractions with |a> ancillas and a
// noisy X correction.
RecoveryReport correct_round_frame(PauliString& data, const NoiseParams& np, Rng& rng,
                                   int retry_cap = ancilla::kRetryCapDefault,
                                   FaultInjector* inj = nullptr);
RecoveryReport correct_round_sv(StateVector& data, const NoiseParams& np, Rng& rng,
                                int retry_cap = ancilla::kRetryCapDefault,
                                FaultInjector* inj = nullptr);

}  // namespace qsim::recovery
