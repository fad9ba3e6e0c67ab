#include "qsim/ancilla.hpp"

#include <cmath>

#include "qsim/parallel.hpp"
#include "qsim/steane.hpp"

namespace qsim::ancilla {

using steane::kDataQubits;

namespace {

// Fan-out rows (0-indexed): pivot 0 -> {2,4,6}, pivot 1 -> {2,5,6},
// pivot 3 -> {4,5,6}. Each pivot's parity CNOT fires before its fan-out and
// each target's after its last infection, so a bit-flip on a pivot with one
// fan-out gate left is copied once (odd parity, rejected) while the larger
// spreads stay correctable. Layering is fixed by schedule_asap over this
// order.
Circuit verified_prep_circuit() {
  Circuit c{8, {}};
  c.gates = {
      gate_h(0),       gate_h(1),       gate_h(3),
      gate_cnot(0, 7),
      gate_cnot(1, 7), gate_cnot(0, 2),
      gate_cnot(3, 7), gate_cnot(0, 4), gate_cnot(1, 6),
      gate_cnot(0, 6), gate_cnot(1, 2), gate_cnot(3, 4),
      gate_cnot(1, 5), gate_cnot(3, 6), gate_cnot(2, 7),
      gate_cnot(3, 5), gate_cnot(4, 7),
      gate_cnot(5, 7),
      gate_cnot(6, 7),
  };
  return c;
}

Circuit verification_circuit() {
  Circuit c{8, {}};
  for (int q = 0; q < kDataQubits; ++q) c.gates.push_back(gate_cnot(q, kVerifyQubit));
  return c;
}

}  // namespace

const ScheduledCircuit& verified_prep_schedule() {
  static const ScheduledCircuit sc = schedule_asap(verified_prep_circuit());
  return sc;
}

const ScheduledCircuit& unverified_prep_schedule() {
  static const ScheduledCircuit sc = schedule_asap(steane::logical_zero_circuit());
  return sc;
}

const ScheduledCircuit& rotation_schedule() {
  static const ScheduledCircuit sc =
      schedule_asap(steane::transversal(GateKind::H, kDataQubits, 0));
  return sc;
}

const ScheduledCircuit& verification_schedule() {
  static const ScheduledCircuit sc = schedule_asap(verification_circuit());
  return sc;
}

const StateVector& reference_state(Kind kind) {
  return kind == Kind::kAZ ? steane::zero_logical_state() : steane::plus_logical_state();
}

FrameAttempt run_attempt_frame(const NoiseParams& np, Kind kind, Rng& rng,
                               FaultInjector* inj) {
  thread_local std::vector<int32_t> faults;
  const ScheduledCircuit& prep = verified_prep_schedule();
  sample_fault_locations(prep, np, rng, faults);

  FrameAttempt out;
  if (faults.empty() && inj == nullptr) {
    // Clean run: accepted with nothing on the frame.
    out.accepted = true;
    out.residual = PauliString::identity(kDataQubits);
  } else {
    PauliFrame f(8);
    execute_with_faults(prep, faults, f, rng, inj);
    if (f.measurement_flip(kVerifyQubit) != 0) return out;  // parity tripped
    out.accepted = true;
    out.residual = f.frame.restrict_low(kDataQubits);
  }
  if (kind == Kind::kAX) {
    PauliFrame f7(out.residual);
    run_noisy(rotation_schedule(), np, f7, rng, inj);
    out.residual = f7.frame;
  }
  return out;
}

SvAttempt run_attempt_sv(const NoiseParams& np, Kind kind, Rng& rng, FaultInjector* inj) {
  thread_local std::vector<int32_t> faults;
  const ScheduledCircuit& prep = verified_prep_schedule();
  sample_fault_locations(prep, np, rng, faults);

  SvAttempt out{false, StateVector(kDataQubits)};
  if (faults.empty() && inj == nullptr) {
    out.accepted = true;
    out.state = steane::zero_logical_state();
  } else {
    StateVector reg(8);
    execute_with_faults(prep, faults, reg, rng, inj);
    if (reg.measure_z(kVerifyQubit, rng) != 0) return out;
    out.accepted = true;
    out.state = extract_low(reg, kDataQubits, 0);
  }
  if (kind == Kind::kAX) run_noisy(rotation_schedule(), np, out.state, rng, inj);
  return out;
}

FramePrep prepare_verified_frame(const NoiseParams& np, Kind kind, Rng& rng, int retry_cap,
                                 FaultInjector* inj) {
  for (int attempt = 0; attempt <= retry_cap; ++attempt) {
    FrameAttempt a = run_attempt_frame(np, kind, rng, inj);
    if (a.accepted) return {a.residual, attempt};
  }
  throw StarvationError(retry_cap + 1);
}

SvPrep prepare_verified_sv(const NoiseParams& np, Kind kind, Rng& rng, int retry_cap,
                           FaultInjector* inj) {
  for (int attempt = 0; attempt <= retry_cap; ++attempt) {
    SvAttempt a = run_attempt_sv(np, kind, rng, inj);
    if (a.accepted) return {std::move(a.state), attempt};
  }
  throw StarvationError(retry_cap + 1);
}

PauliString run_unverified_frame(const NoiseParams& np, Kind kind, Rng& rng) {
  PauliFrame f(kDataQubits);
  run_noisy(unverified_prep_schedule(), np, f, rng);
  if (kind == Kind::kAX) run_noisy(rotation_schedule(), np, f, rng);
  return f.frame;
}

StateVector run_unverified_sv(const NoiseParams& np, Kind kind, Rng& rng) {
  StateVector s(kDataQubits);
  run_noisy(unverified_prep_schedule(), np, s, rng);
  if (kind == Kind::kAX) run_noisy(rotation_schedule(), np, s, rng);
  return s;
}

namespace {

// Pauli residuals make every statevector trial fidelity exactly 0 or 1, so a
// Bernoulli count is the full story for both engines.
bool frame_trial_fidelity_one(const PauliString& residual, Kind kind) {
  switch (residual_class(residual, steane::tables())) {
    case ResidualClass::kIdentity:
    case ResidualClass::kStabilizer:
      return true;
    case ResidualClass::kLogicalX:
      return kind == Kind::kAX;  // logical X fixes (|0_L>+|1_L>)/sqrt(2)
    case ResidualClass::kLogicalZ:
      return kind == Kind::kAZ;  // logical Z fixes |0_L>
    default:
      return false;
  }
}

bool sv_trial_fidelity_one(const StateVector& state, Kind kind) {
  const double f = fidelity(state, reference_state(kind));
  return f > 0.5;
}

// First basis word carrying amplitude; the support of a Pauli-shifted code
// state is a single X-coset, so any support word identifies it.
uint32_t support_word(const StateVector& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (std::norm(s.amplitude(i)) > 1e-9) return static_cast<uint32_t>(i);
  return 0;
}

struct TrialTally {
  long good = 0;
  long attempts = 0;
};

template <class TrialFn>
Estimate run_trials(long trials, uint64_t seed, int threads, TrialFn&& trial) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int nthreads = resolve_threads(threads);
  std::vector<TrialTally> tallies(nthreads);
  parallel_blocks(trials, nthreads, [&](int tid, long begin, long end) {
    TrialTally local;
    for (long i = begin; i < end; ++i) {
      Rng rng = make_stream(seed, static_cast<uint64_t>(i));
      local.good += trial(rng, local.attempts) ? 1 : 0;
    }
    tallies[tid] = local;
  });
  TrialTally total;
  for (const TrialTally& t : tallies) {
    total.good += t.good;
    total.attempts += t.attempts;
  }
  Estimate e;
  e.value = static_cast<double>(total.good) / static_cast<double>(trials);
  e.stderr_ = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
  e.attempts = total.attempts;
  e.accept_rate = static_cast<double>(trials) / static_cast<double>(total.attempts);
  return e;
}

}  // namespace

Estimate estimate_fidelity(const NoiseParams& np, Kind kind, bool with_verification,
                           long trials, EngineKind engine, uint64_t seed, int threads) {
  validate(np);
  if (engine == EngineKind::kPauliFrame) {
    return run_trials(trials, seed, threads, [&](Rng& rng, long& attempts) {
      PauliString residual;
      if (with_verification) {
        FramePrep p = prepare_verified_frame(np, kind, rng);
        attempts += p.n_retries + 1;
        residual = p.residual;
      } else {
        attempts += 1;
        residual = run_unverified_frame(np, kind, rng);
      }
      return frame_trial_fidelity_one(residual, kind);
    });
  }
  return run_trials(trials, seed, threads, [&](Rng& rng, long& attempts) {
    if (with_verification) {
      SvPrep p = prepare_verified_sv(np, kind, rng);
      attempts += p.n_retries + 1;
      return sv_trial_fidelity_one(p.state, kind);
    }
    attempts += 1;
    return sv_trial_fidelity_one(run_unverified_sv(np, kind, rng), kind);
  });
}

Estimate estimate_p_two_bitflip(const NoiseParams& np, bool with_verification, long trials,
                                EngineKind engine, uint64_t seed, int threads) {
  validate(np);
  const steane::CodeTables& t = steane::tables();
  if (engine == EngineKind::kPauliFrame) {
    return run_trials(trials, seed, threads, [&](Rng& rng, long& attempts) {
      PauliString residual;
      if (with_verification) {
        FramePrep p = prepare_verified_frame(np, Kind::kAZ, rng);
        attempts += p.n_retries + 1;
        residual = p.residual;
      } else {
        attempts += 1;
        residual = run_unverified_frame(np, Kind::kAZ, rng);
      }
      return t.min_coset_weight(residual.x) >= 2;
    });
  }
  return run_trials(trials, seed, threads, [&](Rng& rng, long& attempts) {
    StateVector state(kDataQubits);
    if (with_verification) {
      SvPrep p = prepare_verified_sv(np, Kind::kAZ, rng);
      attempts += p.n_retries + 1;
      state = std::move(p.state);
    } else {
      attempts += 1;
      state = run_unverified_sv(np, Kind::kAZ, rng);
    }
    return t.min_coset_weight(support_word(state)) >= 2;
  });
}

}  // namespace qsim::ancilla
