#include "qsim/recovery.hpp"

#include <cmath>
#include <complex>

#include "qsim/steane.hpp"

namespace qsim::recovery {

using steane::kDataQubits;

Syndrome vote(Syndrome s1, Syndrome s2, Syndrome s3) {
  if (s1 == s2 || s1 == s3) return s1;
  if (s2 == s3) return s2;
  return (s1 & s2) | (s1 & s3) | (s2 & s3);
}

const ScheduledCircuit& z_extraction_schedule() {
  static const ScheduledCircuit sc = [] {
    Circuit c = steane::transversal_cnot(2 * kDataQubits, kDataQubits, 0);
    const Circuit h = steane::transversal(GateKind::H, 2 * kDataQubits, kDataQubits);
    c.gates.insert(c.gates.end(), h.gates.begin(), h.gates.end());
    return schedule_asap(c);
  }();
  return sc;
}

const ScheduledCircuit& x_extraction_schedule() {
  static const ScheduledCircuit sc =
      schedule_asap(steane::transversal_cnot(2 * kDataQubits, 0, kDataQubits));
  return sc;
}

namespace {

PauliString embed_pair(const PauliString& data, const PauliString& anc) {
  PauliString joint = PauliString::identity(2 * kDataQubits);
  joint.x = data.x | (anc.x << kDataQubits);
  joint.z = data.z | (anc.z << kDataQubits);
  return joint;
}

Syndrome extract_frame(PauliString& data, ancilla::Kind kind, const ScheduledCircuit& sc,
                       const NoiseParams& np, Rng& rng, int retry_cap, FaultInjector* inj,
                       int* retries) {
  ancilla::FramePrep prep = ancilla::prepare_verified_frame(np, kind, rng, retry_cap, inj);
  if (retries) *retries += prep.n_retries;

  thread_local std::vector<int32_t> faults;
  sample_fault_locations(sc, np, rng, faults);
  if (faults.empty() && inj == nullptr && data.is_identity() && prep.residual.is_identity())
    return 0;  // clean in, clean out

  PauliFrame f(embed_pair(data, prep.residual));
  execute_with_faults(sc, faults, f, rng, inj);
  const uint32_t flips = (f.frame.x >> kDataQubits) & steane::kAllOnes;
  data = f.frame.restrict_low(kDataQubits);
  // The clean network reads out a codeword, so only the flips reach H.
  return steane::hamming_syndrome(flips);
}

constexpr int kBlock = 1 << kDataQubits;  // 128

void scratch_pauli(std::complex<double>* amps, int q, Pauli p) {
  const size_t dim = size_t{1} << (2 * kDataQubits);
  const size_t m = size_t{1} << q;
  switch (p) {
    case Pauli::I:
      break;
    case Pauli::X:
      for (size_t base = 0; base < dim; base += 2 * m)
        for (size_t i = base; i < base + m; ++i) std::swap(amps[i], amps[i | m]);
      break;
    case Pauli::Z:
      for (size_t base = 0; base < dim; base += 2 * m)
        for (size_t i = base + m; i < base + 2 * m; ++i) amps[i] = -amps[i];
      break;
    case Pauli::Y:
      for (size_t base = 0; base < dim; base += 2 * m)
        for (size_t i = base; i < base + m; ++i) {
          const auto a = amps[i];
          const auto b = amps[i | m];
          amps[i] = std::complex<double>(b.imag(), -b.real());
          amps[i | m] = std::complex<double>(-a.imag(), a.real());
        }
      break;
  }
}

int sample_mass(const double* mass, double total, Rng& rng) {
  const double target = uniform01(rng) * total;
  double cum = 0.0;
  int last_nonzero = 0;
  for (int w = 0; w < kBlock; ++w) {
    if (mass[w] <= 0.0) continue;
    last_nonzero = w;
    cum += mass[w];
    if (target < cum) return w;
  }
  return last_nonzero;
}

// Fault-free bit-flip extraction never entangles beyond the index relabeling:
// outcome masses factor into norm products, so nothing 14 qubits wide is ever
// materialized.
Syndrome fast_extract_clean_x(StateVector& data, const StateVector& anc, Rng& rng) {
  double nd[kBlock], na[kBlock];
  for (int i = 0; i < kBlock; ++i) {
    nd[i] = std::norm(data.amplitude(i));
    na[i] = std::norm(anc.amplitude(i));
  }
  double mass[kBlock];
  double total = 0.0;
  for (int w = 0; w < kBlock; ++w) {
    double m = 0.0;
    for (int d = 0; d < kBlock; ++d) m += na[w ^ d] * nd[d];
    mass[w] = m;
    total += m;
  }
  const int word = sample_mass(mass, total, rng);
  const double scale = 1.0 / std::sqrt(mass[word]);
  for (int d = 0; d < kBlock; ++d)
    data.set_amplitude(d, anc.amplitude(word ^ d) * data.amplitude(d) * scale);
  return steane::hamming_syndrome(static_cast<uint32_t>(word));
}

void wht128(std::complex<double>* v) {
  for (int k = 0; k < kDataQubits; ++k) {
    const int m = 1 << k;
    for (int base = 0; base < kBlock; base += 2 * m)
      for (int i = base; i < base + m; ++i) {
        const auto x = v[i];
        const auto y = v[i | m];
        v[i] = x + y;
        v[i | m] = x - y;
      }
  }
}

// Fault-free phase extraction, worked in the Hadamard-transformed frame where
// it looks exactly like the bit-flip one: with A = WHT(anc), D = WHT(data),
// outcome masses are the norm correlation sum_u |A[u^m]|^2 |D[u]|^2 and the
// measured branch is the inverse transform of A[u^w] D[u].
Syndrome fast_extract_clean_z(StateVector& data, const StateVector& anc, Rng& rng) {
  std::complex<double> a_wht[kBlock], d_wht[kBlock];
  for (int i = 0; i < kBlock; ++i) {
    a_wht[i] = anc.amplitude(i);
    d_wht[i] = data.amplitude(i);
  }
  wht128(a_wht);
  wht128(d_wht);

  double na[kBlock], nd[kBlock];
  for (int i = 0; i < kBlock; ++i) {
    na[i] = std::norm(a_wht[i]);
    nd[i] = std::norm(d_wht[i]);
  }
  double mass[kBlock];
  double total = 0.0;
  for (int w = 0; w < kBlock; ++w) {
    double m = 0.0;
    for (int u = 0; u < kBlock; ++u) m += na[w ^ u] * nd[u];
    mass[w] = m;
    total += m;
  }
  const int word = sample_mass(mass, total, rng);

  std::complex<double> branch[kBlock];
  for (int u = 0; u < kBlock; ++u) branch[u] = a_wht[word ^ u] * d_wht[u];
  wht128(branch);
  double norm = 0.0;
  for (int d = 0; d < kBlock; ++d) norm += std::norm(branch[d]);
  const double scale = 1.0 / std::sqrt(norm);
  for (int d = 0; d < kBlock; ++d) data.set_amplitude(d, branch[d] * scale);
  return steane::hamming_syndrome(static_cast<uint32_t>(word));
}

// Fused 14-qubit extraction: joint construction and the transversal CNOT
// collapse into one pass, the ancilla Hadamard layer runs unscaled (faults
// and the final normalization are scale-blind), and the block measurement
// samples straight off the scratch register. Draw-for-draw identical to the
// generic path, which stays in use whenever an injector is attached.
Syndrome fast_extract_sv(StateVector& data, const StateVector& anc, bool z_type,
                         const ScheduledCircuit& sc, std::span<const int32_t> faults,
                         Rng& rng) {
  if (faults.empty())
    return z_type ? fast_extract_clean_z(data, anc, rng)
                  : fast_extract_clean_x(data, anc, rng);
  thread_local std::vector<std::complex<double>> scratch;
  scratch.resize(size_t{1} << (2 * kDataQubits));
  std::complex<double>* s = scratch.data();

  if (z_type) {
    // CNOT ancilla->data: |d,a> -> |d^a,a>
    for (int a = 0; a < kBlock; ++a) {
      const auto av = anc.amplitude(a);
      std::complex<double>* row = s + (a << kDataQubits);
      for (int d = 0; d < kBlock; ++d) row[d] = av * data.amplitude(d ^ a);
    }
  } else {
    // CNOT data->ancilla: |d,a> -> |d,a^d>
    for (int a = 0; a < kBlock; ++a) {
      std::complex<double>* row = s + (a << kDataQubits);
      for (int d = 0; d < kBlock; ++d) row[d] = anc.amplitude(a ^ d) * data.amplitude(d);
    }
  }

  size_t fi = 0;
  auto faults_through = [&](int32_t hi) {
    for (; fi < faults.size() && faults[fi] < hi; ++fi) {
      const FaultLocation& fl = sc.fault_locations[faults[fi]];
      if (fl.kind == FaultKind::kGate2) {
        const uint32_t r = 1 + bounded(rng, 15);
        scratch_pauli(s, fl.q0, static_cast<Pauli>(r >> 2));
        scratch_pauli(s, fl.q1, static_cast<Pauli>(r & 3));
      } else {
        scratch_pauli(s, fl.q0, static_cast<Pauli>(1 + bounded(rng, 3)));
      }
    }
  };
  faults_through(sc.layer_fault_span[0].second);

  if (z_type) {
    // transversal H on the ancilla block, scaling deferred
    for (int k = 0; k < kDataQubits; ++k) {
      const size_t m = size_t{1} << (kDataQubits + k);
      for (size_t base = 0; base < scratch.size(); base += 2 * m)
        for (size_t i = base; i < base + m; ++i) {
          const auto a = s[i];
          const auto b = s[i | m];
          s[i] = a + b;
          s[i | m] = a - b;
        }
    }
    faults_through(sc.layer_fault_span[1].second);
  }

  double mass[kBlock];
  double total = 0.0;
  for (int w = 0; w < kBlock; ++w) {
    double m = 0.0;
    const std::complex<double>* row = s + (w << kDataQubits);
    for (int d = 0; d < kBlock; ++d) m += std::norm(row[d]);
    mass[w] = m;
    total += m;
  }
  const int word = sample_mass(mass, total, rng);

  const double scale = 1.0 / std::sqrt(mass[word]);
  const std::complex<double>* row = s + (word << kDataQubits);
  for (int d = 0; d < kBlock; ++d) data.set_amplitude(d, row[d] * scale);
  return steane::hamming_syndrome(static_cast<uint32_t>(word));
}

Syndrome extract_sv(StateVector& data, ancilla::Kind kind, const NoiseParams& np,
                    Rng& rng, int retry_cap, FaultInjector* inj, int* retries) {
  ancilla::SvPrep prep = ancilla::prepare_verified_sv(np, kind, rng, retry_cap, inj);
  if (retries) *retries += prep.n_retries;
  return extract_core_sv(data, prep.state, kind == ancilla::Kind::kAZ, np, rng, inj);
}

// The correction is one noisy one-qubit gate; the six bystander data qubits
// idle through its time step. Handled outside run_noisy because on the frame
// engine the gate itself composes into the error rather than conjugating it.
template <class Engine>
void noisy_correction(Engine& eng, int qubit, Pauli kind, const NoiseParams& np, Rng& rng,
                      FaultInjector* inj) {
  apply_correction(eng, qubit, kind);
  const int32_t base = inj ? inj->claim(kDataQubits) : 0;
  thread_local std::vector<int32_t> hits;
  hits.clear();
  for_each_hit(1, np.epsilon, rng, [&](int64_t) { hits.push_back(0); });
  if (np.include_idle_memory)
    for_each_hit(kDataQubits - 1, np.epsilon, rng,
                 [&](int64_t i) { hits.push_back(static_cast<int32_t>(i) + 1); });
  size_t next = 0;
  for (int32_t loc = 0; loc < kDataQubits; ++loc) {
    // location 0 is the gate itself; 1..6 are the other qubits in ascending order
    int q = 0;
    if (loc == 0) {
      q = qubit;
    } else {
      q = loc - 1;
      if (q >= qubit) ++q;
    }
    if (next < hits.size() && hits[next] == loc) {
      ++next;
      apply_fault(eng, q, static_cast<Pauli>(1 + bounded(rng, 3)));
    }
    if (inj)
      while (const PlannedFault* pf = inj->take(base + loc)) apply_fault(eng, q, pf->a);
  }
}

template <class Engine, class ExtractZ, class ExtractX>
RecoveryReport round_impl(Engine& data, const NoiseParams& np, Rng& rng, int retry_cap,
                          FaultInjector* inj, ExtractZ&& extract_z, ExtractX&& extract_x) {
  RecoveryReport r;
  for (int k = 0; k < 3; ++k)
    r.z_syndromes[k] = extract_z(data, np, rng, retry_cap, inj, &r.ancilla_retries);
  r.voted_z = vote(r.z_syndromes[0], r.z_syndromes[1], r.z_syndromes[2]);
  if (const int pos = steane::correction_from_syndrome(r.voted_z); pos != 0) {
    r.z_correction = pos;
    noisy_correction(data, pos - 1, Pauli::Z, np, rng, inj);
  }
  for (int k = 0; k < 3; ++k)
    r.x_syndromes[k] = extract_x(data, np, rng, retry_cap, inj, &r.ancilla_retries);
  r.voted_x = vote(r.x_syndromes[0], r.x_syndromes[1], r.x_syndromes[2]);
  if (const int pos = steane::correction_from_syndrome(r.voted_x); pos != 0) {
    r.x_correction = pos;
    noisy_correction(data, pos - 1, Pauli::X, np, rng, inj);
  }
  return r;
}

}  // namespace

Syndrome extract_z_syndrome_frame(PauliString& data, const NoiseParams& np, Rng& rng,
                                  int retry_cap, FaultInjector* inj, int* retries) {
  return extract_frame(data, ancilla::Kind::kAZ, z_extraction_schedule(), np, rng, retry_cap,
                       inj, retries);
}

Syndrome extract_x_syndrome_frame(PauliString& data, const NoiseParams& np, Rng& rng,
                                  int retry_cap, FaultInjector* inj, int* retries) {
  return extract_frame(data, ancilla::Kind::kAX, x_extraction_schedule(), np, rng, retry_cap,
                       inj, retries);
}

Syndrome extract_z_syndrome_sv(StateVector& data, const NoiseParams& np, Rng& rng,
                               int retry_cap, FaultInjector* inj, int* retries) {
  return extract_sv(data, ancilla::Kind::kAZ, np, rng, retry_cap, inj, retries);
}

Syndrome extract_x_syndrome_sv(StateVector& data, const NoiseParams& np, Rng& rng,
                               int retry_cap, FaultInjector* inj, int* retries) {
  return extract_sv(data, ancilla::Kind::kAX, np, rng, retry_cap, inj, retries);
}

Syndrome extract_core_sv(StateVector& data, const StateVector& ancilla_state, bool z_type,
                         const NoiseParams& np, Rng& rng, FaultInjector* inj) {
  const ScheduledCircuit& sc = z_type ? z_extraction_schedule() : x_extraction_schedule();
  if (inj == nullptr) {
    thread_local std::vector<int32_t> faults;
    sample_fault_locations(sc, np, rng, faults);
    return fast_extract_sv(data, ancilla_state, z_type, sc, faults, rng);
  }
  StateVector joint = tensor(data, ancilla_state);
  run_noisy(sc, np, joint, rng, inj);
  const uint32_t word = measure_block(joint, kDataQubits, kDataQubits, rng);
  data = extract_low(joint, kDataQubits, word);
  return steane::hamming_syndrome(word);
}

RecoveryReport correct_round_frame(PauliString& data, const NoiseParams& np, Rng& rng,
                                   int retry_cap, FaultInjector* inj) {
  return round_impl(data, np, rng, retry_cap, inj,
                    [](PauliString& d, const NoiseParams& n, Rng& r, int cap,
                       FaultInjector* i, int* rt) {
                      return extract_z_syndrome_frame(d, n, r, cap, i, rt);
                    },
                    [](PauliString& d, const NoiseParams& n, Rng& r, int cap,
                       FaultInjector* i, int* rt) {
                      return extract_x_syndrome_frame(d, n, r, cap, i, rt);
                    });
}

RecoveryReport correct_round_sv(StateVector& data, const NoiseParams& np, Rng& rng,
                                int retry_cap, FaultInjector* inj) {
  return round_impl(data, np, rng, retry_cap, inj,
                    [](StateVector& d, const NoiseParams& n, Rng& r, int cap,
                       FaultInjector* i, int* rt) {
                      return extract_z_syndrome_sv(d, n, r, cap, i, rt);
                    },
                    [](StateVector& d, const NoiseParams& n, Rng& r, int cap,
                       FaultInjector* i, int* rt) {
                      return extract_x_syndrome_sv(d, n, r, cap, i, rt);
                    });
}

}  // namespace qsim::recovery
