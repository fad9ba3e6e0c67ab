#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/pauli.hpp"
#include "qsim/rng.hpp"

namespace qsim {

// Isotropic depolarizing model: epsilon per one-qubit gate or memory step
// (each of X,Y,Z with probability epsilon/3), gamma per two-qubit gate (each
// of the 15 non-identity pairs with probability gamma/15). Measurements and
// resets are noiseless.
struct NoiseParams {
  double epsilon = 0.0;
  double gamma = 0.0;
  bool include_idle_memory = true;
};

inline void validate(const NoiseParams& np) {
  if (np.epsilon < 0.0 || np.epsilon > 1.0 || np.gamma < 0.0 || np.gamma > 1.0)
    throw std::invalid_argument("noise probabilities must lie in [0,1]");
}

Pauli sample_one_qubit_fault(double epsilon, Rng& rng);
std::pair<Pauli, Pauli> sample_two_qubit_fault(double gamma, Rng& rng);

enum class FaultKind : uint8_t { kGate1, kGate2, kIdle };

struct FaultLocation {
  int32_t layer;
  FaultKind kind;
  uint8_t q0 = 0;
  uint8_t q1 = 0;
};

// Greedy as-soon-as-possible layering of a gate list. Every gate lands in the
// earliest layer after all gates sharing one of its qubits; every qubit not
// acted on in a layer contributes an idle fault location.
struct ScheduledCircuit {
  int n_qubits = 0;
  std::vector<std::vector<Gate>> layers;
  std::vector<FaultLocation> fault_locations;  // layer-major: gates, then idles
  std::vector<int32_t> gate1_locs;             // indices into fault_locations
  std::vector<int32_t> gate2_locs;
  std::vector<int32_t> idle_locs;
  std::vector<std::pair<int32_t, int32_t>> layer_fault_span;

  int32_t location_count() const { return static_cast<int32_t>(fault_locations.size()); }
};

ScheduledCircuit schedule_asap(const Circuit& c);

// A forced fault at an absolute location index (see FaultInjector); `b` is
// used only at two-qubit locations.
struct PlannedFault {
  int32_t location;
  Pauli a = Pauli::I;
  Pauli b = Pauli::I;
};

using AppliedFault = PlannedFault;

// Threads a global location counter through the segments of a composite
// network so planned faults can address any location of the realized run.
class FaultInjector {
 public:
  FaultInjector() = default;
  explicit FaultInjector(std::span<const PlannedFault> sorted_plan) : plan_(sorted_plan) {}

  int32_t cursor() const { return cursor_; }
  int32_t claim(int32_t n) {
    const int32_t base = cursor_;
    cursor_ += n;
    return base;
  }

  // One planned fault per call for the given absolute location, else nullptr.
  const PlannedFault* take(int32_t absolute_location) {
    while (next_ < plan_.size() && plan_[next_].location < absolute_location) ++next_;
    if (next_ < plan_.size() && plan_[next_].location == absolute_location)
      return &plan_[next_++];
    return nullptr;
  }

 private:
  std::span<const PlannedFault> plan_;
  size_t next_ = 0;
  int32_t cursor_ = 0;
};

// Samples which locations of a scheduled circuit fail; indices ascending.
void sample_fault_locations(const ScheduledCircuit& sc, const NoiseParams& np, Rng& rng,
                            std::vector<int32_t>& out);

// Runs the circuit on an engine (state vector or Pauli frame), applying the
// sampled faults after the ideal gates of their layer, in location order.
// Fault kinds are drawn here: X/Y/Z uniformly for one-qubit locations, one of
// the 15 pairs for two-qubit locations.
template <class Engine>
void execute_with_faults(const ScheduledCircuit& sc, std::span<const int32_t> faulty,
                         Engine& eng, Rng& rng, FaultInjector* inj = nullptr,
                         std::vector<AppliedFault>* audit = nullptr) {
  const int32_t base = inj ? inj->claim(sc.location_count()) : 0;
  size_t next_fault = 0;
  for (size_t layer = 0; layer < sc.layers.size(); ++layer) {
    for (const Gate& g : sc.layers[layer]) eng.apply_gate(g);
    const auto [lo, hi] = sc.layer_fault_span[layer];
    for (int32_t loc = lo; loc < hi; ++loc) {
      const FaultLocation& fl = sc.fault_locations[loc];
      if (next_fault < faulty.size() && faulty[next_fault] == loc) {
        ++next_fault;
        AppliedFault f{base + loc};
        if (fl.kind == FaultKind::kGate2) {
          const uint32_t r = 1 + bounded(rng, 15);
          f.a = static_cast<Pauli>(r >> 2);
          f.b = static_cast<Pauli>(r & 3);
          apply_fault(eng, fl.q0, f.a);
          apply_fault(eng, fl.q1, f.b);
        } else {
          f.a = static_cast<Pauli>(1 + bounded(rng, 3));
          apply_fault(eng, fl.q0, f.a);
        }
        if (audit) audit->push_back(f);
      }
      if (inj) {
        while (const PlannedFault* pf = inj->take(base + loc)) {
          apply_fault(eng, fl.q0, pf->a);
          if (fl.kind == FaultKind::kGate2) apply_fault(eng, fl.q1, pf->b);
          if (audit) audit->push_back(*pf);
        }
      }
    }
  }
}

template <class Engine>
void run_noisy(const ScheduledCircuit& sc, const NoiseParams& np, Engine& eng, Rng& rng,
               FaultInjector* inj = nullptr, std::vector<AppliedFault>* audit = nullptr) {
  thread_local std::vector<int32_t> scratch;
  sample_fault_locations(sc, np, rng, scratch);
  execute_with_faults(sc, scratch, eng, rng, inj, audit);
}

}  // namespace qsim
