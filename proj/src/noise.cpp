#include "qsim/noise.hpp"

#include <algorithm>

namespace qsim {

Pauli sample_one_qubit_fault(double epsilon, Rng& rng) {
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon out of range");
  if (uniform01(rng) >= epsilon) return Pauli::I;
  return static_cast<Pauli>(1 + bounded(rng, 3));
}

std::pair<Pauli, Pauli> sample_two_qubit_fault(double gamma, Rng& rng) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma out of range");
  if (uniform01(rng) >= gamma) return {Pauli::I, Pauli::I};
  const uint32_t r = 1 + bounded(rng, 15);
  return {static_cast<Pauli>(r >> 2), static_cast<Pauli>(r & 3)};
}

ScheduledCircuit schedule_asap(const Circuit& c) {
  ScheduledCircuit sc;
  sc.n_qubits = c.n_qubits;
  std::vector<int32_t> last_layer(c.n_qubits, -1);
  for (const Gate& g : c.gates) {
    if (g.q0 >= c.n_qubits || (is_two_qubit(g.kind) && g.q1 >= c.n_qubits))
      throw std::out_of_range("gate qubit outside circuit");
    int32_t layer = last_layer[g.q0] + 1;
    if (is_two_qubit(g.kind)) layer = std::max(layer, last_layer[g.q1] + 1);
    if (layer >= static_cast<int32_t>(sc.layers.size())) sc.layers.resize(layer + 1);
    sc.layers[layer].push_back(g);
    last_layer[g.q0] = layer;
    if (is_two_qubit(g.kind)) last_layer[g.q1] = layer;
  }

  std::vector<bool> busy(c.n_qubits);
  for (size_t layer = 0; layer < sc.layers.size(); ++layer) {
    const int32_t span_begin = sc.location_count();
    std::fill(busy.begin(), busy.end(), false);
    for (const Gate& g : sc.layers[layer]) {
      const auto idx = static_cast<int32_t>(sc.fault_locations.size());
      if (is_two_qubit(g.kind)) {
        sc.fault_locations.push_back(
            {static_cast<int32_t>(layer), FaultKind::kGate2, g.q0, g.q1});
        sc.gate2_locs.push_back(idx);
        busy[g.q1] = true;
      } else {
        sc.fault_locations.push_back({static_cast<int32_t>(layer), FaultKind::kGate1, g.q0});
        sc.gate1_locs.push_back(idx);
      }
      busy[g.q0] = true;
    }
    for (int q = 0; q < c.n_qubits; ++q) {
      if (busy[q]) continue;
      sc.idle_locs.push_back(sc.location_count());
      sc.fault_locations.push_back(
          {static_cast<int32_t>(layer), FaultKind::kIdle, static_cast<uint8_t>(q)});
    }
    sc.layer_fault_span.emplace_back(span_begin, sc.location_count());
  }
  return sc;
}

void sample_fault_locations(const ScheduledCircuit& sc, const NoiseParams& np, Rng& rng,
                            std::vector<int32_t>& out) {
  validate(np);
  out.clear();
  for_each_hit(static_cast<int64_t>(sc.gate1_locs.size()), np.epsilon, rng,
               [&](int64_t i) { out.push_back(sc.gate1_locs[i]); });
  if (np.include_idle_memory)
    for_each_hit(static_cast<int64_t>(sc.idle_locs.size()), np.epsilon, rng,
                 [&](int64_t i) { out.push_back(sc.idle_locs[i]); });
  for_each_hit(static_cast<int64_t>(sc.gate2_locs.size()), np.gamma, rng,
               [&](int64_t i) { out.push_back(sc.gate2_locs[i]); });
  std::sort(out.begin(), out.end());
}

}  // namespace qsim
