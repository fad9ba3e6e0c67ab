#pragma once

#include <optional>
#include <vector>

#include "qsim/recovery.hpp"

namespace qsim::experiments {

enum class Mode { kNaked, kEncodedCorrected, kEncodedUncorrected };

struct ChannelConfig {
  double epsilon = 0.0;
  double gamma = 0.0;
  bool include_idle_memory = true;
  int t_max = 1;
  int period = 1;  // time steps between corrections
  long trials = 1;
  Mode mode = Mode::kNaked;
  EngineKind engine = EngineKind::kPauliFrame;
  uint64_t seed = 0;
  int retry_cap = ancilla::kRetryCapDefault;
  int threads = 0;  // 0 = QSIM_THREADS / hardware
};

struct CurvePoint {
  int t = 0;
  double fidelity = 0.0;
  double stderr_ = 0.0;
  long n_trials = 0;
};

struct Curve {
  std::vector<CurvePoint> points;
  long starved_trials = 0;  // aborted and excluded whole
};

// Naked |+> through t steps of epsilon-memory noise; fidelity against |+>
// sampled at every epoch (multiples of period).
Curve run_naked(const ChannelConfig& config);

// Exactly prepared (|0_L>+|1_L>)/sqrt(2) through the channel; every `period`
// steps a correction round runs in corrected mode. Fidelity is taken against
// the ideal encoded state after the round.
Curve run_encoded(const ChannelConfig& config);

Curve run_channel(const ChannelConfig& config);

struct NakedClosedForm {
  double estimate;  // (1 - 2e/3)^t, the small-epsilon estimate
  double exact;     // (1 + (1 - 4e/3)^t)/2
};

NakedClosedForm naked_fidelity_closed_form(double epsilon, long t);

// Smallest epoch where the encoded curve exceeds the naked one by more than
// the joint standard error for `confirm_window` consecutive epochs.
std::optional<int> find_critical_time(const Curve& naked, const Curve& encoded,
                                      int confirm_window = 5);

}  // namespace qsim::experiments
