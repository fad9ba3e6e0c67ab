#include "qsim/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "qsim/parallel.hpp"
#include "qsim/steane.hpp"

namespace qsim::experiments {

using steane::kDataQubits;

namespace {

void validate(const ChannelConfig& c) {
  if (c.period < 1 || c.t_max < 1 || c.trials < 1)
    throw std::invalid_argument("channel config out of range");
  qsim::validate(NoiseParams{c.epsilon, c.gamma, c.include_idle_memory});
}

int epoch_count(const ChannelConfig& c) { return c.t_max / c.period; }

// Per-epoch success totals, combined across threads in index order. Counts
// are integers, so the reduction is exact and thread-count independent.
struct Tally {
  std::vector<long> good;
  long completed = 0;
  long starved = 0;

  explicit Tally(int epochs) : good(epochs, 0) {}
  void merge(const Tally& o) {
    for (size_t i = 0; i < good.size(); ++i) good[i] += o.good[i];
    completed += o.completed;
    starved += o.starved;
  }
};

Curve to_curve(const ChannelConfig& c, const Tally& tally) {
  Curve out;
  out.starved_trials = tally.starved;
  const int epochs = epoch_count(c);
  out.points.reserve(epochs);
  for (int k = 0; k < epochs; ++k) {
    CurvePoint p;
    p.t = (k + 1) * c.period;
    p.n_trials = tally.completed;
    p.fidelity = tally.completed ? static_cast<double>(tally.good[k]) /
                                       static_cast<double>(tally.completed)
                                 : 0.0;
    p.stderr_ = tally.completed
                    ? std::sqrt(p.fidelity * (1.0 - p.fidelity) /
                                static_cast<double>(tally.completed))
                    : 0.0;
    out.points.push_back(p);
  }
  return out;
}

template <class TrialFn>
Curve run_trial_loop(const ChannelConfig& c, TrialFn&& trial) {
  const int epochs = epoch_count(c);
  const int nthreads = resolve_threads(c.threads);
  std::vector<Tally> tallies(nthreads, Tally(epochs));
  parallel_blocks(c.trials, nthreads, [&](int tid, long begin, long end) {
    Tally local(epochs);
    std::vector<uint8_t> ok(epochs);
    for (long i = begin; i < end; ++i) {
      Rng rng = make_stream(c.seed, static_cast<uint64_t>(i));
      if (!trial(rng, ok)) {
        ++local.starved;
        continue;
      }
      ++local.completed;
      for (int k = 0; k < epochs; ++k) local.good[k] += ok[k];
    }
    tallies[tid] = std::move(local);
  });
  Tally total(epochs);
  for (const Tally& t : tallies) total.merge(t);
  return to_curve(c, total);
}

}  // namespace

Curve run_naked(const ChannelConfig& c) {
  validate(c);
  const int epochs = epoch_count(c);
  if (c.engine == EngineKind::kPauliFrame) {
    return run_trial_loop(c, [&](Rng& rng, std::vector<uint8_t>& ok) {
      // Success iff the accumulated frame has no Z part; X fixes |+>.
      thread_local std::vector<int64_t> flips;
      flips.clear();
      for_each_hit(c.t_max, c.epsilon, rng, [&](int64_t s) {
        const Pauli kind = static_cast<Pauli>(1 + bounded(rng, 3));
        if (kind != Pauli::X) flips.push_back(s);
      });
      int z = 0;
      size_t f = 0;
      for (int k = 0; k < epochs; ++k) {
        const int64_t t = static_cast<int64_t>(k + 1) * c.period;
        while (f < flips.size() && flips[f] < t) {
          z ^= 1;
          ++f;
        }
        ok[k] = static_cast<uint8_t>(z == 0);
      }
      return true;
    });
  }
  return run_trial_loop(c, [&](Rng& rng, std::vector<uint8_t>& ok) {
    StateVector plus(1);
    plus.apply_gate(gate_h(0));
    StateVector state = plus;
    for (int k = 0; k < epochs; ++k) {
      for (int s = 0; s < c.period; ++s)
        apply_fault(state, 0, sample_one_qubit_fault(c.epsilon, rng));
      const double f = fidelity(state, plus);
      ok[k] = static_cast<uint8_t>(f > 0.5);
    }
    return true;
  });
}

Curve run_encoded(const ChannelConfig& c) {
  validate(c);
  if (c.mode == Mode::kNaked) throw std::invalid_argument("encoded run given naked mode");
  const bool corrected = c.mode == Mode::kEncodedCorrected;
  const int epochs = epoch_count(c);
  const NoiseParams np{c.epsilon, c.gamma, c.include_idle_memory};

  if (c.engine == EngineKind::kPauliFrame) {
    const steane::CodeTables& tables = steane::tables();
    return run_trial_loop(c, [&, np](Rng& rng, std::vector<uint8_t>& ok) {
      PauliString frame = PauliString::identity(kDataQubits);
      for (int k = 0; k < epochs; ++k) {
        for (int s = 0; s < c.period; ++s)
          for_each_hit(kDataQubits, c.epsilon, rng, [&](int64_t q) {
            frame = mul(PauliString::single(kDataQubits, static_cast<int>(q),
                                            static_cast<Pauli>(1 + bounded(rng, 3))),
                        frame);
          });
        if (corrected) {
          try {
            recovery::correct_round_frame(frame, np, rng, c.retry_cap);
          } catch (const ancilla::StarvationError&) {
            return false;
          }
        }
        const ResidualClass cls = residual_class(frame, tables);
        ok[k] = static_cast<uint8_t>(cls == ResidualClass::kIdentity ||
                                     cls == ResidualClass::kStabilizer ||
                                     cls == ResidualClass::kLogicalX);
      }
      return true;
    });
  }

  return run_trial_loop(c, [&, np](Rng& rng, std::vector<uint8_t>& ok) {
    const StateVector& ideal = steane::plus_logical_state();
    StateVector state = ideal;
    for (int k = 0; k < epochs; ++k) {
      for (int s = 0; s < c.period; ++s)
        for_each_hit(kDataQubits, c.epsilon, rng, [&](int64_t q) {
          apply_fault(state, static_cast<int>(q),
                      static_cast<Pauli>(1 + bounded(rng, 3)));
        });
      if (corrected) {
        try {
          recovery::correct_round_sv(state, np, rng, c.retry_cap);
        } catch (const ancilla::StarvationError&) {
          return false;
        }
      }
      const double f = fidelity(state, ideal);
      ok[k] = static_cast<uint8_t>(f > 0.5);
    }
    return true;
  });
}

Curve run_channel(const ChannelConfig& c) {
  return c.mode == Mode::kNaked ? run_naked(c) : run_encoded(c);
}

NakedClosedForm naked_fidelity_closed_form(double epsilon, long t) {
  NakedClosedForm f;
  f.estimate = std::pow(1.0 - 2.0 * epsilon / 3.0, static_cast<double>(t));
  f.exact = 0.5 * (1.0 + std::pow(1.0 - 4.0 * epsilon / 3.0, static_cast<double>(t)));
  return f;
}

std::optional<int> find_critical_time(const Curve& naked, const Curve& encoded,
                                      int confirm_window) {
  const auto& ns = naked.points;
  const auto& es = encoded.points;
  if (ns.size() != es.size()) throw std::invalid_argument("curve grids differ");
  for (size_t i = 0; i < ns.size(); ++i)
    if (ns[i].t != es[i].t) throw std::invalid_argument("curve grids differ");
  if (confirm_window < 1) throw std::invalid_argument("confirm window must be >= 1");

  const size_t n = ns.size();
  auto clears = [&](size_t i) {
    const double diff = es[i].fidelity - ns[i].fidelity;
    const double joint = std::sqrt(es[i].stderr_ * es[i].stderr_ +
                                   ns[i].stderr_ * ns[i].stderr_);
    return diff > joint;
  };
  const size_t window = static_cast<size_t>(confirm_window);
  for (size_t i = 0; i + window <= n; ++i) {
    bool all = true;
    for (size_t j = i; j < i + window; ++j)
      if (!clears(j)) {
        all = false;
        break;
      }
    if (all) return es[i].t;
  }
  return std::nullopt;
}

}  // namespace qsim::experiments
