#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "qsim/ancilla.hpp"
#include "qsim/cli_support.hpp"
#include "qsim/experiments.hpp"
#include "qsim/parallel.hpp"

namespace {

using namespace qsim;

struct OutputSink {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path, std::ios::binary);
    if (!file) throw CLI::RuntimeError("cannot open output file: " + path, 3);
    stream = &file;
  }
};

std::string fmt(double v) { return format_double(v); }

// Per-purpose sub-seeds keep rows independent while staying reproducible.
uint64_t row_seed(uint64_t master, uint64_t row, uint64_t tag) {
  return derive_seed(master, row * 8 + tag);
}

struct CommonOpts {
  double epsilon = 0.0;
  long trials = 1000;
  uint64_t seed = 1;
  std::string engine_name = "pauli-frame";
  std::string out_path;
  bool no_idle_memory = false;

  EngineKind engine() const { return parse_engine(engine_name); }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_epsilon = true) {
  if (with_epsilon)
    cmd->add_option("--epsilon", o.epsilon, "one-qubit gate / memory step error probability")
        ->required();
  cmd->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "master PRNG seed");
  cmd->add_option("--engine", o.engine_name, "simulation engine")
      ->check(CLI::IsMember({"statevector", "pauli-frame"}));
  cmd->add_option("--out", o.out_path, "output CSV path (default stdout)");
  cmd->add_flag("--no-idle-memory", o.no_idle_memory,
                "do not apply memory noise to idle qubits inside networks");
}

int cmd_ancilla(const CommonOpts& o, const std::string& gamma_spec, bool no_verification) {
  const SweepSpec sweep = SweepSpec::parse(gamma_spec);
  OutputSink sink;
  sink.open(o.out_path);
  std::ostream& out = *sink.stream;

  out << "epsilon,gamma,trials,accept_rate,fidelity,fidelity_stderr,p_two_bitflip,p_stderr\n";
  const bool verified = !no_verification;
  for (long i = 0; i < sweep.count; ++i) {
    const double gamma = sweep.at(i);
    const NoiseParams np{o.epsilon, gamma, !o.no_idle_memory};
    const auto f = ancilla::estimate_fidelity(np, ancilla::Kind::kAX, verified, o.trials,
                                              o.engine(), row_seed(o.seed, i, 0));
    const auto p = ancilla::estimate_p_two_bitflip(np, verified, o.trials, o.engine(),
                                                   row_seed(o.seed, i, 1));
    out << fmt(o.epsilon) << ',' << fmt(gamma) << ',' << o.trials << ','
        << fmt(p.accept_rate) << ',' << fmt(f.value) << ',' << fmt(f.stderr_) << ','
        << fmt(p.value) << ',' << fmt(p.stderr_) << '\n';
  }
  return 0;
}

experiments::Mode parse_mode(const std::string& name) {
  if (name == "naked") return experiments::Mode::kNaked;
  if (name == "encoded") return experiments::Mode::kEncodedCorrected;
  if (name == "encoded-nocorrect") return experiments::Mode::kEncodedUncorrected;
  throw CLI::ValidationError("unknown mode: " + name);
}

int cmd_channel(const CommonOpts& o, const std::string& mode_name, double gamma, int t_max,
                int period, bool emit_closed_form) {
  experiments::ChannelConfig config;
  config.epsilon = o.epsilon;
  config.gamma = gamma;
  config.include_idle_memory = !o.no_idle_memory;
  config.t_max = t_max;
  config.period = period;
  config.trials = o.trials;
  config.mode = parse_mode(mode_name);
  config.engine = o.engine();
  config.seed = o.seed;

  const experiments::Curve curve = experiments::run_channel(config);

  OutputSink sink;
  sink.open(o.out_path);
  std::ostream& out = *sink.stream;
  out << "t,fidelity,stderr,n_trials";
  if (emit_closed_form) out << ",estimate_closed,exact_closed";
  out << '\n';
  for (const auto& p : curve.points) {
    out << p.t << ',' << fmt(p.fidelity) << ',' << fmt(p.stderr_) << ',' << p.n_trials;
    if (emit_closed_form) {
      const auto cf = experiments::naked_fidelity_closed_form(o.epsilon, p.t);
      out << ',' << fmt(cf.estimate) << ',' << fmt(cf.exact);
    }
    out << '\n';
  }
  if (curve.starved_trials > 0)
    std::cerr << "note: " << curve.starved_trials << " trials starved and were excluded\n";
  return 0;
}

int cmd_crossover(const CommonOpts& o, const std::string& gamma_list, int t_max) {
  const std::vector<double> gammas = parse_double_list(gamma_list);

  experiments::ChannelConfig naked;
  naked.epsilon = o.epsilon;
  naked.include_idle_memory = !o.no_idle_memory;
  naked.t_max = t_max;
  naked.trials = o.trials;
  naked.mode = experiments::Mode::kNaked;
  naked.engine = o.engine();
  naked.seed = derive_seed(o.seed, 0x6e616b6564ull);  // distinct naked stream
  const experiments::Curve naked_curve = experiments::run_naked(naked);

  OutputSink sink;
  sink.open(o.out_path);
  std::ostream& out = *sink.stream;
  out << "gamma,critical_time,found\n";
  for (size_t i = 0; i < gammas.size(); ++i) {
    experiments::ChannelConfig enc = naked;
    enc.gamma = gammas[i];
    enc.mode = experiments::Mode::kEncodedCorrected;
    enc.seed = derive_seed(o.seed, i + 1);
    const experiments::Curve enc_curve = experiments::run_encoded(enc);
    const auto critical = experiments::find_critical_time(naked_curve, enc_curve);
    out << fmt(gammas[i]) << ',' << (critical ? *critical : -1) << ','
        << (critical ? "true" : "false") << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steane-code error-correction Monte Carlo"};
  app.require_subcommand(1);

  // ancilla
  CommonOpts anc_opts;
  std::string gamma_spec;
  bool no_verification = false;
  CLI::App* anc = app.add_subcommand(
      "ancilla", "ancilla quality sweep: acceptance, fidelity, two-bit-flip probability");
  add_common(anc, anc_opts);
  anc->add_option("--gamma", gamma_spec, "two-qubit error probability or sweep a:b:n")
      ->required();
  anc->add_flag("--no-verification", no_verification, "preparation only, no parity check");

  // channel
  CommonOpts ch_opts;
  std::string mode_name = "naked";
  double ch_gamma = 0.0;
  int t_max = 1000;
  int period = 1;
  bool emit_closed_form = false;
  CLI::App* ch = app.add_subcommand("channel", "fidelity curve through a memory channel");
  add_common(ch, ch_opts);
  ch->add_option("--mode", mode_name, "naked | encoded | encoded-nocorrect")
      ->check(CLI::IsMember({"naked", "encoded", "encoded-nocorrect"}));
  ch->add_option("--gamma", ch_gamma, "two-qubit error probability");
  ch->add_option("--t-max", t_max, "channel length in time steps")->check(CLI::PositiveNumber);
  ch->add_option("--period", period, "steps between corrections")->check(CLI::PositiveNumber);
  ch->add_flag("--emit-closed-form", emit_closed_form,
               "append the analytic naked-qubit columns");

  // crossover
  CommonOpts cr_opts;
  std::string gamma_list;
  int cr_t_max = 2000;
  CLI::App* cr = app.add_subcommand(
      "crossover", "critical time where the corrected qubit beats the naked one");
  add_common(cr, cr_opts);
  cr->add_option("--gamma-list", gamma_list, "comma-separated gamma values")->required();
  cr->add_option("--t-max", cr_t_max, "channel length in time steps")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (anc->parsed()) return cmd_ancilla(anc_opts, gamma_spec, no_verification);
    if (ch->parsed()) return cmd_channel(ch_opts, mode_name, ch_gamma, t_max, period,
                                         emit_closed_form);
    if (cr->parsed()) return cmd_crossover(cr_opts, gamma_list, cr_t_max);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
