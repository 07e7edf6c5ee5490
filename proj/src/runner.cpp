// Copyright 2026 The nqs-circuits Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "nqs/runner.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "nqs/random.hpp"
#include "nqs/rbm_io.hpp"

namespace nqs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr ExperimentKind kAllKinds[] = {
    ExperimentKind::HadamardTransform, ExperimentKind::TruncatedFourier,
    ExperimentKind::NoiseSweep, ExperimentKind::PrepareGroundState,
    ExperimentKind::RunCircuitFile};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Reads one JSON object, remembering which keys were used so that typos
// surface as errors.
class Fields {
 public:
  Fields(const json &obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string &key) const {
    return obj_.contains(key) && !obj_.at(key).is_null();
  }

  void read(const std::string &key, Index &out) {
    if (!mark(key)) return;
    const json &v = obj_.at(key);
    if (!v.is_number_integer()) throw error(key, "expected an integer");
    out = v.get<Index>();
  }
  void read(const std::string &key, int &out) {
    Index v = out;
    read(key, v);
    out = static_cast<int>(v);
  }
  void read(const std::string &key, std::uint64_t &out) {
    if (!mark(key)) return;
    const json &v = obj_.at(key);
    if (!v.is_number_unsigned()) throw error(key, "expected a non-negative integer");
    out = v.get<std::uint64_t>();
  }
  void read(const std::string &key, double &out) {
    if (!mark(key)) return;
    const json &v = obj_.at(key);
    if (!v.is_number()) throw error(key, "expected a number");
    out = v.get<double>();
  }
  void read(const std::string &key, bool &out) {
    if (!mark(key)) return;
    const json &v = obj_.at(key);
    if (!v.is_boolean()) throw error(key, "expected true or false");
    out = v.get<bool>();
  }
  void read(const std::string &key, std::string &out) {
    if (!mark(key)) return;
    const json &v = obj_.at(key);
    if (!v.is_string()) throw error(key, "expected a string");
    out = v.get<std::string>();
  }
  void read(const std::string &key, std::vector<double> &out) {
    if (!mark(key)) return;
    const json &v = obj_.at(key);
    if (!v.is_array()) throw error(key, "expected an array of numbers");
    out.clear();
    for (const json &x : v) {
      if (!x.is_number()) throw error(key, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
  }
  void read(const std::string &key, std::vector<Index> &out) {
    if (!mark(key)) return;
    const json &v = obj_.at(key);
    if (!v.is_array()) throw error(key, "expected an array of integers");
    out.clear();
    for (const json &x : v) {
      if (!x.is_number_integer()) throw error(key, "expected an array of integers");
      out.push_back(x.get<Index>());
    }
  }

  std::optional<Fields> sub(const std::string &key) {
    if (!mark(key)) return std::nullopt;
    return Fields(obj_.at(key), path_.empty() ? key : path_ + "." + key);
  }

  ConfigError error(const std::string &key, const std::string &what) const {
    return ConfigError("config field '" + (path_.empty() ? key : path_ + "." + key) +
                       "': " + what);
  }

  void finish() const {
    for (const auto &[key, value] : obj_.items()) {
      if (!used_.count(key)) throw error(key, "unknown field");
    }
  }

 private:
  bool mark(const std::string &key) {
    used_.insert(key);
    return has(key);
  }
  std::string where() const { return path_.empty() ? "config" : "config field '" + path_ + "'"; }

  const json &obj_;
  std::string path_;
  std::set<std::string> used_;
};

// Sub-config validators throw ConfigError with a field name already; prefix
// with the section for context.
template <class F>
void with_section(const std::string &section, F &&f) {
  try {
    f();
  } catch (const ConfigError &e) {
    const std::string msg = e.what();
    if (msg.rfind("config", 0) == 0) throw;
    throw ConfigError("config section '" + section + "': " + msg);
  }
}

std::string optimizer_name(bool sr) { return sr ? "sr" : "adamax"; }

bool parse_optimizer(Fields &f, const std::string &key, bool current_sr) {
  std::string name = optimizer_name(current_sr);
  f.read(key, name);
  if (name == "sr") return true;
  if (name == "adamax") return false;
  throw f.error(key, "expected \"sr\" or \"adamax\"");
}

fs::path resolve(const fs::path &base, const std::string &p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void read_vmc(Fields f, VmcConfig &v) {
  v.optimizer = parse_optimizer(f, "optimizer",
                                v.optimizer == VmcOptimizer::StochasticReconfiguration)
                    ? VmcOptimizer::StochasticReconfiguration
                    : VmcOptimizer::AdaMax;
  f.read("sr_diag_shift", v.sr_diag_shift);
  f.read("n_iterations", v.n_iterations);
  f.read("samples_per_iteration", v.samples_per_iteration);
  f.read("learning_rate", v.learning_rate);
  f.read("final_lr_factor", v.final_lr_factor);
  f.read("adamax_beta1", v.adamax_beta1);
  f.read("adamax_beta2", v.adamax_beta2);
  f.read("init_sigma", v.init_sigma);
  f.read("final_samples", v.final_samples);
  f.read("patience", v.patience);
  f.finish();
}

void read_learner(Fields f, LearnerConfig &l) {
  l.optimizer = parse_optimizer(f, "optimizer",
                                l.optimizer == LearnerOptimizer::StochasticReconfiguration)
                    ? LearnerOptimizer::StochasticReconfiguration
                    : LearnerOptimizer::AdaMax;
  f.read("sr_diag_shift", l.sr_diag_shift);
  f.read("n_iterations", l.n_iterations);
  f.read("samples_per_iteration", l.samples_per_iteration);
  f.read("learning_rate", l.learning_rate);
  f.read("adamax_beta1", l.adamax_beta1);
  f.read("adamax_beta2", l.adamax_beta2);
  f.read("init_noise_sigma", l.init_noise_sigma);
  f.read("overlap_check_interval", l.overlap_check_interval);
  f.read("target_infidelity", l.target_infidelity);
  f.read("max_reinitializations", l.max_reinitializations);
  f.finish();
}

void read_sampler(Fields f, SamplerConfig &s) {
  f.read("n_chains", s.n_chains);
  f.read("burn_in_sweeps", s.burn_in_sweeps);
  f.read("warm_burn_in_sweeps", s.warm_burn_in_sweeps);
  f.read("sweeps_between_samples", s.sweeps_between_samples);
  f.read("samples_per_chain", s.samples_per_chain);
  std::string mode = s.mode == SampleMode::Markov ? "markov" : "enumerate";
  f.read("mode", mode);
  if (mode == "markov") {
    s.mode = SampleMode::Markov;
  } else if (mode == "enumerate") {
    s.mode = SampleMode::Enumerate;
  } else {
    throw f.error("mode", "expected \"markov\" or \"enumerate\"");
  }
  f.finish();
}

Lattice read_lattice(Fields f, const Lattice &current) {
  std::string kind = lattice_kind_name(current.kind);
  std::vector<Index> extent = current.extent;
  f.read("kind", kind);
  f.read("extent", extent);
  f.finish();
  Lattice::Kind k;
  try {
    k = parse_lattice_kind(kind);
  } catch (const ConfigError &) {
    throw f.error("kind", "expected chain_periodic, chain_open or square_periodic");
  }
  try {
    if (k == Lattice::Kind::SquarePeriodic) {
      if (extent.size() != 2) throw f.error("extent", "square lattices need [Lx, Ly]");
      return Lattice::square(extent[0], extent[1]);
    }
    if (extent.size() != 1) throw f.error("extent", "chains need [L]");
    return Lattice::chain(extent[0], k == Lattice::Kind::ChainPeriodic);
  } catch (const StructuralError &e) {
    throw f.error("extent", e.what());
  }
}

Index line_of(const std::string &text, std::size_t byte) {
  Index line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// ---- output helpers ----

class TraceWriter {
 public:
  TraceWriter(const fs::path &dir, std::string experiment_id)
      : id_(std::move(experiment_id)),
        trace_(dir / "trace.csv", std::ios::binary),
        timings_(dir / "timings.csv", std::ios::binary) {
    if (!trace_ || !timings_) throw IoError("cannot write into " + dir.string());
    trace_ << "experiment_id,gate_index,gate_kind,qubits,angle,method,overlap_estimate,"
              "std_error,exact_overlap,exact_step_overlap,hidden_units,seed\n";
    timings_ << "experiment_id,gate_index,wall_time_s\n";
    trace_.flush();
    timings_.flush();
  }

  void row(const GateRecord &r, std::optional<double> exact, std::optional<double> step,
           std::uint64_t seed) {
    const GateOp &g = r.gate;
    std::string qubits = std::to_string(g.qubits[0]);
    if (g.arity() == 2) qubits += " " + std::to_string(g.qubits[1]);
    auto opt = [](const std::optional<double> &v) { return v ? fmt(*v) : std::string(); };
    trace_ << id_ << ',' << r.gate_index << ',' << gate_name(g.kind) << ',' << qubits << ','
           << (g.has_angle() ? fmt(g.angle) : std::string()) << ','
           << (r.method == GateMethod::Exact ? "exact" : "learned") << ','
           << opt(r.overlap_estimate) << ',' << opt(r.overlap_std_error) << ',' << opt(exact)
           << ',' << opt(step) << ',' << r.hidden_units_after << ',' << seed << '\n';
    trace_.flush();
    timings_ << id_ << ',' << r.gate_index << ',' << fmt(r.wall_time_s) << '\n';
    timings_.flush();
  }

 private:
  std::string id_;
  std::ofstream trace_;
  std::ofstream timings_;
};

void write_json(const fs::path &path, const json &doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

void logf(std::ostream *log, const std::string &line) {
  if (log != nullptr) *log << line << std::endl;
}

struct Context {
  const ExperimentConfig &cfg;
  std::ostream *log;
  json summary;
  fs::path states_dir;
};

bool oracle_on(const ExperimentConfig &cfg, Index n) {
  return cfg.oracle.enabled && n <= cfg.oracle.max_qubits;
}

VmcConfig seeded_vmc(const ExperimentConfig &cfg) {
  VmcConfig v = cfg.vmc;
  v.seed = derive_seed(cfg.seed, "vmc");
  return v;
}

LearnerConfig seeded_learner(const ExperimentConfig &cfg) {
  LearnerConfig l = cfg.learner;
  l.seed = derive_seed(cfg.seed, "learner");
  return l;
}

SamplerConfig seeded_sampler(const ExperimentConfig &cfg, const char *salt) {
  SamplerConfig s = cfg.sampler;
  s.seed = derive_seed(cfg.seed, salt);
  return s;
}

json ground_state_report(Context &ctx, const RbmState &state, const VmcResult *vmc) {
  const ExperimentConfig &cfg = ctx.cfg;
  json g;
  g["lattice"] = cfg.lattice.name();
  g["gamma"] = cfg.tfim.gamma;
  g["j"] = cfg.tfim.j;
  g["alpha"] = cfg.alpha;
  g["hidden_units"] = state.n_hidden();
  if (vmc != nullptr) {
    g["seed"] = seeded_vmc(cfg).seed;
    g["energy"] = vmc->final_energy;
    g["energy_std_error"] = vmc->final_std_error;
    g["iterations"] = static_cast<Index>(vmc->trace.size());
  }
  if (oracle_on(cfg, state.n_visible()) && state.n_visible() == cfg.lattice.n_sites()) {
    const double e_rbm = exact_energy(state, cfg.lattice, cfg.tfim, cfg.oracle.max_qubits);
    const ExactGroundState ed = exact_ground_state(cfg.lattice, cfg.tfim, cfg.oracle.max_qubits);
    g["exact_energy_of_state"] = e_rbm;
    g["ground_energy"] = ed.energy;
    g["relative_error"] = (e_rbm - ed.energy) / std::abs(ed.energy);
    g["fidelity_with_ground_state"] = overlap_exact(expand_rbm(state, cfg.oracle.max_qubits), ed.state);
  }
  return g;
}

RbmState prepare_ground_state(Context &ctx) {
  const ExperimentConfig &cfg = ctx.cfg;
  const VmcConfig vcfg = seeded_vmc(cfg);
  logf(ctx.log, "preparing ground state on " + cfg.lattice.name() + " (gamma " +
                    fmt(cfg.tfim.gamma) + ", j " + fmt(cfg.tfim.j) + ", alpha " +
                    fmt(cfg.alpha) + ")");
  const VmcResult vmc =
      vmc_ground_state(cfg.lattice, cfg.tfim, cfg.alpha, vcfg, seeded_sampler(cfg, "vmc-sampler"));
  {
    std::ofstream out(cfg.output_dir / "energy_trace.csv", std::ios::binary);
    out << "iteration,energy,std_error\n";
    for (const EnergyTracePoint &p : vmc.trace) {
      out << p.iteration << ',' << fmt(p.energy) << ',' << fmt(p.std_error) << '\n';
    }
  }
  json g = ground_state_report(ctx, vmc.state, &vmc);
  logf(ctx.log, "ground state energy " + fmt(vmc.final_energy) + " +- " +
                    fmt(vmc.final_std_error));
  json meta = g;
  meta["experiment_id"] = cfg.experiment_id;
  save_rbm((ctx.states_dir / "ground_state.json").string(), vmc.state, meta);
  ctx.summary["ground_state"] = g;
  return vmc.state;
}

RbmState initial_state(Context &ctx) {
  const ExperimentConfig &cfg = ctx.cfg;
  if (!cfg.initial_state) return prepare_ground_state(ctx);
  json meta;
  RbmState s = load_rbm(cfg.initial_state->string(), &meta);
  ctx.summary["initial_state"] = {{"path", cfg.initial_state->string()},
                                  {"n_visible", s.n_visible()},
                                  {"n_hidden", s.n_hidden()}};
  return s;
}

Circuit circuit_for(const std::string &which, Index n, const fs::path &base) {
  if (which == "hadamard_transform") return build_hadamard_transform(n);
  if (which == "truncated_fourier") return build_truncated_fourier(n);
  return load_circuit(resolve(base, which).string(), n);
}

struct TransformOutcome {
  RbmState state;
  std::optional<double> final_fidelity;
};

std::string gate_file(Index i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "gate_%04lld.json", static_cast<long long>(i));
  return buf;
}

TransformOutcome run_transform(Context &ctx, const Circuit &circuit, const RbmState &initial) {
  const ExperimentConfig &cfg = ctx.cfg;
  const Index n = initial.n_visible();
  const bool oracle = oracle_on(cfg, n);
  const LearnerConfig lcfg = seeded_learner(cfg);
  const SamplerConfig scfg = seeded_sampler(cfg, "sampler");

  std::optional<StateVector> exact_now, previous;
  if (oracle) {
    exact_now = expand_rbm(initial, cfg.oracle.max_qubits);
    previous = exact_now;
  }
  if (cfg.save_states) save_rbm((ctx.states_dir / "initial_state.json").string(), initial);

  TraceWriter writer(cfg.output_dir, cfg.experiment_id);
  double product = 1.0;
  double min_estimate = 1.0;
  Index learned = 0;
  std::optional<double> last_exact;
  const auto observer = [&](const GateRecord &r, const RbmState &state) {
    std::optional<double> exact, step;
    if (oracle) {
      const StateVector got = expand_rbm(state, cfg.oracle.max_qubits);
      apply_gate_exact(*exact_now, r.gate);
      StateVector want_step = *previous;
      apply_gate_exact(want_step, r.gate);
      exact = overlap_exact(got, *exact_now);
      step = overlap_exact(got, want_step);
      previous = got;
      last_exact = exact;
    }
    if (r.method == GateMethod::Learned && r.overlap_estimate) {
      ++learned;
      product *= std::min(1.0, *r.overlap_estimate);
      min_estimate = std::min(min_estimate, *r.overlap_estimate);
    }
    writer.row(r, exact, step,
               r.method == GateMethod::Learned
                   ? derive_seed(lcfg.seed, "gate", static_cast<std::uint64_t>(r.gate_index))
                   : cfg.seed);
    if (cfg.save_states) save_rbm((ctx.states_dir / gate_file(r.gate_index)).string(), state);
    std::string line = "gate " + std::to_string(r.gate_index) + " " + r.gate.to_string();
    if (r.overlap_estimate) line += "  overlap " + fmt(*r.overlap_estimate);
    if (exact) line += "  exact " + fmt(*exact);
    logf(ctx.log, line);
  };

  const ExecutionResult result = execute(circuit, initial, lcfg, scfg, observer);

  json t;
  t["total_gates"] = static_cast<Index>(circuit.gates.size());
  t["gates_applied"] = static_cast<Index>(result.trace.size());
  t["learned_gates"] = learned;
  t["exact_gates"] = static_cast<Index>(result.trace.size()) - learned;
  t["product_of_intermediate_fidelities"] = product;
  t["min_intermediate_fidelity"] = learned > 0 ? json(min_estimate) : json(nullptr);
  t["final_oracle_fidelity"] = last_exact ? json(*last_exact)
                               : (oracle && circuit.gates.empty() ? json(1.0) : json(nullptr));
  t["hidden_units_initial"] = initial.n_hidden();
  t["hidden_units_final"] = result.state.n_hidden();
  t["hidden_unit_growth"] = result.state.n_hidden() - initial.n_hidden();
  ctx.summary["transform"] = t;
  save_rbm((ctx.states_dir / "final_state.json").string(), result.state);
  if (result.failure) throw LearnerError(*result.failure);
  std::optional<double> final_fidelity = last_exact;
  if (oracle && circuit.gates.empty()) final_fidelity = 1.0;
  return {result.state, final_fidelity};
}

void run_noise_sweep(Context &ctx, const RbmState &initial) {
  const ExperimentConfig &cfg = ctx.cfg;
  const Index n = initial.n_visible();
  if (n > cfg.oracle.max_qubits) {
    throw LimitError("noise_sweep needs the statevector oracle (N = " + std::to_string(n) +
                     " > " + std::to_string(cfg.oracle.max_qubits) + ")");
  }
  const Circuit circuit = circuit_for(cfg.noise.circuit, n, ".");
  const StateVector start = expand_rbm(initial, cfg.oracle.max_qubits);
  std::ofstream out(cfg.output_dir / "noise.csv", std::ios::binary);
  out << "experiment_id,rate,mean_overlap,std_error,trajectories,seed\n";
  std::vector<double> means, errors;
  for (std::size_t i = 0; i < cfg.noise.rates.size(); ++i) {
    NoiseConfig nc;
    nc.rate = cfg.noise.rates[i];
    nc.trajectories = cfg.noise.trajectories;
    nc.seed = derive_seed(cfg.seed, "noise", i);
    const OverlapEstimate est = noisy_transform_overlap(start, circuit, nc);
    means.push_back(est.value);
    errors.push_back(est.std_error);
    out << cfg.experiment_id << ',' << fmt(nc.rate) << ',' << fmt(est.value) << ','
        << fmt(est.std_error) << ',' << nc.trajectories << ',' << nc.seed << '\n';
    out.flush();
    logf(ctx.log, "noise rate " + fmt(nc.rate) + "  overlap " + fmt(est.value) + " +- " +
                      fmt(est.std_error));
  }
  json s;
  s["circuit"] = cfg.noise.circuit;
  s["rates"] = cfg.noise.rates;
  s["mean_overlap"] = means;
  s["std_error"] = errors;
  bool monotone = true;
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (means[i] > means[i - 1] + 2.0 * std::hypot(errors[i], errors[i - 1])) monotone = false;
  }
  s["monotone_within_errors"] = monotone;
  if (cfg.noise.compare_nqs) {
    const TransformOutcome nqs = run_transform(ctx, circuit, initial);
    if (nqs.final_fidelity) {
      s["nqs_final_overlap"] = *nqs.final_fidelity;
      const auto r = effective_noise_rate(cfg.noise.rates, means, *nqs.final_fidelity);
      s["effective_rate"] = r ? json(*r) : json(nullptr);
    }
  }
  ctx.summary["noise"] = s;
}

void reset_output(const ExperimentConfig &cfg, Context &ctx) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  ctx.states_dir = cfg.output_dir / "states";
  fs::create_directories(ctx.states_dir, ec);
  if (!fs::is_directory(ctx.states_dir)) {
    throw IoError("cannot create output directory " + ctx.states_dir.string());
  }
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::HadamardTransform: return "hadamard_transform";
    case ExperimentKind::TruncatedFourier: return "truncated_fourier";
    case ExperimentKind::NoiseSweep: return "noise_sweep";
    case ExperimentKind::PrepareGroundState: return "prepare_ground_state";
    case ExperimentKind::RunCircuitFile: return "run_circuit_file";
  }
  return "?";
}

std::optional<ExperimentKind> parse_experiment_kind(const std::string &name) {
  for (ExperimentKind k : kAllKinds) {
    if (experiment_name(k) == name) return k;
  }
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (experiment_id.empty()) throw ConfigError("config field 'experiment_id': must not be empty");
  if (experiment_id.find_first_of(",\n\r\"") != std::string::npos) {
    throw ConfigError("config field 'experiment_id': must not contain commas, quotes or newlines");
  }
  if (!(tfim.gamma >= 0.0) || !std::isfinite(tfim.j)) {
    throw ConfigError("config section 'tfim': gamma must be >= 0 and j finite");
  }
  if (oracle.max_qubits < 1 || oracle.max_qubits > 30) {
    throw ConfigError("config field 'oracle.max_qubits': must lie in [1, 30]");
  }
  with_section("vmc", [&] { vmc.validate(); });
  with_section("learner", [&] { learner.validate(); });
  with_section("sampler", [&] { sampler.validate(); });
  if (noise.trajectories < 1) throw ConfigError("config field 'noise.trajectories': must be positive");
  for (double r : noise.rates) {
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("config field 'noise.rates': rates must lie in [0, 1]");
  }
  const bool needs_alpha = !initial_state || experiment == ExperimentKind::PrepareGroundState;
  if (needs_alpha) {
    try {
      hidden_units_for(lattice.n_sites(), alpha);
    } catch (const ConfigError &e) {
      throw ConfigError(std::string("config field 'alpha': ") + e.what());
    }
  }
  if (experiment == ExperimentKind::RunCircuitFile) {
    if (!initial_state) throw ConfigError("config field 'initial_state': required by run_circuit_file");
    if (!circuit_file) throw ConfigError("config field 'circuit_file': required by run_circuit_file");
  }
  if (initial_state && !fs::exists(*initial_state)) {
    throw ConfigError("config field 'initial_state': no such file " + initial_state->string());
  }
  if (circuit_file && !fs::exists(*circuit_file)) {
    throw ConfigError("config field 'circuit_file': no such file " + circuit_file->string());
  }
}

ExperimentConfig parse_experiment_config(const std::string &text, const fs::path &base_dir) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error &e) {
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ConfigError("config line " + std::to_string(line_of(text, e.byte)) + ": " + msg);
  }
  ExperimentConfig cfg;
  Fields f(doc, "");
  if (!f.has("experiment")) throw ConfigError("config field 'experiment': missing");
  std::string name;
  f.read("experiment", name);
  const auto kind = parse_experiment_kind(name);
  if (!kind) throw f.error("experiment", "unknown experiment '" + name + "'");
  cfg.experiment = *kind;
  cfg.experiment_id = name;
  f.read("experiment_id", cfg.experiment_id);
  f.read("seed", cfg.seed);
  if (auto s = f.sub("lattice")) cfg.lattice = read_lattice(*s, cfg.lattice);
  if (auto s = f.sub("tfim")) {
    s->read("gamma", cfg.tfim.gamma);
    s->read("j", cfg.tfim.j);
    s->finish();
  }
  f.read("alpha", cfg.alpha);
  std::string path;
  f.read("initial_state", path);
  if (!path.empty()) cfg.initial_state = resolve(base_dir, path);
  path.clear();
  f.read("circuit_file", path);
  if (!path.empty()) cfg.circuit_file = resolve(base_dir, path);
  if (auto s = f.sub("oracle")) {
    s->read("enabled", cfg.oracle.enabled);
    s->read("max_qubits", cfg.oracle.max_qubits);
    s->finish();
  }
  if (auto s = f.sub("vmc")) read_vmc(*s, cfg.vmc);
  if (auto s = f.sub("learner")) read_learner(*s, cfg.learner);
  if (auto s = f.sub("sampler")) read_sampler(*s, cfg.sampler);
  if (auto s = f.sub("noise")) {
    s->read("rates", cfg.noise.rates);
    s->read("trajectories", cfg.noise.trajectories);
    s->read("circuit", cfg.noise.circuit);
    s->read("compare_nqs", cfg.noise.compare_nqs);
    s->finish();
    if (cfg.noise.circuit != "hadamard_transform" && cfg.noise.circuit != "truncated_fourier") {
      cfg.noise.circuit = resolve(base_dir, cfg.noise.circuit).string();
    }
  }
  if (auto s = f.sub("output")) {
    std::string dir = cfg.output_dir.string();
    s->read("directory", dir);
    cfg.output_dir = resolve(base_dir, dir);
    s->read("save_states", cfg.save_states);
    s->finish();
  } else {
    cfg.output_dir = base_dir / cfg.output_dir;
  }
  f.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str(), path.parent_path().empty() ? fs::path(".")
                                                                         : path.parent_path());
}

std::string config_template(ExperimentKind kind) {
  const ExperimentConfig d;
  const VmcConfig &v = d.vmc;
  const LearnerConfig &l = d.learner;
  const SamplerConfig &s = d.sampler;
  auto j = [](const auto &x) { return json(x).dump(); };
  std::ostringstream o;
  o << "// Experiment configuration (JSON with comments).\n"
    << "// Relative paths are resolved against this file's directory.\n"
    << "{\n"
    << "  // hadamard_transform | truncated_fourier | noise_sweep |\n"
    << "  // prepare_ground_state | run_circuit_file\n"
    << "  \"experiment\": " << j(experiment_name(kind)) << ",\n"
    << "  \"experiment_id\": " << j(experiment_name(kind)) << ",\n"
    << "  // Every random stream (VMC, learner, sampler, noise) is derived from this.\n"
    << "  \"seed\": 1,\n"
    << "\n"
    << "  // chain_periodic [L] | chain_open [L] | square_periodic [Lx, Ly]\n"
    << "  \"lattice\": {\"kind\": \"chain_periodic\", \"extent\": [12]},\n"
    << "  // H = -gamma sum X_i + j sum_<ij> Z_i Z_j\n"
    << "  \"tfim\": {\"gamma\": " << j(d.tfim.gamma) << ", \"j\": " << j(d.tfim.j) << "},\n"
    << "  \"alpha\": " << j(d.alpha) << ",\n"
    << "\n"
    << "  // RBM file to use as circuit input; null prepares the TFIM ground state.\n"
    << "  \"initial_state\": null,\n"
    << "  // Circuit text file (run_circuit_file only).\n"
    << "  \"circuit_file\": null,\n"
    << "\n"
    << "  \"oracle\": {\"enabled\": " << j(d.oracle.enabled)
    << ", \"max_qubits\": " << j(d.oracle.max_qubits) << "},\n"
    << "\n"
    << "  \"vmc\": {\n"
    << "    \"optimizer\": \"sr\",  // sr | adamax\n"
    << "    \"sr_diag_shift\": " << j(v.sr_diag_shift) << ",\n"
    << "    \"n_iterations\": " << j(v.n_iterations) << ",\n"
    << "    \"samples_per_iteration\": " << j(v.samples_per_iteration) << ",\n"
    << "    \"learning_rate\": " << j(v.learning_rate) << ",\n"
    << "    \"final_lr_factor\": " << j(v.final_lr_factor) << ",\n"
    << "    \"adamax_beta1\": " << j(v.adamax_beta1) << ",\n"
    << "    \"adamax_beta2\": " << j(v.adamax_beta2) << ",\n"
    << "    \"init_sigma\": " << j(v.init_sigma) << ",\n"
    << "    \"final_samples\": " << j(v.final_samples) << ",\n"
    << "    \"patience\": " << j(v.patience) << "\n"
    << "  },\n"
    << "\n"
    << "  \"learner\": {\n"
    << "    \"optimizer\": \"sr\",  // sr | adamax (adamax wants learning_rate ~5e-3)\n"
    << "    \"sr_diag_shift\": " << j(l.sr_diag_shift) << ",\n"
    << "    \"n_iterations\": " << j(l.n_iterations) << ",\n"
    << "    \"samples_per_iteration\": " << j(l.samples_per_iteration) << ",\n"
    << "    \"learning_rate\": " << j(l.learning_rate) << ",\n"
    << "    \"adamax_beta1\": " << j(l.adamax_beta1) << ",\n"
    << "    \"adamax_beta2\": " << j(l.adamax_beta2) << ",\n"
    << "    \"init_noise_sigma\": " << j(l.init_noise_sigma) << ",\n"
    << "    \"overlap_check_interval\": " << j(l.overlap_check_interval) << ",\n"
    << "    // Stop once the overlap estimate reaches 1 - target_infidelity.\n"
    << "    \"target_infidelity\": " << j(l.target_infidelity) << ",\n"
    << "    \"max_reinitializations\": " << j(l.max_reinitializations) << "\n"
    << "  },\n"
    << "\n"
    << "  \"sampler\": {\n"
    << "    \"mode\": \"markov\",  // markov | enumerate (small N, exact)\n"
    << "    \"n_chains\": " << j(s.n_chains) << ",\n"
    << "    \"burn_in_sweeps\": " << j(s.burn_in_sweeps) << ",\n"
    << "    \"warm_burn_in_sweeps\": " << j(s.warm_burn_in_sweeps) << ",\n"
    << "    \"sweeps_between_samples\": " << j(s.sweeps_between_samples) << ",\n"
    << "    // Used for overlap estimates; gradient batches follow the learner.\n"
    << "    \"samples_per_chain\": " << j(s.samples_per_chain) << "\n"
    << "  },\n"
    << "\n"
    << "  \"noise\": {\n"
    << "    \"rates\": " << j(d.noise.rates) << ",\n"
    << "    \"trajectories\": " << j(d.noise.trajectories) << ",\n"
    << "    // hadamard_transform | truncated_fourier | path to a circuit file\n"
    << "    \"circuit\": " << j(d.noise.circuit) << ",\n"
    << "    \"compare_nqs\": " << j(d.noise.compare_nqs) << "\n"
    << "  },\n"
    << "\n"
    << "  \"output\": {\"directory\": " << j("results/" + experiment_name(kind))
    << ", \"save_states\": " << j(d.save_states) << "}\n"
    << "}\n";
  return o.str();
}

std::optional<double> effective_noise_rate(const std::vector<double> &rates,
                                           const std::vector<double> &overlaps,
                                           double overlap) {
  if (rates.size() != overlaps.size()) throw StructuralError("rates and overlaps differ in length");
  std::vector<std::pair<double, double>> pts{{0.0, 1.0}};
  for (std::size_t i = 0; i < rates.size(); ++i) pts.emplace_back(rates[i], overlaps[i]);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto [r0, o0] = pts[i - 1];
    const auto [r1, o1] = pts[i];
    if (overlap <= o0 && overlap >= o1) {
      if (o0 == o1) return r0;
      return r0 + (o0 - overlap) / (o0 - o1) * (r1 - r0);
    }
  }
  return std::nullopt;
}

json run_experiment(const ExperimentConfig &cfg, std::ostream *log) {
  cfg.validate();
  Context ctx{cfg, log, json::object(), {}};
  reset_output(cfg, ctx);
  ctx.summary["experiment"] = experiment_name(cfg.experiment);
  ctx.summary["experiment_id"] = cfg.experiment_id;
  ctx.summary["seed"] = cfg.seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (cfg.experiment) {
      case ExperimentKind::PrepareGroundState: {
        prepare_ground_state(ctx);
        break;
      }
      case ExperimentKind::HadamardTransform:
      case ExperimentKind::TruncatedFourier: {
        const RbmState start = initial_state(ctx);
        const Circuit c = cfg.experiment == ExperimentKind::HadamardTransform
                              ? build_hadamard_transform(start.n_visible())
                              : build_truncated_fourier(start.n_visible());
        run_transform(ctx, c, start);
        break;
      }
      case ExperimentKind::NoiseSweep: {
        const RbmState start = initial_state(ctx);
        run_noise_sweep(ctx, start);
        break;
      }
      case ExperimentKind::RunCircuitFile: {
        const RbmState start = initial_state(ctx);
        run_transform(ctx, load_circuit(cfg.circuit_file->string(), start.n_visible()), start);
        break;
      }
    }
  } catch (const std::exception &e) {
    ctx.summary["error"] = e.what();
    write_json(cfg.output_dir / "summary.json", ctx.summary);
    throw;
  }
  write_json(cfg.output_dir / "summary.json", ctx.summary);
  const fs::path timings = cfg.output_dir / "timings.csv";
  const bool fresh = !fs::exists(timings);
  std::ofstream out(timings, std::ios::app | std::ios::binary);
  if (fresh) out << "experiment_id,gate_index,wall_time_s\n";
  out << cfg.experiment_id << ",total,"
      << fmt(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())
      << '\n';
  return ctx.summary;
}

}  // namespace nqs
