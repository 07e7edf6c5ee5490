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


#ifndef NQS_RUNNER_HPP
#define NQS_RUNNER_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nqs/circuits.hpp"
#include "nqs/groundstate.hpp"

namespace nqs {

enum class ExperimentKind {
  HadamardTransform,
  TruncatedFourier,
  NoiseSweep,
  PrepareGroundState,
  RunCircuitFile,
};

std::string experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(const std::string &name);

struct OracleSettings {
  bool enabled = true;
  Index max_qubits = kDefaultOracleLimit;
};

struct NoiseSweepSettings {
  std::vector<double> rates{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
  Index trajectories = 200;
  // "hadamard_transform", "truncated_fourier" or a circuit file path.
  std::string circuit = "hadamard_transform";
  // Also run the NQS transform and place its final overlap on the curve.
  bool compare_nqs = true;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::HadamardTransform;
  std::string experiment_id = "experiment";
  std::uint64_t seed = 0;
  Lattice lattice = Lattice::chain(12, true);
  TfimParams tfim;
  double alpha = 1.0;
  // RBM file used as the circuit input; prepared by VMC when empty.
  std::optional<std::filesystem::path> initial_state;
  std::optional<std::filesystem::path> circuit_file;
  OracleSettings oracle;
  VmcConfig vmc;
  LearnerConfig learner;
  SamplerConfig sampler;
  NoiseSweepSettings noise;
  std::filesystem::path output_dir = "results";
  bool save_states = true;

  void validate() const;
};

// Parses the commented JSON experiment document. Relative paths are taken
// relative to base_dir. Errors are ConfigError naming the line or field.
ExperimentConfig parse_experiment_config(const std::string &text,
                                         const std::filesystem::path &base_dir = ".");
ExperimentConfig load_experiment_config(const std::filesystem::path &path);

// Commented template with every default spelled out.
std::string config_template(ExperimentKind kind);

// Runs the pipeline and writes into output_dir:
//   trace.csv     one row per gate (deterministic for a given config)
//   timings.csv   wall time per gate
//   summary.json  fidelities, gate counts, hidden-unit growth, energies
//   states/       RBM after every gate, initial and final state
//   noise.csv     noise_sweep only
// Returns the summary. Module failures are rethrown after the partial trace
// and a summary with an "error" field have been written.
nlohmann::json run_experiment(const ExperimentConfig &cfg, std::ostream *log = nullptr);

// Rate where the piecewise linear curve through (0, 1) and the (rate,
// overlap) points first drops to the given overlap; nullopt when it never
// gets that low.
std::optional<double> effective_noise_rate(const std::vector<double> &rates,
                                           const std::vector<double> &overlaps,
                                           double overlap);

}  // namespace nqs

#endif  // NQS_RUNNER_HPP
