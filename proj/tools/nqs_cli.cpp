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


#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nqs/nqs.h"

namespace {

int fail(nqs_status s) {
  std::fprintf(stderr, "error (%s): %s\n", nqs_status_name(s), nqs_last_error());
  return s == NQS_ERR_VERIFY ? 1 : 2;
}

// Owns a char * handed out by the library.
struct LibString {
  char *p = nullptr;
  ~LibString() { nqs_free_string(p); }
};

int cmd_run(const std::string &config, bool quiet) {
  LibString summary;
  const nqs_status s = nqs_run_experiment(config.c_str(), quiet ? 0 : 1, &summary.p);
  if (s != NQS_OK) return fail(s);
  std::cout << summary.p << '\n';
  return 0;
}

int cmd_init(const std::string &experiment, const std::string &out) {
  LibString text;
  const nqs_status s = nqs_config_template(experiment.c_str(), &text.p);
  if (s != NQS_OK) return fail(s);
  if (out.empty()) {
    std::cout << text.p;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  f << text.p;
  if (!f) {
    std::fprintf(stderr, "error: cannot write %s\n", out.c_str());
    return 2;
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, bool corrupt) {
  const nqs_status s = nqs_verify(seed, corrupt ? 1 : 0, 1, nullptr);
  if (s == NQS_OK) {
    std::printf("all properties passed\n");
    return 0;
  }
  return fail(s);
}

int cmd_expand(const std::string &path, const std::string &out, std::int64_t max_qubits) {
  nqs_state *state = nullptr;
  nqs_status s = nqs_state_load(path.c_str(), &state);
  if (s != NQS_OK) return fail(s);
  nqs_statevector *v = nullptr;
  s = nqs_expand_state(state, max_qubits, &v);
  nqs_state_destroy(state);
  if (s != NQS_OK) return fail(s);
  int rc = 0;
  if (!out.empty()) {
    s = nqs_statevector_dump(v, out.c_str());
    if (s != NQS_OK) rc = fail(s);
  } else {
    std::uint64_t dim = 0;
    nqs_statevector_info(v, nullptr, &dim);
    std::vector<double> amps(2 * dim);
    s = nqs_statevector_amplitudes(v, amps.data(), amps.size());
    if (s != NQS_OK) {
      rc = fail(s);
    } else {
      for (std::uint64_t i = 0; i < dim; ++i) {
        std::printf("%llu %.17g %.17g\n", static_cast<unsigned long long>(i), amps[2 * i],
                    amps[2 * i + 1]);
      }
    }
  }
  nqs_statevector_destroy(v);
  return rc;
}

int cmd_circuit_check(const std::string &path, std::int64_t n_qubits, bool print) {
  nqs_circuit *c = nullptr;
  nqs_status s = nqs_circuit_load(path.c_str(), n_qubits, &c);
  if (s != NQS_OK) return fail(s);
  std::int64_t n = 0, gates = 0, hadamards = 0;
  nqs_circuit_info(c, &n, &gates, &hadamards);
  std::printf("%s: ok, %lld qubits, %lld gates (%lld H learned, %lld exact)\n", path.c_str(),
              static_cast<long long>(n), static_cast<long long>(gates),
              static_cast<long long>(hadamards), static_cast<long long>(gates - hadamards));
  if (print) {
    LibString text;
    s = nqs_circuit_to_text(c, &text.p);
    if (s == NQS_OK) std::cout << text.p;
  }
  nqs_circuit_destroy(c);
  return s == NQS_OK ? 0 : fail(s);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantum circuits on RBM wave functions"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("-j,--threads", threads, "Worker threads (default: NQS_NUM_THREADS or all cores)");

  std::string config;
  bool quiet = false;
  auto *run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config, "Config file")->required();
  run->add_flag("-q,--quiet", quiet, "No progress output");

  std::string experiment, init_out;
  auto *init = app.add_subcommand("init", "Print a commented config template");
  init->add_option("experiment", experiment,
                   "hadamard_transform | truncated_fourier | noise_sweep | "
                   "prepare_ground_state | run_circuit_file")
      ->required();
  init->add_option("-o,--output", init_out, "Write to this file instead of stdout");

  std::uint64_t seed = 0;
  bool corrupt = false;
  auto *verify = app.add_subcommand("verify", "Run the invariant battery");
  verify->add_option("--seed", seed, "Seed for the random instances");
  verify->add_flag("--corrupt-crz", corrupt, "Inject a CRZ sign fault (the CRZ checks must fail)");

  std::string rbm_file, expand_out;
  std::int64_t max_qubits = 0;
  auto *expand = app.add_subcommand("expand", "Expand an RBM file into its normalized statevector");
  expand->add_option("rbm-file", rbm_file, "RBM parameter file")->required();
  expand->add_option("-o,--output", expand_out, "Binary dump instead of text on stdout");
  expand->add_option("--max-qubits", max_qubits, "Qubit limit (default 20)");

  std::string circuit_file;
  std::int64_t n_qubits = 0;
  bool print = false;
  auto *check = app.add_subcommand("circuit-check", "Parse and validate a circuit file");
  check->add_option("circuit-file", circuit_file, "Circuit text file")->required();
  check->add_option("-n,--qubits", n_qubits, "Register width (default: inferred)");
  check->add_flag("-p,--print", print, "Print the normalized circuit");

  CLI11_PARSE(app, argc, argv);

  if (threads != 0) {
    const nqs_status s = nqs_set_num_threads(threads);
    if (s != NQS_OK) return fail(s);
  }
  if (*run) return cmd_run(config, quiet);
  if (*init) return cmd_init(experiment, init_out);
  if (*verify) return cmd_verify(seed, corrupt);
  if (*expand) return cmd_expand(rbm_file, expand_out, max_qubits);
  if (*check) return cmd_circuit_check(circuit_file, n_qubits, print);
  return 0;
}
