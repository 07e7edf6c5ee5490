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


#include "nqs/nqs.h"

#include <cstdio>
#include <cstring>
#include <iostream>
#include <new>
#include <string>

#include "nqs/circuits.hpp"
#include "nqs/oracle.hpp"
#include "nqs/parallel.hpp"
#include "nqs/rbm_io.hpp"
#include "nqs/runner.hpp"
#include "nqs/verify.hpp"

struct nqs_state {
  nqs::RbmState value;
};

struct nqs_circuit {
  nqs::Circuit value;
};

struct nqs_statevector {
  nqs::StateVector value;
};

namespace {

thread_local std::string g_last_error;

nqs_status status_of(nqs::ErrorKind kind) {
  switch (kind) {
    case nqs::ErrorKind::Structural: return NQS_ERR_STRUCTURAL;
    case nqs::ErrorKind::Numeric: return NQS_ERR_NUMERIC;
    case nqs::ErrorKind::DegenerateOverlap: return NQS_ERR_DEGENERATE;
    case nqs::ErrorKind::Learner: return NQS_ERR_LEARNER;
    case nqs::ErrorKind::Config: return NQS_ERR_CONFIG;
    case nqs::ErrorKind::Io: return NQS_ERR_IO;
    case nqs::ErrorKind::Limit: return NQS_ERR_LIMIT;
  }
  return NQS_ERR_INTERNAL;
}

template <class F>
nqs_status guarded(F &&f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const nqs::Error &e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return NQS_ERR_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return NQS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NQS_ERR_INTERNAL;
  }
}

void require(const void *p, const char *what) {
  if (p == nullptr) throw nqs::StructuralError(std::string(what) + " must not be null");
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nqs::GateOp gate_from(nqs_gate_kind kind, int64_t q0, int64_t q1, double angle) {
  switch (kind) {
    case NQS_GATE_RZ: return nqs::GateOp::rz(q0, angle);
    case NQS_GATE_CRZ: return nqs::GateOp::crz(q0, q1, angle);
    case NQS_GATE_H: return nqs::GateOp::h(q0);
    case NQS_GATE_X: return nqs::GateOp::x(q0);
    case NQS_GATE_Y: return nqs::GateOp::y(q0);
    case NQS_GATE_Z: return nqs::GateOp::z(q0);
  }
  throw nqs::StructuralError("unknown gate kind " + std::to_string(static_cast<int>(kind)));
}

nqs::Index limit_or_default(int64_t max_qubits) {
  return max_qubits <= 0 ? nqs::kDefaultOracleLimit : max_qubits;
}

}  // namespace

extern "C" {

const char *nqs_last_error(void) { return g_last_error.c_str(); }

const char *nqs_status_name(nqs_status status) {
  switch (status) {
    case NQS_OK: return "ok";
    case NQS_ERR_STRUCTURAL: return "structural error";
    case NQS_ERR_NUMERIC: return "numeric error";
    case NQS_ERR_DEGENERATE: return "degenerate overlap";
    case NQS_ERR_LEARNER: return "learner failure";
    case NQS_ERR_CONFIG: return "config error";
    case NQS_ERR_IO: return "i/o error";
    case NQS_ERR_LIMIT: return "size limit exceeded";
    case NQS_ERR_VERIFY: return "verification failed";
    case NQS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *nqs_version(void) { return "0.1.0"; }

void nqs_free_string(char *s) { std::free(s); }

nqs_status nqs_set_num_threads(int n) {
  return guarded([&] {
    if (n < 0) throw nqs::StructuralError("thread count must be >= 0");
    nqs::set_num_threads(n);
    return NQS_OK;
  });
}

nqs_status nqs_state_create(int64_t n_visible, int64_t n_hidden, nqs_state **out) {
  return guarded([&] {
    require(out, "out");
    *out = new nqs_state{nqs::RbmState(n_visible, n_hidden)};
    return NQS_OK;
  });
}

nqs_status nqs_state_load(const char *path, nqs_state **out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new nqs_state{nqs::load_rbm(path)};
    return NQS_OK;
  });
}

nqs_status nqs_state_save(const nqs_state *state, const char *path) {
  return guarded([&] {
    require(state, "state");
    require(path, "path");
    nqs::save_rbm(path, state->value);
    return NQS_OK;
  });
}

void nqs_state_destroy(nqs_state *state) { delete state; }

nqs_status nqs_state_dims(const nqs_state *state, int64_t *n_visible, int64_t *n_hidden) {
  return guarded([&] {
    require(state, "state");
    if (n_visible != nullptr) *n_visible = state->value.n_visible();
    if (n_hidden != nullptr) *n_hidden = state->value.n_hidden();
    return NQS_OK;
  });
}

nqs_status nqs_state_get_parameters(const nqs_state *state, double *out, size_t len) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const nqs::ComplexVector p = state->value.parameters();
    if (len != static_cast<size_t>(2 * p.size())) {
      throw nqs::StructuralError("buffer holds " + std::to_string(len) + " doubles, need " +
                                 std::to_string(2 * p.size()));
    }
    for (nqs::Index i = 0; i < p.size(); ++i) {
      out[2 * i] = p(i).real();
      out[2 * i + 1] = p(i).imag();
    }
    return NQS_OK;
  });
}

nqs_status nqs_state_set_parameters(nqs_state *state, const double *in, size_t len) {
  return guarded([&] {
    require(state, "state");
    require(in, "in");
    const nqs::Index n = state->value.n_params();
    if (len != static_cast<size_t>(2 * n)) {
      throw nqs::StructuralError("buffer holds " + std::to_string(len) + " doubles, need " +
                                 std::to_string(2 * n));
    }
    nqs::ComplexVector p(n);
    for (nqs::Index i = 0; i < n; ++i) p(i) = {in[2 * i], in[2 * i + 1]};
    nqs::RbmState next = state->value;
    next.set_parameters(p);
    next.check_finite();
    state->value = std::move(next);
    return NQS_OK;
  });
}

nqs_status nqs_state_log_amplitude(const nqs_state *state, const uint8_t *bits, double *re,
                                   double *im) {
  return guarded([&] {
    require(state, "state");
    require(bits, "bits");
    const nqs::Index n = state->value.n_visible();
    std::vector<std::uint8_t> v(bits, bits + n);
    const nqs::Complex l = nqs::log_amplitude(state->value, nqs::BitString(std::move(v)));
    if (re != nullptr) *re = l.real();
    if (im != nullptr) *im = l.imag();
    return NQS_OK;
  });
}

nqs_status nqs_state_apply_gate(nqs_state *state, nqs_gate_kind kind, int64_t qubit0,
                                int64_t qubit1, double angle) {
  return guarded([&] {
    require(state, "state");
    state->value = nqs::apply_exact(state->value, gate_from(kind, qubit0, qubit1, angle));
    return NQS_OK;
  });
}

nqs_status nqs_circuit_parse(const char *text, int64_t n_qubits, nqs_circuit **out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    std::optional<nqs::Index> n;
    if (n_qubits > 0) n = n_qubits;
    *out = new nqs_circuit{nqs::parse_circuit(text, n)};
    return NQS_OK;
  });
}

nqs_status nqs_circuit_load(const char *path, int64_t n_qubits, nqs_circuit **out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::optional<nqs::Index> n;
    if (n_qubits > 0) n = n_qubits;
    *out = new nqs_circuit{nqs::load_circuit(path, n)};
    return NQS_OK;
  });
}

nqs_status nqs_circuit_build(nqs_builtin_circuit which, int64_t n_qubits, nqs_circuit **out) {
  return guarded([&] {
    require(out, "out");
    switch (which) {
      case NQS_CIRCUIT_HADAMARD_TRANSFORM:
        *out = new nqs_circuit{nqs::build_hadamard_transform(n_qubits)};
        return NQS_OK;
      case NQS_CIRCUIT_TRUNCATED_FOURIER:
        *out = new nqs_circuit{nqs::build_truncated_fourier(n_qubits)};
        return NQS_OK;
    }
    throw nqs::StructuralError("unknown builtin circuit");
  });
}

void nqs_circuit_destroy(nqs_circuit *circuit) { delete circuit; }

nqs_status nqs_circuit_info(const nqs_circuit *circuit, int64_t *n_qubits, int64_t *n_gates,
                            int64_t *n_hadamard) {
  return guarded([&] {
    require(circuit, "circuit");
    const nqs::Circuit &c = circuit->value;
    if (n_qubits != nullptr) *n_qubits = c.n_qubits;
    if (n_gates != nullptr) *n_gates = static_cast<int64_t>(c.gates.size());
    if (n_hadamard != nullptr) {
      int64_t h = 0;
      for (const nqs::GateOp &g : c.gates) h += g.kind == nqs::GateKind::H;
      *n_hadamard = h;
    }
    return NQS_OK;
  });
}

nqs_status nqs_circuit_to_text(const nqs_circuit *circuit, char **out) {
  return guarded([&] {
    require(circuit, "circuit");
    require(out, "out");
    *out = dup_string(nqs::circuit_to_text(circuit->value));
    return NQS_OK;
  });
}

nqs_status nqs_expand_state(const nqs_state *state, int64_t max_qubits, nqs_statevector **out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = new nqs_statevector{nqs::expand_rbm(state->value, limit_or_default(max_qubits))};
    return NQS_OK;
  });
}

void nqs_statevector_destroy(nqs_statevector *v) { delete v; }

nqs_status nqs_statevector_info(const nqs_statevector *v, int64_t *n_qubits, uint64_t *dim) {
  return guarded([&] {
    require(v, "statevector");
    if (n_qubits != nullptr) *n_qubits = v->value.n_qubits();
    if (dim != nullptr) *dim = v->value.dim();
    return NQS_OK;
  });
}

nqs_status nqs_statevector_amplitudes(const nqs_statevector *v, double *out, size_t len) {
  return guarded([&] {
    require(v, "statevector");
    require(out, "out");
    const nqs::ComplexVector &a = v->value.amplitudes();
    if (len != static_cast<size_t>(2 * a.size())) {
      throw nqs::StructuralError("buffer holds " + std::to_string(len) + " doubles, need " +
                                 std::to_string(2 * a.size()));
    }
    for (nqs::Index i = 0; i < a.size(); ++i) {
      out[2 * i] = a(i).real();
      out[2 * i + 1] = a(i).imag();
    }
    return NQS_OK;
  });
}

nqs_status nqs_statevector_dump(const nqs_statevector *v, const char *path) {
  return guarded([&] {
    require(v, "statevector");
    require(path, "path");
    nqs::dump_statevector(path, v->value);
    return NQS_OK;
  });
}

nqs_status nqs_statevector_apply_circuit(nqs_statevector *v, const nqs_circuit *c) {
  return guarded([&] {
    require(v, "statevector");
    require(c, "circuit");
    nqs::apply_circuit_exact(v->value, c->value);
    return NQS_OK;
  });
}

nqs_status nqs_statevector_overlap(const nqs_statevector *u, const nqs_statevector *v,
                                   double *out) {
  return guarded([&] {
    require(u, "u");
    require(v, "v");
    require(out, "out");
    *out = nqs::overlap_exact(u->value, v->value);
    return NQS_OK;
  });
}

nqs_status nqs_config_template(const char *experiment, char **out) {
  return guarded([&] {
    require(experiment, "experiment");
    require(out, "out");
    const auto kind = nqs::parse_experiment_kind(experiment);
    if (!kind) throw nqs::ConfigError(std::string("unknown experiment '") + experiment + "'");
    *out = dup_string(nqs::config_template(*kind));
    return NQS_OK;
  });
}

nqs_status nqs_run_experiment(const char *config_path, int verbose, char **summary_json) {
  return guarded([&] {
    require(config_path, "config_path");
    const nqs::ExperimentConfig cfg = nqs::load_experiment_config(config_path);
    const nlohmann::json summary = nqs::run_experiment(cfg, verbose ? &std::cerr : nullptr);
    if (summary_json != nullptr) *summary_json = dup_string(summary.dump(2));
    return NQS_OK;
  });
}

nqs_status nqs_verify(uint64_t seed, int corrupt_crz_sign, int verbose, char **report_json) {
  return guarded([&] {
    nqs::VerifyOptions opts;
    opts.seed = seed;
    opts.corrupt_crz_sign = corrupt_crz_sign != 0;
    const nqs::VerifyReport report = nqs::verify_suite(opts, [&](const nqs::PropertyResult &r) {
      if (verbose) {
        std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
      }
    });
    if (report_json != nullptr) {
      nlohmann::json doc = nlohmann::json::array();
      for (const nqs::PropertyResult &r : report.results) {
        doc.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      }
      *report_json = dup_string(doc.dump(2));
    }
    if (!report.all_passed()) {
      g_last_error = "one or more properties failed";
      return NQS_ERR_VERIFY;
    }
    return NQS_OK;
  });
}

}  // extern "C"
