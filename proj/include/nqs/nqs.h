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


/* C interface to the nqs-circuits library. Every call returns an
 * nqs_status; on failure nqs_last_error() describes the problem (per
 * thread). Strings returned through char ** are owned by the caller and
 * released with nqs_free_string. */

#ifndef NQS_NQS_H
#define NQS_NQS_H

#include <stddef.h>
#include <stdint.h>

#if defined(NQS_BUILDING_LIBRARY)
#define NQS_API __attribute__((visibility("default")))
#else
#define NQS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nqs_status {
  NQS_OK = 0,
  NQS_ERR_STRUCTURAL = 1,   /* bad index, dimension or argument */
  NQS_ERR_NUMERIC = 2,      /* non-finite parameters or amplitudes */
  NQS_ERR_DEGENERATE = 3,   /* overlap vanished during learning */
  NQS_ERR_LEARNER = 4,      /* learner gave up */
  NQS_ERR_CONFIG = 5,       /* malformed config or circuit text */
  NQS_ERR_IO = 6,
  NQS_ERR_LIMIT = 7,        /* above the statevector qubit limit */
  NQS_ERR_VERIFY = 8,       /* verify ran but some property failed */
  NQS_ERR_INTERNAL = 99
} nqs_status;

typedef struct nqs_state nqs_state;
typedef struct nqs_circuit nqs_circuit;
typedef struct nqs_statevector nqs_statevector;

typedef enum nqs_gate_kind {
  NQS_GATE_RZ = 0,
  NQS_GATE_CRZ = 1,
  NQS_GATE_H = 2,
  NQS_GATE_X = 3,
  NQS_GATE_Y = 4,
  NQS_GATE_Z = 5
} nqs_gate_kind;

typedef enum nqs_builtin_circuit {
  NQS_CIRCUIT_HADAMARD_TRANSFORM = 0,
  NQS_CIRCUIT_TRUNCATED_FOURIER = 1
} nqs_builtin_circuit;

NQS_API const char *nqs_last_error(void);
NQS_API const char *nqs_status_name(nqs_status status);
NQS_API const char *nqs_version(void);
NQS_API void nqs_free_string(char *s);

/* 0 restores the default (NQS_NUM_THREADS or the hardware count). */
NQS_API nqs_status nqs_set_num_threads(int n);

/* RBM states. */
NQS_API nqs_status nqs_state_create(int64_t n_visible, int64_t n_hidden, nqs_state **out);
NQS_API nqs_status nqs_state_load(const char *path, nqs_state **out);
NQS_API nqs_status nqs_state_save(const nqs_state *state, const char *path);
NQS_API void nqs_state_destroy(nqs_state *state);
NQS_API nqs_status nqs_state_dims(const nqs_state *state, int64_t *n_visible,
                                  int64_t *n_hidden);
/* Parameters in the order a, b, W (row-major), as interleaved re, im
 * doubles; len is the number of doubles (2 * parameter count). */
NQS_API nqs_status nqs_state_get_parameters(const nqs_state *state, double *out, size_t len);
NQS_API nqs_status nqs_state_set_parameters(nqs_state *state, const double *in, size_t len);
/* bits holds n_visible bytes, each 0 or 1. */
NQS_API nqs_status nqs_state_log_amplitude(const nqs_state *state, const uint8_t *bits,
                                           double *re, double *im);
/* Exact update for RZ, CRZ, X, Y, Z. qubit1 and angle are ignored where
 * they do not apply. */
NQS_API nqs_status nqs_state_apply_gate(nqs_state *state, nqs_gate_kind kind, int64_t qubit0,
                                        int64_t qubit1, double angle);

/* Circuits. n_qubits <= 0 infers the width from the gates. */
NQS_API nqs_status nqs_circuit_parse(const char *text, int64_t n_qubits, nqs_circuit **out);
NQS_API nqs_status nqs_circuit_load(const char *path, int64_t n_qubits, nqs_circuit **out);
NQS_API nqs_status nqs_circuit_build(nqs_builtin_circuit which, int64_t n_qubits,
                                     nqs_circuit **out);
NQS_API void nqs_circuit_destroy(nqs_circuit *circuit);
NQS_API nqs_status nqs_circuit_info(const nqs_circuit *circuit, int64_t *n_qubits,
                                    int64_t *n_gates, int64_t *n_hadamard);
NQS_API nqs_status nqs_circuit_to_text(const nqs_circuit *circuit, char **out);

/* Statevectors (oracle). max_qubits <= 0 uses the default limit. */
NQS_API nqs_status nqs_expand_state(const nqs_state *state, int64_t max_qubits,
                                    nqs_statevector **out);
NQS_API void nqs_statevector_destroy(nqs_statevector *v);
NQS_API nqs_status nqs_statevector_info(const nqs_statevector *v, int64_t *n_qubits,
                                        uint64_t *dim);
/* Copies 2 * dim doubles (re, im interleaved, little-endian basis order). */
NQS_API nqs_status nqs_statevector_amplitudes(const nqs_statevector *v, double *out,
                                              size_t len);
NQS_API nqs_status nqs_statevector_dump(const nqs_statevector *v, const char *path);
NQS_API nqs_status nqs_statevector_apply_circuit(nqs_statevector *v, const nqs_circuit *c);
NQS_API nqs_status nqs_statevector_overlap(const nqs_statevector *u, const nqs_statevector *v,
                                           double *out);

/* Experiments. */
NQS_API nqs_status nqs_config_template(const char *experiment, char **out);
/* Runs the experiment described by the config file. Progress lines go to
 * stderr when verbose is nonzero; summary_json (optional) receives the
 * summary document. */
NQS_API nqs_status nqs_run_experiment(const char *config_path, int verbose,
                                      char **summary_json);
/* Runs the invariant battery, printing one PASS/FAIL line per property to
 * stdout when verbose is nonzero. Returns NQS_ERR_VERIFY if anything
 * failed; report_json (optional) receives the per-property results. */
NQS_API nqs_status nqs_verify(uint64_t seed, int corrupt_crz_sign, int verbose,
                              char **report_json);

#ifdef __cplusplus
}
#endif

#endif /* NQS_NQS_H */
