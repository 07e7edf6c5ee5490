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

#include "nqs/circuits.hpp"

#include <chrono>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nqs/random.hpp"

namespace nqs {

void Circuit::validate() const {
  for (const GateOp &g : gates) g.validate(n_qubits);
}

Circuit build_hadamard_transform(Index n) {
  if (n < 1) throw StructuralError("Hadamard transform needs at least one qubit");
  Circuit c{n, {}};
  for (Index q = 0; q < n; ++q) c.gates.push_back(GateOp::h(q));
  return c;
}

Circuit build_truncated_fourier(Index n) {
  if (n < 1) throw StructuralError("truncated Fourier transform needs at least one qubit");
  Circuit c{n, {}};
  for (Index q = 0; q < n; ++q) {
    c.gates.push_back(GateOp::h(q));
    if (q + 1 < n) c.gates.push_back(GateOp::crz(q, q + 1, std::numbers::pi / 2));
    if (q + 2 < n) c.gates.push_back(GateOp::crz(q, q + 2, std::numbers::pi / 4));
  }
  return c;
}

namespace {

Index parse_index(std::istringstream &in, int line_no, const std::string &line) {
  std::string token;
  in >> token;
  if (token.empty() || token.size() > 9 ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("line " + std::to_string(line_no) +
                      ": expected a non-negative qubit index in '" + line + "'");
  }
  return static_cast<Index>(std::stoll(token));
}

double parse_angle(std::istringstream &in, int line_no, const std::string &line) {
  std::string token;
  if (!(in >> token)) {
    throw ConfigError("line " + std::to_string(line_no) + ": missing angle in '" +
                      line + "'");
  }
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception &) {
    throw ConfigError("line " + std::to_string(line_no) + ": bad angle '" + token + "'");
  }
}

}  // namespace

Circuit parse_circuit(const std::string &text, std::optional<Index> n_qubits) {
  Circuit c;
  std::istringstream lines(text);
  std::string raw;
  Index max_index = -1;
  for (int line_no = 1; std::getline(lines, raw); ++line_no) {
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream in(line);
    std::string name;
    if (!(in >> name)) continue;
    const auto kind = parse_gate_kind(name);
    if (!kind) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown gate '" + name + "'");
    }
    GateOp g{*kind, {0, 0}, 0.0};
    g.qubits[0] = parse_index(in, line_no, raw);
    if (g.arity() == 2) g.qubits[1] = parse_index(in, line_no, raw);
    if (g.has_angle()) g.angle = parse_angle(in, line_no, raw);
    std::string extra;
    if (in >> extra) {
      throw ConfigError("line " + std::to_string(line_no) + ": unexpected token '" +
                        extra + "'");
    }
    for (int i = 0; i < g.arity(); ++i) max_index = std::max(max_index, g.qubits[i]);
    c.gates.push_back(g);
  }
  c.n_qubits = n_qubits.value_or(max_index + 1);
  c.validate();
  return c;
}

Circuit load_circuit(const std::string &path, std::optional<Index> n_qubits) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open circuit file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_circuit(buffer.str(), n_qubits);
}

std::string circuit_to_text(const Circuit &circuit) {
  std::string out;
  for (const GateOp &g : circuit.gates) out += g.to_string() + '\n';
  return out;
}

ExecutionResult execute(const Circuit &circuit, const RbmState &state,
                        const LearnerConfig &lcfg, const SamplerConfig &scfg,
                        const GateObserver &observer) {
  if (circuit.n_qubits > state.n_visible()) {
    throw StructuralError("circuit acts on " + std::to_string(circuit.n_qubits) +
                          " qubits, state has " + std::to_string(state.n_visible()));
  }
  for (const GateOp &g : circuit.gates) g.validate(state.n_visible());

  ExecutionResult result{state, {}, std::nullopt};
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const GateOp &g = circuit.gates[i];
    const auto start = std::chrono::steady_clock::now();
    GateRecord rec;
    rec.gate_index = static_cast<Index>(i);
    rec.gate = g;
    if (g.is_exact()) {
      result.state = apply_exact(result.state, g);
    } else {
      LearnerConfig gate_cfg = lcfg;
      gate_cfg.seed = derive_seed(lcfg.seed, "gate", i);
      rec.method = GateMethod::Learned;
      try {
        auto [learned, report] = learn_hadamard(result.state, g.qubits[0], gate_cfg, scfg);
        result.state = std::move(learned);
        rec.overlap_estimate = report.final_overlap;
        rec.overlap_std_error = report.final_std_error;
      } catch (const Error &e) {
        result.failure = "gate " + std::to_string(i) + " (" + g.to_string() + "): " + e.what();
        return result;
      }
    }
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.hidden_units_after = result.state.n_hidden();
    result.trace.push_back(rec);
    if (observer) observer(rec, result.state);
  }
  return result;
}

}  // namespace nqs
