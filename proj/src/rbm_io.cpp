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

#include "nqs/rbm_io.hpp"

#include <fstream>
#include <sstream>

namespace nqs {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json &v, const std::string &where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(where + ": expected a [re, im] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

namespace {

ComplexVector vector_from_json(const json &v, Index expected,
                               const std::string &field) {
  if (!v.is_array() || static_cast<Index>(v.size()) != expected) {
    throw ConfigError(field + ": expected an array of " + std::to_string(expected) +
                      " complex entries");
  }
  ComplexVector out(expected);
  for (Index i = 0; i < expected; ++i) {
    out(i) = complex_from_json(v[static_cast<std::size_t>(i)],
                               field + "[" + std::to_string(i) + "]");
  }
  return out;
}

Index size_field(const json &doc, const char *name) {
  if (!doc.contains(name) || !doc[name].is_number_integer() || doc[name].get<long long>() < 0) {
    throw ConfigError(std::string(name) + ": expected a non-negative integer");
  }
  return static_cast<Index>(doc[name].get<long long>());
}

}  // namespace

json rbm_to_json(const RbmState &state) {
  json a = json::array(), b = json::array(), w = json::array();
  for (Index j = 0; j < state.n_visible(); ++j) a.push_back(complex_to_json(state.visible_bias()(j)));
  for (Index k = 0; k < state.n_hidden(); ++k) b.push_back(complex_to_json(state.hidden_bias()(k)));
  for (Index j = 0; j < state.n_visible(); ++j) {
    json row = json::array();
    for (Index k = 0; k < state.n_hidden(); ++k) row.push_back(complex_to_json(state.weights()(j, k)));
    w.push_back(std::move(row));
  }
  json doc;
  doc["n_visible"] = state.n_visible();
  doc["n_hidden"] = state.n_hidden();
  doc["visible_bias"] = std::move(a);
  doc["hidden_bias"] = std::move(b);
  doc["weights"] = std::move(w);
  return doc;
}

RbmState rbm_from_json(const json &doc) {
  if (!doc.is_object()) throw ConfigError("RBM document must be an object");
  const Index n = size_field(doc, "n_visible");
  const Index m = size_field(doc, "n_hidden");
  ComplexVector a = vector_from_json(doc.value("visible_bias", json()), n, "visible_bias");
  ComplexVector b = vector_from_json(doc.value("hidden_bias", json()), m, "hidden_bias");
  const json &w = doc.contains("weights") ? doc["weights"] : json();
  if (!w.is_array() || static_cast<Index>(w.size()) != n) {
    throw ConfigError("weights: expected " + std::to_string(n) + " rows");
  }
  ComplexMatrix weights(n, m);
  for (Index j = 0; j < n; ++j) {
    weights.row(j) = vector_from_json(w[static_cast<std::size_t>(j)], m,
                                      "weights[" + std::to_string(j) + "]")
                         .transpose();
  }
  return RbmState(std::move(a), std::move(b), std::move(weights));
}

void save_rbm(const std::string &path, const RbmState &state, const json &metadata) {
  json doc = rbm_to_json(state);
  if (!metadata.empty()) doc["metadata"] = metadata;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw IoError("failed writing " + path);
}

RbmState load_rbm(const std::string &path, json *metadata) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error &e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (metadata) *metadata = doc.value("metadata", json::object());
  return rbm_from_json(doc);
}

}  // namespace nqs
