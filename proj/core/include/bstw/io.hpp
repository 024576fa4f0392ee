/*
 * Copyright 2026 The bstw Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BSTW_IO_HPP
#define BSTW_IO_HPP

#include <string>
#include <vector>

#include "bstw/approx.hpp"
#include "bstw/circuits.hpp"
#include "bstw/gaussian.hpp"
#include "bstw/graph.hpp"
#include "bstw/likelihood.hpp"
#include "bstw/samplers.hpp"
#include "bstw/types.hpp"

namespace bstw::io {

/// Whole file as text; ParseError when unreadable.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Circuit document: {spec, sources, gates, unitary}. Complex entries are [re, im].
struct CircuitFile {
  CircuitSpec spec;
  std::vector<int> sources;
  std::vector<BeamSplitterGate> gates;
  CMatrix U;
  /// Optional model fields.
  std::string kind;
  double squeezing = -1.0;
};

std::string circuit_to_json(const Circuit& circuit);
/// Parses a circuit or model document; U is rebuilt from gates when absent.
CircuitFile parse_circuit(const std::string& text);

std::string matrix_to_json(const CMatrix& U);
CMatrix parse_matrix(const std::string& text);

/// One line {"m": [..], "flag": "ok"|"out", "seed": .., "index": ..}.
std::string record_to_json(const OutcomeRecord& record);
std::vector<OutcomeRecord> parse_samples(const std::string& text);

std::string pmf_to_json(const Pmf& pmf, const std::string& kind);
Pmf parse_pmf(const std::string& text);

/// Outcome as a bare list or an object with an "m" field.
WeightVector parse_outcome(const std::string& text);

std::string graph_to_json(const BipartiteGraph& g);
std::string graph_to_json(const SymmetricGraph& g);
std::string decomposition_to_json(const TreeDecomposition& td);

/// {M, V: row-major reals, d: reals}.
std::string state_to_json(const GaussianState& s);
GaussianState parse_state(const std::string& text);

std::string approx_circuit_to_json(const ApproxCircuit& c);

std::string report_to_json(const LikelihoodReport& r);

}  // namespace bstw::io

#endif  // BSTW_IO_HPP
