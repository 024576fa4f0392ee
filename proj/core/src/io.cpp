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

#include "bstw/io.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <sstream>

#include <json.hpp>

#include "bstw/errors.hpp"

namespace bstw::io {

namespace {

std::string fmt_sig(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

using nlohmann::json;

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("complex entries must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json matrix_json(const CMatrix& U) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < U.cols(); ++k) row.push_back(complex_json(U(i, k)));
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from(const json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  CMatrix U(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) U(i, k) = parse_complex(row.at(k));
  }
  return U;
}

json gate_json(const BeamSplitterGate& g) {
  return {{"round", g.round}, {"step", g.step}, {"i", g.i},       {"j", g.j},
          {"theta", g.theta}, {"phi0", g.phi0}, {"phi1", g.phi1}, {"phi2", g.phi2}};
}

json spec_json(const CircuitSpec& s) {
  return {{"dim", s.dim}, {"modes", s.modes}, {"sources", s.sources},
          {"depth", s.depth}, {"seed", s.seed}, {"gamma", s.gamma}};
}

json parse_json(const std::string& text) {
  return guarded("malformed JSON", [&] { return json::parse(text); });
}

json record_json(const OutcomeRecord& r) {
  json j;
  j["m"] = r.flag == SampleFlag::ok ? json(r.m) : json::array();
  j["flag"] = r.flag == SampleFlag::ok ? "ok" : "out";
  j["seed"] = r.seed;
  j["index"] = r.index;
  if (r.overload) j["overload"] = true;
  // Rounded to 10 significant digits.
  if (r.retained_mass != 1.0) j["retained_mass"] = std::stod(fmt_sig(r.retained_mass, 10));
  return j;
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!out) throw InvalidArgument("write failed for " + path);
}

std::string circuit_to_json(const Circuit& circuit) {
  json j;
  j["spec"] = spec_json(circuit.spec);
  j["sources"] = circuit.lattice.source_modes();
  json gates = json::array();
  for (const auto& g : circuit.gates) gates.push_back(gate_json(g));
  j["gates"] = gates;
  j["unitary"] = matrix_json(circuit.U);
  return j.dump(1) + "\n";
}

CircuitFile parse_circuit(const std::string& text) {
  const json j = parse_json(text);
  return guarded("invalid circuit file", [&] {
    CircuitFile f;
    const json& s = j.at("spec");
    f.spec.dim = s.at("dim").get<int>();
    f.spec.modes = s.at("modes").get<int>();
    f.spec.sources = s.at("sources").get<int>();
    f.spec.depth = s.value("depth", 0);
    f.spec.seed = s.value("seed", std::uint64_t{0});
    f.spec.gamma = s.value("gamma", 2.0);
    if (j.contains("sources")) {
      f.sources = j.at("sources").get<std::vector<int>>();
    } else {
      f.sources = Lattice(f.spec.dim, f.spec.modes, f.spec.sources).source_modes();
    }
    for (const json& g : j.value("gates", json::array())) {
      BeamSplitterGate b;
      b.round = g.value("round", 0);
      b.step = g.value("step", 0);
      b.i = g.at("i").get<int>();
      b.j = g.at("j").get<int>();
      b.theta = g.at("theta").get<double>();
      b.phi0 = g.value("phi0", 0.0);
      b.phi1 = g.value("phi1", 0.0);
      b.phi2 = g.value("phi2", 0.0);
      f.gates.push_back(b);
    }
    f.U = j.contains("unitary") ? matrix_from(j.at("unitary")) : circuit_unitary(f.spec.modes, f.gates);
    if (f.U.rows() != f.spec.modes || f.U.cols() != f.spec.modes) throw ParseError("unitary size does not match spec");
    f.kind = j.value("kind", std::string());
    f.squeezing = j.value("squeezing", -1.0);
    return f;
  });
}

std::string matrix_to_json(const CMatrix& U) { return matrix_json(U).dump() + "\n"; }

CMatrix parse_matrix(const std::string& text) {
  const json j = parse_json(text);
  return guarded("invalid matrix", [&] { return matrix_from(j.is_object() ? j.at("unitary") : j); });
}

std::string record_to_json(const OutcomeRecord& record) { return record_json(record).dump(); }

std::vector<OutcomeRecord> parse_samples(const std::string& text) {
  std::vector<OutcomeRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = guarded("malformed sample line", [&] { return json::parse(line); });
    out.push_back(guarded("invalid sample record", [&] {
      OutcomeRecord r;
      const std::string flag = j.value("flag", std::string("ok"));
      if (flag != "ok" && flag != "out") throw ParseError("line " + std::to_string(lineno) + ": unknown flag");
      r.flag = flag == "ok" ? SampleFlag::ok : SampleFlag::out;
      if (r.flag == SampleFlag::ok) r.m = j.at("m").get<WeightVector>();
      r.seed = j.value("seed", std::uint64_t{0});
      r.index = j.value("index", std::uint64_t{lineno - 1});
      r.overload = j.value("overload", false);
      r.retained_mass = j.value("retained_mass", 1.0);
      return r;
    }));
  }
  return out;
}

std::string pmf_to_json(const Pmf& pmf, const std::string& kind) {
  json j;
  j["kind"] = kind;
  json outs = json::array();
  for (std::size_t i = 0; i < pmf.outcomes.size(); ++i) outs.push_back({{"m", pmf.outcomes[i]}, {"p", pmf.p[i]}});
  j["outcomes"] = outs;
  j["out_mass"] = pmf.out_mass;
  j["total"] = pmf.total();
  return j.dump(1) + "\n";
}

Pmf parse_pmf(const std::string& text) {
  const json j = parse_json(text);
  return guarded("invalid distribution file", [&] {
    Pmf pmf;
    for (const json& o : j.at("outcomes")) {
      pmf.outcomes.push_back(o.at("m").get<WeightVector>());
      pmf.p.push_back(o.at("p").get<double>());
    }
    pmf.out_mass = j.value("out_mass", 0.0);
    return pmf;
  });
}

WeightVector parse_outcome(const std::string& text) {
  const json j = parse_json(text);
  return guarded("invalid outcome", [&] { return (j.is_object() ? j.at("m") : j).get<WeightVector>(); });
}

std::string graph_to_json(const BipartiteGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return json{{"rows", g.rows}, {"cols", g.cols}, {"edges", edges}}.dump() + "\n";
}

std::string graph_to_json(const SymmetricGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return json{{"vertices", g.vertices}, {"edges", edges}}.dump() + "\n";
}

std::string decomposition_to_json(const TreeDecomposition& td) {
  json nodes = json::array();
  for (const auto& n : td.nodes) {
    nodes.push_back({{"id", n.id}, {"parent", n.parent}, {"bag_rows", n.bag_rows}, {"bag_cols", n.bag_cols}});
  }
  json j;
  j["kind"] = td.kind == GraphKind::bipartite ? "bipartite" : "symmetric";
  j["width"] = td.width();
  j["nodes"] = nodes;
  return j.dump(1) + "\n";
}

std::string state_to_json(const GaussianState& s) {
  std::vector<double> V(s.V.size()), d(s.d.data(), s.d.data() + s.d.size());
  for (Eigen::Index i = 0; i < s.V.rows(); ++i) {
    for (Eigen::Index k = 0; k < s.V.cols(); ++k) V[i * s.V.cols() + k] = s.V(i, k);
  }
  return json{{"M", s.modes()}, {"V", V}, {"d", d}}.dump() + "\n";
}

GaussianState parse_state(const std::string& text) {
  const json j = parse_json(text);
  return guarded("invalid Gaussian state", [&] {
    const int M = j.at("M").get<int>();
    const auto V = j.at("V").get<std::vector<double>>();
    const auto d = j.at("d").get<std::vector<double>>();
    if (M < 0 || V.size() != static_cast<std::size_t>(4 * M * M) || d.size() != static_cast<std::size_t>(2 * M)) {
      throw ParseError("state arrays do not match M");
    }
    GaussianState s;
    s.V = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(V.data(), 2 * M,
                                                                                                    2 * M);
    s.d = Eigen::Map<const RVector>(d.data(), 2 * M);
    return s;
  });
}

std::string approx_circuit_to_json(const ApproxCircuit& c) {
  json j;
  j["modes"] = c.modes();
  j["mu"] = c.mu;
  j["kappa_scale"] = c.kappa_scale;
  j["dU_norm"] = c.dU_norm;
  j["dW_norm"] = c.dW_norm;
  j["rescale"] = c.rescale == Rescale::divide ? "divide" : "clamp";
  j["U_tilde"] = matrix_json(c.U_tilde);
  j["W"] = matrix_json(c.W);
  return j.dump() + "\n";
}

std::string report_to_json(const LikelihoodReport& r) {
  json j;
  j["ratio"] = r.ratio;
  j["n_samples"] = r.n_samples;
  j["marginal_modes"] = r.marginal_modes;
  j["running"] = r.running;
  j["log_p_a"] = r.log_p_a;
  j["log_p_b"] = r.log_p_b;
  return j.dump(1) + "\n";
}

}  // namespace bstw::io
