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

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bstw/approx.hpp"
#include "bstw/band.hpp"
#include "bstw/circuits.hpp"
#include "bstw/errors.hpp"
#include "bstw/gaussian.hpp"
#include "bstw/graph.hpp"
#include "bstw/io.hpp"
#include "bstw/lattice.hpp"
#include "bstw/likelihood.hpp"
#include "bstw/samplers.hpp"
#include "bstw/scaling.hpp"

namespace {

using namespace bstw;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitCap = 4;
constexpr int kExitNumerical = 5;

int fail(int code, const std::string& kind, const std::string& message) {
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "error: code=" << code << " kind=" << kind << " message=" << flat << "\n";
  return code;
}

int thread_count() {
  const char* env = std::getenv("BSTW_THREADS");
  if (!env || !*env) return 1;
  try {
    return std::max(1, std::stoi(env));
  } catch (const std::exception&) {
    throw InvalidArgument("BSTW_THREADS must be a positive integer");
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_text(path, text);
  }
}

Engine parse_engine(const std::string& s) { return s == "oracle" ? Engine::oracle : Engine::treedp; }

DistanceMetric parse_metric(const std::string& s) {
  return s == "manhattan" ? DistanceMetric::manhattan : DistanceMetric::chebyshev;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "mindegree") return MinDegree{};
  return MinFill{};
}

std::vector<int> all_ones(int M) { return std::vector<int>(M, 1); }

const std::vector<std::string> kEngines = {"treedp", "oracle"};
const std::vector<std::string> kKinds = {"spbs", "gbs"};
const std::vector<std::string> kMetrics = {"chebyshev", "manhattan"};

struct Options {
  // gen-circuit
  CircuitSpec spec;
  // shared
  std::string circuit, out, kind = "spbs", engine = "treedp", metric = "chebyshev", rescale = "divide";
  std::uint64_t seed = 0;
  double squeezing = -1.0;
  double kappa = -1.0;
  int m_max = -1;
  std::uint64_t n = 1000;
  // tvd
  std::string samples, dist;
  // treewidth
  std::string outcome, graph_kind = "bipartite", strategy = "minfill";
  bool worst_band = false;
  double zero_tol = 1e-12;
  // likelihood
  std::string samples_a, samples_b, model, marginal;
  double floor = 0.0;
  bool per_sample = false;
  // bench
  std::string family = "banded";
  std::vector<int> sizes;
  int bandwidth = 3;
  double min_seconds = 0.05;
};

double squeezing_for(const Options& o, const io::CircuitFile& f) {
  if (o.squeezing >= 0.0) return o.squeezing;
  if (f.squeezing >= 0.0) return f.squeezing;
  return 0.5;
}

std::string kind_for(const Options& o, const io::CircuitFile& f, bool explicit_kind) {
  if (!explicit_kind && !f.kind.empty()) return f.kind;
  return o.kind;
}

int run_gen_circuit(const Options& o) {
  emit(o.out, io::circuit_to_json(build_local_haar_circuit(o.spec)));
  return kExitOk;
}

int run_sample(const Options& o, bool explicit_kind) {
  const io::CircuitFile f = io::parse_circuit(io::read_text(o.circuit));
  const std::string kind = kind_for(o, f, explicit_kind);
  SamplerConfig cfg;
  cfg.engine = parse_engine(o.engine);
  cfg.seed = o.seed;
  cfg.m_max = o.m_max;
  const double r = squeezing_for(o, f);
  std::function<OutcomeRecord(std::uint64_t)> draw;
  std::ostringstream summary;
  summary << std::setprecision(10) << "{\"kind\":\"" << kind << "\",\"n\":" << o.n;

  std::optional<ApproxCircuit> approx;
  std::optional<GbsSampler> gbs;
  std::optional<ApproxGbsSampler> agbs;
  if (o.kappa >= 0.0) {
    const Lattice lattice(f.spec.dim, f.spec.modes, f.spec.sources);
    approx = approximate_circuit(f.U, f.sources, lattice, o.kappa,
                                 o.rescale == "clamp" ? Rescale::clamp : Rescale::divide, parse_metric(o.metric));
    const int N = static_cast<int>(f.sources.size());
    summary << ",\"kappa\":" << o.kappa << ",\"dU_norm\":" << approx->dU_norm << ",\"dW_norm\":" << approx->dW_norm;
    if (kind == "spbs") {
      summary << ",\"tvd_bound\":" << spbs_tvd_bound(N, approx->dW_norm);
    } else {
      const double dv = (extended_exact_state(f.U, f.sources, r).V - extended_approx_state(*approx, f.sources, r).V).norm();
      summary << ",\"covariance_distance\":" << dv
              << ",\"covariance_bound\":" << covariance_distance_bound(f.spec.modes, N, r, approx->dW_norm)
              << ",\"tvd_bound\":" << gbs_tvd_bound(N, r, dv);
    }
  }
  if (kind == "spbs") {
    if (approx) {
      draw = [&](std::uint64_t i) { return approx_spbs_sample(*approx, f.sources, cfg, i); };
    } else {
      require_unitary(f.U);
      draw = [&](std::uint64_t i) { return spbs_sample(f.U, f.sources, cfg, i); };
    }
  } else {
    if (approx) {
      agbs.emplace(*approx, f.sources, r, cfg);
      draw = [&](std::uint64_t i) { return agbs->sample(i); };
    } else {
      gbs.emplace(squeezed_circuit_state(f.U, f.sources, r), cfg);
      draw = [&](std::uint64_t i) { return gbs->sample(i); };
    }
    summary << ",\"squeezing\":" << r << ",\"m_max\":" << (agbs ? agbs->m_max() : gbs->m_max());
  }
  const auto records = sample_batch(draw, o.n, thread_count());
  std::ostringstream lines;
  std::uint64_t outs = 0, overloads = 0;
  for (const auto& rec : records) {
    lines << io::record_to_json(rec) << "\n";
    outs += rec.flag == SampleFlag::out;
    overloads += rec.overload;
  }
  emit(o.out, lines.str());
  const double n = std::max<double>(1.0, static_cast<double>(o.n));
  summary << ",\"out_rate\":" << outs / n << ",\"overload_rate\":" << overloads / n << "}\n";
  if (!o.out.empty() && o.out != "-") std::cout << summary.str();
  return kExitOk;
}

int run_exact_dist(const Options& o, bool explicit_kind) {
  const io::CircuitFile f = io::parse_circuit(io::read_text(o.circuit));
  const std::string kind = kind_for(o, f, explicit_kind);
  const Engine engine = parse_engine(o.engine);
  Pmf pmf;
  std::optional<ApproxCircuit> approx;
  if (o.kappa >= 0.0) {
    const Lattice lattice(f.spec.dim, f.spec.modes, f.spec.sources);
    approx = approximate_circuit(f.U, f.sources, lattice, o.kappa,
                                 o.rescale == "clamp" ? Rescale::clamp : Rescale::divide, parse_metric(o.metric));
  }
  if (kind == "spbs") {
    pmf = approx ? approx_spbs_distribution(*approx, f.sources, engine) : spbs_exact_distribution(f.U, f.sources, engine);
  } else {
    const int m_max = o.m_max >= 0 ? o.m_max : kGbsOracleMaxCutoff;
    const double r = squeezing_for(o, f);
    pmf = approx ? approx_gbs_distribution(*approx, f.sources, r, m_max, engine)
                 : gbs_exact_distribution(f.U, f.sources, r, m_max, engine);
  }
  emit(o.out, io::pmf_to_json(pmf, kind));
  return kExitOk;
}

int run_tvd(const Options& o) {
  const auto samples = io::parse_samples(io::read_text(o.samples));
  const Pmf pmf = io::parse_pmf(io::read_text(o.dist));
  std::cout << std::setprecision(12) << empirical_tvd(samples, pmf) << "\n";
  return kExitOk;
}

int run_treewidth(const Options& o) {
  const io::CircuitFile f = io::parse_circuit(io::read_text(o.circuit));
  const int M = f.spec.modes;
  WeightVector outcome = o.worst_band ? all_ones(M) : io::parse_outcome(io::read_text(o.outcome));
  if (static_cast<int>(outcome.size()) != M) throw InvalidArgument("outcome length must equal the mode count");
  const GraphKind kind = o.graph_kind == "symmetric" ? GraphKind::symmetric : GraphKind::bipartite;
  TreeDecomposition td;
  if (o.kappa >= 0.0) {
    const Lattice lattice(f.spec.dim, M, f.spec.sources);
    td = band_decomposition(lattice, outcome, o.kappa, kind, parse_metric(o.metric));
  } else {
    std::vector<int> occupied;
    for (int j = 0; j < M; ++j) {
      if (outcome[j] > 0) occupied.push_back(j);
    }
    if (kind == GraphKind::bipartite) {
      td = tree_decompose(build_bipartite_graph(f.U, occupied, f.sources, o.zero_tol), parse_strategy(o.strategy));
    } else {
      std::vector<double> r(M, 0.0);
      for (int s : f.sources) r[s] = squeezing_for(o, f);
      td = tree_decompose(build_symmetric_graph(b_matrix(f.U, r), occupied, o.zero_tol), parse_strategy(o.strategy));
    }
  }
  emit(o.out, io::decomposition_to_json(td));
  if (!o.out.empty() && o.out != "-") std::cout << "{\"width\":" << td.width() << "}\n";
  return kExitOk;
}

std::vector<WeightVector> kept_outcomes(const std::vector<OutcomeRecord>& recs, const char* name) {
  std::vector<WeightVector> out;
  std::size_t dropped = 0;
  for (const auto& r : recs) {
    if (r.flag == SampleFlag::ok) {
      out.push_back(r.m);
    } else {
      ++dropped;
    }
  }
  if (dropped) std::cerr << "note: dropped " << dropped << " out-flagged samples from " << name << "\n";
  return out;
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      v.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InvalidArgument("bad integer list entry '" + tok + "'");
    }
  }
  return v;
}

int run_likelihood(const Options& o) {
  const io::CircuitFile f = io::parse_circuit(io::read_text(o.model));
  const auto a = kept_outcomes(io::parse_samples(io::read_text(o.samples_a)), "samples-a");
  const auto b = kept_outcomes(io::parse_samples(io::read_text(o.samples_b)), "samples-b");
  const std::string kind = f.kind.empty() ? "gbs" : f.kind;
  const Engine engine = parse_engine(o.engine);
  std::unique_ptr<ProbabilityModel> model;
  if (kind == "spbs") {
    model = std::make_unique<SpbsModel>(f.U, f.sources, engine);
  } else if (kind == "gbs") {
    model = std::make_unique<GbsModel>(squeezed_circuit_state(f.U, f.sources, squeezing_for(o, f)), engine);
  } else {
    throw ParseError("model kind must be spbs or gbs");
  }
  LikelihoodOptions opts;
  opts.marginal_modes = parse_list(o.marginal);
  opts.floor = o.floor;
  opts.per_sample = o.per_sample;
  emit(o.out, io::report_to_json(log_likelihood_ratio(a, b, *model, opts)));
  return kExitOk;
}

int run_bench(const Options& o) {
  const BenchFamily family = o.family == "dense" ? BenchFamily::dense : BenchFamily::banded;
  const Engine engine = parse_engine(o.engine);
  std::ostringstream t;
  t << "family=" << o.family << " engine=" << o.engine << " bandwidth=" << o.bandwidth << "\n";
  t << std::left << std::setw(8) << "size" << std::setw(8) << "width" << "seconds\n";
  for (int n : o.sizes) {
    const BenchRow row = bench_permanent(family, n, engine, o.bandwidth, o.seed, o.min_seconds, parse_strategy(o.strategy));
    t << std::left << std::setw(8) << row.size << std::setw(8) << row.width << std::scientific << std::setprecision(4)
      << row.seconds << std::defaultfloat << "\n";
  }
  emit(o.out, t.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Treewidth-based boson sampling simulator"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* gen = app.add_subcommand("gen-circuit", "Generate a local Haar-random beam-splitter circuit");
  gen->add_option("--dim", o.spec.dim, "Lattice dimension")->required();
  gen->add_option("--modes", o.spec.modes, "Number of modes M")->required();
  gen->add_option("--sources", o.spec.sources, "Number of sources N")->required();
  gen->add_option("--depth", o.spec.depth, "Number of rounds D")->required();
  gen->add_option("--seed", o.spec.seed, "RNG seed");
  gen->add_option("--gamma", o.spec.gamma, "Exponent in M = k N^gamma");
  gen->add_option("--out", o.out, "Output file (default stdout)");
  gen->callback([&] { action = [&] { return run_gen_circuit(o); }; });

  auto* sample = app.add_subcommand("sample", "Draw samples from a circuit");
  sample->add_option("--circuit", o.circuit, "Circuit or model file")->required();
  auto* sample_kind = sample->add_option("--kind", o.kind, "spbs or gbs")->check(CLI::IsMember(kKinds));
  sample->add_option("--engine", o.engine, "treedp or oracle")->check(CLI::IsMember(kEngines));
  sample->add_option("--n", o.n, "Number of samples");
  sample->add_option("--seed", o.seed, "RNG seed");
  sample->add_option("--approx-kappa", o.kappa, "Truncate at kappa * L and sample the dilation");
  sample->add_option("--rescale", o.rescale, "Singular-value rescaling")->check(CLI::IsMember({"divide", "clamp"}));
  sample->add_option("--metric", o.metric, "Lattice distance")->check(CLI::IsMember(kMetrics));
  sample->add_option("--m-max", o.m_max, "GBS per-mode photon cutoff");
  sample->add_option("--squeezing", o.squeezing, "GBS squeezing r");
  sample->add_option("--out", o.out, "Sample file (default stdout)");
  sample->callback([&] { action = [&] { return run_sample(o, sample_kind->count() > 0); }; });

  auto* exact = app.add_subcommand("exact-dist", "Exact outcome distribution at oracle scale");
  exact->add_option("--circuit", o.circuit, "Circuit or model file")->required();
  auto* exact_kind = exact->add_option("--kind", o.kind, "spbs or gbs")->check(CLI::IsMember(kKinds));
  exact->add_option("--engine", o.engine, "treedp or oracle")->check(CLI::IsMember(kEngines));
  exact->add_option("--approx-kappa", o.kappa, "Distribution of the approximate sampler");
  exact->add_option("--rescale", o.rescale, "Singular-value rescaling")->check(CLI::IsMember({"divide", "clamp"}));
  exact->add_option("--metric", o.metric, "Lattice distance")->check(CLI::IsMember(kMetrics));
  exact->add_option("--m-max", o.m_max, "GBS per-mode photon cutoff");
  exact->add_option("--squeezing", o.squeezing, "GBS squeezing r");
  exact->add_option("--out", o.out, "Output file (default stdout)");
  exact->callback([&] { action = [&] { return run_exact_dist(o, exact_kind->count() > 0); }; });

  auto* tvd = app.add_subcommand("tvd", "Empirical total variation distance");
  tvd->add_option("--samples", o.samples, "Sample file")->required();
  tvd->add_option("--dist", o.dist, "Distribution file")->required();
  tvd->callback([&] { action = [&] { return run_tvd(o); }; });

  auto* tw = app.add_subcommand("treewidth", "Decomposition width of an outcome graph");
  tw->add_option("--circuit", o.circuit, "Circuit file")->required();
  auto* tw_outcome = tw->add_option("--outcome", o.outcome, "Outcome file");
  auto* tw_worst = tw->add_flag("--worst-band", o.worst_band, "Occupy every mode");
  tw_outcome->excludes(tw_worst);
  tw->add_option("--kind", o.graph_kind, "bipartite or symmetric")->check(CLI::IsMember({"bipartite", "symmetric"}));
  tw->add_option("--kappa", o.kappa, "Use the geometric band decomposition at reach kappa * L");
  tw->add_option("--metric", o.metric, "Lattice distance")->check(CLI::IsMember(kMetrics));
  tw->add_option("--strategy", o.strategy, "Elimination heuristic")->check(CLI::IsMember({"minfill", "mindegree"}));
  tw->add_option("--zero-tol", o.zero_tol, "Entries at or below this magnitude are not edges");
  tw->add_option("--squeezing", o.squeezing, "Squeezing used for the symmetric graph");
  tw->add_option("--out", o.out, "Decomposition file (default stdout)");
  tw->callback([&] {
    if (!o.worst_band && o.outcome.empty()) throw CLI::ValidationError("treewidth", "need --outcome or --worst-band");
    action = [&] { return run_treewidth(o); };
  });

  auto* lik = app.add_subcommand("likelihood", "Log-likelihood ratio of two sample sets");
  lik->add_option("--samples-a", o.samples_a, "First sample file")->required();
  lik->add_option("--samples-b", o.samples_b, "Second sample file")->required();
  lik->add_option("--model", o.model, "Model file (circuit with kind and squeezing)")->required();
  lik->add_option("--marginal-modes", o.marginal, "Comma-separated mode list");
  lik->add_option("--engine", o.engine, "treedp or oracle")->check(CLI::IsMember(kEngines));
  lik->add_option("--squeezing", o.squeezing, "Override the model squeezing");
  lik->add_option("--floor", o.floor, "Probability floor (0 disables)");
  lik->add_flag("--per-sample", o.per_sample, "Normalize by sample counts");
  lik->add_option("--out", o.out, "Report file (default stdout)");
  lik->callback([&] { action = [&] { return run_likelihood(o); }; });

  auto* bench = app.add_subcommand("bench", "Permanent runtime table");
  bench->add_option("--family", o.family, "banded or dense")->check(CLI::IsMember({"banded", "dense"}));
  bench->add_option("--sizes", o.sizes, "Matrix sizes")->required()->delimiter(',');
  bench->add_option("--engine", o.engine, "treedp or oracle")->check(CLI::IsMember(kEngines));
  bench->add_option("--bandwidth", o.bandwidth, "Band half-width");
  bench->add_option("--seed", o.seed, "Matrix seed");
  bench->add_option("--min-seconds", o.min_seconds, "Minimum timing window per size");
  bench->add_option("--strategy", o.strategy, "Elimination heuristic")->check(CLI::IsMember({"minfill", "mindegree"}));
  bench->add_option("--out", o.out, "Output file (default stdout)");
  bench->callback([&] { action = [&] { return run_bench(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitUsage, "usage", e.what());
  }

  try {
    return action();
  } catch (const ParseError& e) {
    return fail(kExitParse, e.kind(), e.what());
  } catch (const CapExceeded& e) {
    return fail(kExitCap, e.kind(), e.what());
  } catch (const NumericalError& e) {
    return fail(kExitNumerical, e.kind(), e.what());
  } catch (const InvalidArgument& e) {
    return fail(kExitUsage, e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(kExitNumerical, "internal", e.what());
  }
}
