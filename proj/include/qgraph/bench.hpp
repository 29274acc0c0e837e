#pragma once

// Single runs with invariant verdicts, scaling sweeps and log-log exponent
// fits. Everything here is deterministic given the inputs: rows carry no
// timings and sweeps are written in grid order whatever the job count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "qgraph/baselines.hpp"
#include "qgraph/bipartite_matching.hpp"
#include "qgraph/general_matching.hpp"
#include "qgraph/generators.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/layered_bfs.hpp"
#include "qgraph/max_flow.hpp"

namespace qgraph {

enum class Algorithm : std::uint8_t { Layers, Bipartite, General, Flow };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Layers: return "layers";
    case Algorithm::Bipartite: return "bipartite";
    case Algorithm::General: return "general";
    case Algorithm::Flow: return "flow";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "layers") return Algorithm::Layers;
  if (s == "bipartite") return Algorithm::Bipartite;
  if (s == "general") return Algorithm::General;
  if (s == "flow") return Algorithm::Flow;
  throw ContractViolation("unknown algorithm '" + s + "'");
}

inline Model parse_model(const std::string& s) {
  if (s == "adjacency") return Model::Adjacency;
  if (s == "list") return Model::List;
  throw ContractViolation("unknown model '" + s + "'");
}

inline Amplification parse_amplification(const std::string& s) {
  if (s == "none") return Amplification::None;
  if (s == "logn") return Amplification::LogN;
  throw ContractViolation("unknown amplification '" + s + "'");
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::uint64_t to_count(const std::string& s) {
  std::size_t pos = 0;
  const auto v = std::stoull(s, &pos);
  if (pos != s.size()) throw ContractViolation("not a count: '" + s + "'");
  return v;
}

inline double to_real(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw ContractViolation("not a number: '" + s + "'");
  return v;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

}  // namespace detail

/// Builds an instance from a short generator spec:
///   k33 | petersen | knm:a,b | bipartite:n1,n2,p | gnp:n,p | path:n |
///   cycle:n | complete:n | star:k | digraph:n,m | network:n,m,U |
///   majority:p,extra
inline Instance make_instance(const std::string& spec, Model model, std::uint64_t seed,
                              ListLayout layout = {}) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<std::string>{}
                                               : detail::split(spec.substr(colon + 1), ',');
  auto need = [&](std::size_t count) {
    if (args.size() != count) {
      throw ContractViolation("generator '" + name + "' takes " + std::to_string(count) +
                              " arguments");
    }
  };
  auto count = [&](std::size_t i) { return static_cast<std::size_t>(detail::to_count(args[i])); };
  auto relayout = [&](const BlackBoxGraph& g) { return g.with_model(model, layout); };

  if (name == "k33") return relayout(complete_bipartite(3, 3));
  if (name == "petersen") return relayout(petersen_graph());
  if (name == "knm") { need(2); return relayout(complete_bipartite(count(0), count(1))); }
  if (name == "path") { need(1); return relayout(path_graph(count(0))); }
  if (name == "cycle") { need(1); return relayout(cycle_graph(count(0))); }
  if (name == "complete") { need(1); return relayout(complete_graph(count(0))); }
  if (name == "star") { need(1); return relayout(star_graph(count(0))); }
  if (name == "bipartite") {
    need(3);
    return gen_random_bipartite(count(0), count(1), detail::to_real(args[2]), seed, model, layout);
  }
  if (name == "gnp") { need(2); return gen_random_graph(count(0), detail::to_real(args[1]), seed, model, layout); }
  if (name == "digraph") { need(2); return gen_random_digraph(count(0), count(1), seed, model, layout); }
  if (name == "network") {
    need(3);
    return gen_random_network(count(0), count(1), static_cast<std::int64_t>(count(2)), seed, model, layout);
  }
  if (name == "majority") {
    need(2);
    return gen_majority_hard_instance(count(0), static_cast<int>(count(1)), seed, model, layout);
  }
  throw ContractViolation("unknown generator '" + name + "'");
}

/// One CSV row. charged_queries is kept as an exact rational string.
struct RunRecord {
  std::string sweep_id;
  Algorithm algo = Algorithm::Layers;
  Model model = Model::List;
  std::size_t n = 0;
  std::size_t m = 0;
  std::int64_t U = 0;
  std::uint64_t seed = 0;
  std::int64_t answer = 0;
  std::optional<std::int64_t> oracle;
  std::string charged_queries;
  double charged = 0.0;
  std::uint64_t raw_probes = 0;
  std::size_t phases = 0;
  std::size_t max_depth = 0;
  std::vector<std::pair<std::string, bool>> verdicts;

  bool all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.second; });
  }
  std::string verdict_string() const {
    std::string out;
    for (const auto& [name, ok] : verdicts) {
      if (!out.empty()) out += ';';
      out += name + (ok ? "=pass" : "=FAIL");
    }
    return out;
  }
};

struct RunReport {
  RunRecord row;
  QueryLedger ledger;
  nlohmann::json detail;
};

inline const char* kCsvHeader =
    "sweep_id,algo,model,n,m,U,seed,answer,oracle,charged_queries,raw_probes,phases,max_depth,verdicts";

inline std::string csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << r.sweep_id << ',' << algorithm_name(r.algo) << ',' << model_name(r.model) << ',' << r.n
      << ',' << r.m << ',' << r.U << ',' << r.seed << ',' << r.answer << ','
      << (r.oracle ? std::to_string(*r.oracle) : std::string()) << ',' << r.charged_queries << ','
      << r.raw_probes << ',' << r.phases << ',' << r.max_depth << ',' << r.verdict_string();
  return out.str();
}

inline nlohmann::json ledger_json(const QueryLedger& ledger) {
  nlohmann::json breakdown = nlohmann::json::array();
  for (std::size_t i = 0; i < kPrimitiveCount; ++i) {
    const auto& e = ledger.breakdown()[i];
    breakdown.push_back({{"primitive", std::string(primitive_name(static_cast<Primitive>(i)))},
                         {"calls", e.calls},
                         {"units", e.units}});
  }
  return {{"charged_queries", to_string(ledger.charged_queries())},
          {"raw_probes", ledger.raw_probes()},
          {"amplification", ledger.amplification()},
          {"cost_constant", to_string(ledger.cost_constant())},
          {"breakdown", breakdown}};
}

namespace detail {

inline void fill_ledger(RunReport& report, const QueryLedger& ledger) {
  RunRecord& row = report.row;
  report.ledger = ledger;
  row.charged_queries = to_string(ledger.charged_queries());
  row.charged = ledger.charged_as_double();
  row.raw_probes = ledger.raw_probes();
}

inline std::int64_t matching_oracle(const BlackBoxGraph& g) {
  if (g.vertex_count() <= 16) return brute_force_max_matching(g).value;
  return reference_max_matching(g).value;
}

}  // namespace detail

/// Runs one algorithm on one instance and evaluates its invariants. With
/// verify set the answer is compared against a classical oracle.
inline RunReport run_once(const Instance& instance, Algorithm algo, const OracleConfig& config,
                          bool verify) {
  RunReport report;
  RunRecord& row = report.row;
  row.algo = algo;
  row.seed = config.seed;
  auto& verdicts = row.verdicts;

  if (algo == Algorithm::Flow) {
    const auto* net = std::get_if<IntegerNetwork>(&instance);
    if (!net) throw ContractViolation("flow needs a network instance");
    row.model = net->model();
    row.n = net->vertex_count();
    row.m = net->arc_count();
    row.U = net->capacity_bound();
    const FlowResult result = max_flow_integer(*net, config);
    detail::fill_ledger(report, result.ledger);
    row.answer = result.flow.value;
    row.phases = result.phases.size();
    for (const auto& p : result.phases) row.max_depth = std::max<std::size_t>(row.max_depth, p.depth);

    bool valid = true;
    try {
      result.flow.validate(*net);
    } catch (const ContractViolation&) {
      valid = false;
    }
    verdicts.emplace_back("valid", valid);
    bool monotone = true;
    std::uint32_t last = 0;
    std::size_t degree_violations = 0;
    for (const auto& p : result.phases) {
      if (p.mode == PhaseMode::BlockingFlow) {
        monotone = monotone && p.depth > last;
        last = p.depth;
      }
      degree_violations += p.degree_violations;
    }
    verdicts.emplace_back("depth", monotone);
    verdicts.emplace_back("blocking_phases", result.blocking_phases <= result.k);
    verdicts.emplace_back("degree", degree_violations == 0);
    if (verify) {
      row.oracle = edmonds_karp(*net).value;
      verdicts.emplace_back("oracle", *row.oracle == row.answer);
      bool lemma = true;
      for (const auto& v : residual_bound_check(*net, result.phases, *row.oracle)) lemma = lemma && v.pass;
      verdicts.emplace_back("residual", lemma);
    }
    nlohmann::json phases = nlohmann::json::array();
    for (const auto& p : result.phases) {
      phases.push_back({{"index", p.index},
                        {"mode", phase_mode_name(p.mode)},
                        {"depth", p.depth},
                        {"flow_before", p.flow_before},
                        {"flow_added", p.flow_added},
                        {"paths", p.paths},
                        {"units", p.units},
                        {"disabled", p.disabled},
                        {"degree_checks", p.degree_checks},
                        {"degree_violations", p.degree_violations}});
    }
    report.detail = {{"k", result.k},
                     {"blocking_phases", result.blocking_phases},
                     {"single_iterations", result.single_iterations},
                     {"switch_depth", result.switch_depth},
                     {"dyadic_constant", result.dyadic_constant},
                     {"phases", phases}};
  } else {
    const auto* g = std::get_if<BlackBoxGraph>(&instance);
    if (!g) throw ContractViolation(std::string(algorithm_name(algo)) + " needs a graph instance");
    row.model = g->model();
    row.n = g->vertex_count();
    row.m = g->edge_count();
    row.U = 0;

    if (algo == Algorithm::Layers) {
      QuantumEmulator quantum(config, g->vertex_count());
      const LayerAssignment layers = assign_layers(*g, 0, quantum);
      detail::fill_ledger(report, quantum.ledger());
      row.answer = static_cast<std::int64_t>(layers.reached_count());
      row.phases = 1;
      for (std::size_t v = 0; v < layers.layer.size(); ++v) {
        if (layers.reached(static_cast<Vertex>(v))) {
          row.max_depth = std::max<std::size_t>(row.max_depth, layers.layer[v]);
        }
      }
      const bool once = std::all_of(layers.times_processed.begin(), layers.times_processed.end(),
                                    [](std::uint32_t c) { return c <= 1; });
      verdicts.emplace_back("once", once);
      if (verify) {
        const auto dist = classical_bfs(*g, 0);
        row.oracle = static_cast<std::int64_t>(
            std::count_if(dist.begin(), dist.end(), [](std::uint32_t d) { return d != kUnreached; }));
        verdicts.emplace_back("oracle", dist == layers.layer);
      }
      report.detail = {{"start", 0}, {"layers", layers.layer}};
    } else if (algo == Algorithm::Bipartite) {
      const BipartiteResult result = max_bipartite_matching(*g, config);
      detail::fill_ledger(report, result.ledger);
      row.answer = static_cast<std::int64_t>(result.matching.size());
      row.phases = result.report.iterations.size();
      bool monotone = true;
      std::uint32_t last = 0;
      nlohmann::json iterations = nlohmann::json::array();
      for (const auto& it : result.report.iterations) {
        monotone = monotone && it.path_length > last;
        last = it.path_length;
        row.max_depth = std::max<std::size_t>(row.max_depth, it.path_length);
        iterations.push_back({{"paths", it.paths_found},
                              {"path_length", it.path_length},
                              {"matching_size", it.matching_size},
                              {"units", it.units}});
      }
      const std::size_t bound = ceil_sqrt(4 * row.n) + 1;  // ceil(2 sqrt n) + 1
      verdicts.emplace_back("iterations", row.phases <= bound);
      verdicts.emplace_back("monotone", monotone);
      verdicts.emplace_back("visits", result.report.max_visits <= 1);
      if (verify) {
        row.oracle = detail::matching_oracle(*g);
        verdicts.emplace_back("oracle", *row.oracle == row.answer);
      }
      report.detail = {{"iterations", iterations}, {"pairs", nlohmann::json::array()}};
      for (const Edge& e : result.matching.pairs()) report.detail["pairs"].push_back({e.u, e.v});
    } else {
      const GeneralResult result = max_general_matching(*g, config);
      detail::fill_ledger(report, result.ledger);
      row.answer = static_cast<std::int64_t>(result.matching.size());
      row.phases = result.report.phases.size();
      bool counters = true;
      nlohmann::json phases = nlohmann::json::array();
      for (const auto& p : result.report.phases) {
        const auto& c = p.counters;
        counters = counters && c.sum_e <= c.even && c.sum_b <= c.even && c.sum_r <= c.even &&
                   c.insertions <= 2ull * c.even;
        row.max_depth = std::max(row.max_depth, p.path_edges);
        phases.push_back({{"start", p.start},
                          {"augmented", p.augmented},
                          {"path_edges", p.path_edges},
                          {"even", c.even},
                          {"blossoms", c.blossoms.size()},
                          {"units", p.units}});
      }
      verdicts.emplace_back("counters", counters);
      verdicts.emplace_back("starts", row.phases <= row.n);
      if (verify) {
        row.oracle = detail::matching_oracle(*g);
        verdicts.emplace_back("oracle", *row.oracle == row.answer);
      }
      report.detail = {{"phases", phases}, {"pairs", nlohmann::json::array()}};
      for (const Edge& e : result.matching.pairs()) report.detail["pairs"].push_back({e.u, e.v});
    }
  }
  return report;
}

inline nlohmann::json report_json(const RunReport& report) {
  const RunRecord& r = report.row;
  nlohmann::json out = {{"algo", algorithm_name(r.algo)},
                        {"model", model_name(r.model)},
                        {"n", r.n},
                        {"m", r.m},
                        {"U", r.U},
                        {"seed", r.seed},
                        {"answer", r.answer},
                        {"charged_queries", r.charged_queries},
                        {"raw_probes", r.raw_probes},
                        {"phases", r.phases},
                        {"max_depth", r.max_depth},
                        {"verdicts", r.verdict_string()},
                        {"detail", report.detail}};
  if (r.oracle) out["oracle"] = *r.oracle;
  out["ledger"] = ledger_json(report.ledger);
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepSpec {
  Algorithm algorithm = Algorithm::Layers;
  Model model = Model::List;
  std::vector<std::size_t> sizes;
  /// dense | m=<c>n | m=n^<a> | p=<prob>
  std::string density = "dense";
  std::int64_t U = 1;
  std::size_t seeds = 1;
  std::uint64_t base_seed = 1;
  Amplification amp = Amplification::None;
  std::size_t jobs = 1;
  bool verify = false;

  void validate() const {
    if (sizes.size() < 3) throw ContractViolation("a sweep needs at least 3 grid points");
    if (seeds < 1) throw ContractViolation("a sweep needs at least one seed");
    if (U < 1) throw ContractViolation("U must be at least 1");
  }

  std::string canonical() const {
    std::ostringstream out;
    out << algorithm_name(algorithm) << '|' << model_name(model) << '|';
    for (std::size_t n : sizes) out << n << ',';
    out << '|' << density << '|' << U << '|' << seeds << '|' << base_seed << '|'
        << (amp == Amplification::LogN ? "logn" : "none") << '|' << verify;
    return out.str();
  }
  std::string id() const { return detail::hex(detail::fnv1a(canonical())); }
};

/// Parses flat `key = value` lines; '#' starts a comment.
inline SweepSpec parse_sweep_spec(std::istream& in) {
  SweepSpec spec;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    try {
      if (key == "algorithm") spec.algorithm = parse_algorithm(value);
      else if (key == "model") spec.model = parse_model(value);
      else if (key == "sizes") {
        spec.sizes.clear();
        for (const auto& s : detail::split(value, ',')) spec.sizes.push_back(detail::to_count(detail::trim(s)));
      } else if (key == "density") spec.density = value;
      else if (key == "U") spec.U = static_cast<std::int64_t>(detail::to_count(value));
      else if (key == "seeds") spec.seeds = detail::to_count(value);
      else if (key == "base_seed") spec.base_seed = detail::to_count(value);
      else if (key == "amp") spec.amp = parse_amplification(value);
      else if (key == "jobs") spec.jobs = std::max<std::size_t>(1, detail::to_count(value));
      else if (key == "verify") spec.verify = value == "true" || value == "1" || value == "yes";
      else throw ParseError(number, "unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(number, e.what());
    }
  }
  spec.validate();
  return spec;
}

/// Edge budget implied by the density rule, for pairs possible edges.
inline std::size_t density_edges(const std::string& rule, std::size_t n, std::size_t pairs) {
  double m = 0;
  if (rule == "dense") {
    m = static_cast<double>(pairs) / 2.0;
  } else if (rule.rfind("p=", 0) == 0) {
    m = detail::to_real(rule.substr(2)) * static_cast<double>(pairs);
  } else if (rule.rfind("m=n^", 0) == 0) {
    m = std::pow(static_cast<double>(n), detail::to_real(rule.substr(4)));
  } else if (rule.rfind("m=", 0) == 0 && rule.back() == 'n') {
    m = detail::to_real(rule.substr(2, rule.size() - 3)) * static_cast<double>(n);
  } else {
    throw ContractViolation("unknown density rule '" + rule + "'");
  }
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(m)), 1, pairs);
}

/// Exponent α of m ~ n^α under a density rule.
inline double density_exponent(const std::string& rule) {
  if (rule == "dense" || rule.rfind("p=", 0) == 0) return 2.0;
  if (rule.rfind("m=n^", 0) == 0) return detail::to_real(rule.substr(4));
  return 1.0;
}

/// Exponent of n in the proven cost bound under the density rule, log
/// factors dropped.
inline double predicted_slope(Algorithm algo, Model model, const std::string& density) {
  const double a = model == Model::Adjacency ? 2.0 : density_exponent(density);
  switch (algo) {
    case Algorithm::Layers: return model == Model::Adjacency ? 1.5 : (1.0 + a) / 2.0;
    case Algorithm::Bipartite: return model == Model::Adjacency ? 2.0 : 1.0 + std::max(a, 1.0) / 2.0;
    case Algorithm::General: return model == Model::Adjacency ? 2.5 : 1.5 + std::max(a, 1.0) / 2.0;
    case Algorithm::Flow:
      return model == Model::Adjacency ? 13.0 / 6.0 : std::min(7.0 / 6.0 + a / 2.0, 0.5 + a);
  }
  return 0.0;
}

/// Instance for one sweep point.
inline Instance sweep_instance(const SweepSpec& spec, std::size_t n, std::uint64_t seed) {
  switch (spec.algorithm) {
    case Algorithm::Layers: {
      const std::size_t m = density_edges(spec.density, n, n * (n - 1));
      return gen_random_digraph(n, m, seed, spec.model);
    }
    case Algorithm::Bipartite: {
      const std::size_t n1 = n / 2;
      const std::size_t n2 = n - n1;
      const double p = spec.density == "dense"
                           ? 0.5
                           : static_cast<double>(density_edges(spec.density, n, n1 * n2)) /
                                 static_cast<double>(n1 * n2);
      return gen_random_bipartite(n1, n2, p, seed, spec.model);
    }
    case Algorithm::General: {
      const std::size_t pairs = n * (n - 1) / 2;
      const double p = spec.density == "dense"
                           ? 0.5
                           : static_cast<double>(density_edges(spec.density, n, pairs)) /
                                 static_cast<double>(pairs);
      return gen_random_graph(n, p, seed, spec.model);
    }
    case Algorithm::Flow: {
      const std::size_t pairs = n * (n - 1) / 2;
      const std::size_t m = std::max(n - 1, density_edges(spec.density, n, pairs));
      return gen_random_network(n, m, spec.U, seed, spec.model);
    }
  }
  throw ContractViolation("unknown algorithm");
}

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit in natural-log units.
  double residual = 0.0;
  double predicted = 0.0;
  std::vector<std::size_t> sizes;
  std::vector<double> medians;
};

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw ContractViolation("median of nothing");
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : (xs[h - 1] + xs[h]) / 2.0;
}

/// Least-squares line through (ln x, ln y).
inline FitResult fit_loglog(const std::vector<std::size_t>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw ContractViolation("fit needs two or more points");
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = std::log(static_cast<double>(xs[i]));
    const double y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  FitResult fit;
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / k;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = std::log(ys[i]) - (fit.intercept + fit.slope * std::log(static_cast<double>(xs[i])));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / k);
  fit.sizes = xs;
  fit.medians = ys;
  return fit;
}

struct SweepResult {
  std::vector<RunRecord> rows;
  FitResult fit;
};

/// Runs every (size, seed) point, up to spec.jobs at a time. Throws when a
/// verified run disagrees with its oracle or fails an invariant.
inline SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  struct Task {
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t n : spec.sizes) {
    for (std::size_t s = 0; s < spec.seeds; ++s) tasks.push_back({n, spec.base_seed + s});
  }
  std::vector<RunRecord> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_lock;
  std::string error;
  const std::string id = spec.id();

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const Instance inst = sweep_instance(spec, tasks[i].n, tasks[i].seed);
        OracleConfig config;
        config.seed = tasks[i].seed;
        config.amplification = spec.amp;
        RunRecord row = run_once(inst, spec.algorithm, config, spec.verify).row;
        row.sweep_id = id;
        row.seed = tasks[i].seed;
        rows[i] = std::move(row);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_lock);
        if (error.empty()) error = e.what();
      }
    }
  };
  const std::size_t jobs = std::min(spec.jobs, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (!error.empty()) throw Error("sweep aborted: " + error);

  SweepResult result;
  std::vector<double> medians;
  for (std::size_t n : spec.sizes) {
    std::vector<double> costs;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].n == n) costs.push_back(rows[i].charged);
    }
    medians.push_back(median(costs));
  }
  for (const auto& row : rows) {
    if (spec.verify && !row.all_pass()) {
      throw Error("sweep aborted: verification failed at n=" + std::to_string(row.n) +
                  " seed=" + std::to_string(row.seed) + " (" + row.verdict_string() + ")");
    }
  }
  result.rows = std::move(rows);
  result.fit = fit_loglog(spec.sizes, medians);
  result.fit.predicted = predicted_slope(spec.algorithm, spec.model, spec.density);
  return result;
}

inline void write_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

inline nlohmann::json fit_json(const FitResult& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"residual", fit.residual},
          {"predicted", fit.predicted},
          {"sizes", fit.sizes},
          {"medians", fit.medians}};
}

}  // namespace qgraph
