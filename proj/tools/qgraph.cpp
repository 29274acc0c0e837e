// qgraph: run the emulated graph algorithms on files or generated instances,
// or run a scaling sweep.
//
//   qgraph run <algo> [--file F | --gen SPEC] [--model adjacency|list]
//              [--verify] [--seed S] [--amp none|logn] [--failure-prob P/Q]
//              [--json|--csv OUT]
//   qgraph sweep --spec KEYFILE --out DIR
//
// Exit status: 0 ok, 2 verification failure, 3 parse error, 1 other errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qgraph/qgraph.hpp"

namespace {

constexpr int kExitVerify = 2;
constexpr int kExitParse = 3;

qgraph::Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return qgraph::Rational(std::stoll(text));
    return qgraph::Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw qgraph::ParseError(0, "bad fraction '" + text + "'");
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qgraph::Error("cannot write '" + path + "'");
  out << text;
}

int run_command(const std::string& algo_name, const std::string& file, const std::string& gen,
                const std::string& model_name, bool verify, std::uint64_t seed,
                const std::string& amp, const std::string& failure, const std::string& json_out,
                const std::string& csv_out, std::size_t holes, bool scatter) {
  const auto algo = qgraph::parse_algorithm(algo_name);
  const auto model = qgraph::parse_model(model_name);
  const qgraph::ListLayout layout{holes, scatter, seed};

  qgraph::Instance instance = file.empty() ? qgraph::make_instance(gen, model, seed, layout)
                                           : qgraph::read_instance_file(file, model, layout);
  qgraph::OracleConfig config;
  config.seed = seed;
  config.amplification = qgraph::parse_amplification(amp);
  config.failure_prob = parse_fraction(failure);
  config.validate();
  const qgraph::RunReport report = qgraph::run_once(instance, algo, config, verify);

  if (!json_out.empty()) {
    emit(json_out, qgraph::report_json(report).dump(2) + "\n");
  } else if (!csv_out.empty()) {
    std::ostringstream out;
    qgraph::write_csv(out, {report.row});
    emit(csv_out, out.str());
  } else {
    const auto& r = report.row;
    std::cout << qgraph::algorithm_name(r.algo) << " on n=" << r.n << " m=" << r.m << " ("
              << qgraph::model_name(r.model) << " model)\n"
              << "  answer          " << r.answer << '\n';
    if (r.oracle) std::cout << "  oracle          " << *r.oracle << '\n';
    std::cout << "  charged queries " << r.charged_queries << '\n'
              << "  raw probes      " << r.raw_probes << '\n'
              << "  phases          " << r.phases << '\n'
              << "  max depth       " << r.max_depth << '\n'
              << "  verdicts        " << r.verdict_string() << '\n';
  }
  if (!report.row.all_pass()) {
    std::cerr << "verification failed: " << report.row.verdict_string();
    if (report.row.oracle && *report.row.oracle != report.row.answer) {
      std::cerr << " (answer " << report.row.answer << ", oracle " << *report.row.oracle << ")";
    }
    std::cerr << '\n';
    return kExitVerify;
  }
  return 0;
}

int sweep_command(const std::string& spec_path, const std::string& out_dir) {
  std::ifstream in(spec_path);
  if (!in) throw qgraph::ParseError(0, "cannot open '" + spec_path + "'");
  const qgraph::SweepSpec spec = qgraph::parse_sweep_spec(in);
  const qgraph::SweepResult result = qgraph::run_sweep(spec);

  std::filesystem::create_directories(out_dir);
  std::ofstream csv(std::filesystem::path(out_dir) / "sweep.csv");
  qgraph::write_csv(csv, result.rows);
  auto fit = qgraph::fit_json(result.fit);
  fit["sweep_id"] = spec.id();
  fit["algorithm"] = qgraph::algorithm_name(spec.algorithm);
  fit["model"] = qgraph::model_name(spec.model);
  fit["density"] = spec.density;
  std::ofstream(std::filesystem::path(out_dir) / "fit.json") << fit.dump(2) << '\n';

  std::cout << "sweep " << spec.id() << ": " << result.rows.size() << " runs\n"
            << "  fitted slope    " << result.fit.slope << '\n'
            << "  predicted slope " << result.fit.predicted << '\n'
            << "  rms residual    " << result.fit.residual << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emulated quantum graph algorithms with a query-cost ledger"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one algorithm on one instance");
  std::string algo, file, gen, model = "list", amp = "none", failure = "0", json_out, csv_out;
  bool verify = false;
  bool scatter = false;
  std::uint64_t seed = 1;
  std::size_t holes = 0;
  run->add_option("algo", algo, "layers | bipartite | general | flow")->required();
  auto* file_opt = run->add_option("--file", file, "Instance file (G or N format)");
  auto* gen_opt = run->add_option("--gen", gen, "Generator spec, e.g. k33 or network:10,20,3");
  file_opt->excludes(gen_opt);
  run->add_option("--model", model, "adjacency | list")->capture_default_str();
  run->add_flag("--verify", verify, "Compare against a classical oracle");
  run->add_option("--seed", seed, "Seed for generators and search randomness")->capture_default_str();
  run->add_option("--amp", amp, "none | logn")->capture_default_str();
  run->add_option("--failure-prob", failure, "Chance a search drops one result, at most 1/3")
      ->capture_default_str();
  run->add_option("--holes", holes, "Holes appended to every list-model array");
  run->add_flag("--scatter-holes", scatter, "Interleave holes at seeded positions");
  auto* json_opt = run->add_option("--json", json_out, "Write a JSON report ('-' for stdout)");
  auto* csv_opt = run->add_option("--csv", csv_out, "Write a CSV row ('-' for stdout)");
  json_opt->excludes(csv_opt);

  auto* sweep = app.add_subcommand("sweep", "Run a scaling sweep from a key file");
  std::string spec_path, out_dir;
  sweep->add_option("--spec", spec_path, "Key file with key = value lines")->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (run->parsed()) {
      if (file.empty() && gen.empty()) {
        std::cerr << "run needs --file or --gen\n";
        return kExitParse;
      }
      return run_command(algo, file, gen, model, verify, seed, amp, failure, json_out, csv_out, holes, scatter);
    }
    return sweep_command(spec_path, out_dir);
  } catch (const qgraph::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const qgraph::InvalidGraph& e) {
    std::cerr << "invalid instance: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
