#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padicreg/checks.hpp"
#include "padicreg/dataset.hpp"
#include "padicreg/errors.hpp"
#include "padicreg/graph.hpp"
#include "padicreg/padic.hpp"
#include "padicreg/rational.hpp"
#include "padicreg/reduction.hpp"
#include "padicreg/solvers.hpp"
#include "padicreg/sweep.hpp"

using namespace padicreg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

Dataset load_dataset(const std::string& path, std::optional<std::int64_t> prime_override) {
  Dataset dataset = read_dataset_file(path);
  if (prime_override && *prime_override != dataset.prime()) {
    return Dataset(dataset.dimension(), *prime_override, dataset.points());
  }
  return dataset;
}

void print_solve_result(const SolveResult& result) {
  std::cout << "method " << result.method << '\n'
            << "beta " << to_string(std::span<const Rational>(result.beta)) << '\n'
            << "loss " << to_string(result.loss) << '\n'
            << "candidates " << result.candidates_examined << '\n';
}

int run_eval(const std::string& data_path, const std::string& beta_literal,
             const std::string& aggregation, std::optional<std::int64_t> prime_override) {
  const Dataset dataset = load_dataset(data_path, prime_override);
  const std::vector<Rational> beta = parse_rational_vector(beta_literal);
  if (beta.size() != dataset.dimension()) {
    throw std::invalid_argument("beta has " + std::to_string(beta.size()) +
                                " coordinates, dataset dimension is " +
                                std::to_string(dataset.dimension()));
  }
  const Rational loss =
      aggregation == "max" ? eval_loss_max(dataset, beta) : eval_loss_sum(dataset, beta);
  std::cout << "loss " << to_string(loss) << '\n';
  std::cout << "valuations";
  for (const DataPoint& point : dataset.points()) {
    const ExtendedValuation v = valuation(eval_residual(point, beta), dataset.prime());
    if (v.is_infinity()) {
      std::cout << " inf";
    } else {
      std::cout << ' ' << v.value();
    }
  }
  std::cout << '\n';
  return kExitOk;
}

int run_solve(const std::string& data_path, const std::string& method,
              std::optional<std::int64_t> prime_override, const SolverOptions& options) {
  const Dataset dataset = load_dataset(data_path, prime_override);
  if (method == "binary") {
    print_solve_result(solve_binary(dataset, options));
    return kExitOk;
  }
  if (method == "enum") {
    print_solve_result(solve_enum(dataset, options));
    return kExitOk;
  }
  const SolveResult binary = solve_binary(dataset, options);
  const SolveResult enumerated = solve_enum(dataset, options);
  print_solve_result(binary);
  print_solve_result(enumerated);
  std::cout << "agree " << (binary.loss == enumerated.loss ? "true" : "false") << '\n';
  return kExitOk;
}

int run_reduce(const std::string& graph_path, const std::string& out_path,
               std::optional<std::size_t> M_override) {
  const Graph graph = read_graph_file(graph_path);
  const ReductionInstance instance = build_reduction(graph, M_override);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + out_path);
  write_reduction(out, instance, graph_path);
  out.close();
  if (!out) throw ParseError("failed writing output file: " + out_path);
  std::cout << "n " << graph.vertex_count() << '\n'
            << "m " << graph.edge_count() << '\n'
            << "M " << instance.M << '\n'
            << "points " << instance.dataset.size() << '\n';
  return kExitOk;
}

int run_roundtrip(const std::string& graph_path, const SolverOptions& options) {
  const Graph graph = read_graph_file(graph_path);
  const RoundtripReport report = verify_roundtrip(graph, options);
  std::cout << "maxcut " << report.maxcut << '\n'
            << "loss_binary " << to_string(report.loss_binary) << '\n';
  if (report.loss_enum) {
    std::cout << "loss_enum " << to_string(*report.loss_enum) << '\n';
  } else {
    std::cout << "loss_enum skipped\n";
  }
  std::cout << "recovered " << report.recovered << '\n'
            << "all_equal " << (report.all_equal ? "true" : "false") << '\n';
  return report.all_equal ? kExitOk : kExitMismatch;
}

int run_sweep(const std::string& graph_path, const std::string& out_path, std::size_t from,
              std::size_t to, const SolverOptions& options) {
  const Graph graph = read_graph_file(graph_path);
  const std::vector<SweepRecord> records =
      from > to ? std::vector<SweepRecord>{} : padicreg::run_sweep(graph, from, to, options);
  std::ostringstream csv;
  write_sweep_csv(csv, records);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + out_path);
  out << csv.str();
  out.close();
  if (!out) throw ParseError("failed writing output file: " + out_path);
  std::cout << "rows " << records.size() << '\n';
  return kExitOk;
}

int run_check(std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) {
    std::cerr << "warning: --trials 0 leaves only the fixed cases; random suites are vacuous\n";
  }
  bool all_passed = true;
  for (const SuiteResult& suite : run_all_checks(trials, seed)) {
    if (suite.passed()) {
      std::cout << suite.name << ": pass (" << suite.checks_run << " checks)\n";
    } else {
      all_passed = false;
      std::cout << suite.name << ": fail (" << suite.failures << " of " << suite.checks_run
                << " checks)\n";
      std::cout << "counterexample: " << suite.counterexample << '\n';
    }
  }
  std::cout << (all_passed ? "all checks passed\n" : "checks failed\n");
  return all_passed ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact p-adic linear regression, max cut, and the reduction between them"};
  app.require_subcommand(1);

  std::string data_path, graph_path, out_path, beta_literal;
  std::string aggregation = "sum";
  std::string method = "binary";
  std::int64_t prime = 2;
  std::uint64_t M_override = 0;
  std::uint64_t sweep_from = 0, sweep_to = 0;
  std::uint64_t trials = 1000, seed = 0;
  std::uint64_t cap_binary = SolverOptions{}.binary_cap;
  std::uint64_t cap_enum = SolverOptions{}.enum_cap;

  auto add_cap_flags = [&](CLI::App* cmd) {
    cmd->add_option("--cap-binary", cap_binary, "Vertex/dimension cap for the 2^n solver");
    cmd->add_option("--cap-enum", cap_enum, "Dimension cap for the subset enumeration solver");
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate the exact loss of a model on a dataset");
  eval->add_option("data", data_path, "Dataset file")->required();
  eval->add_option("--beta", beta_literal, "Comma-separated rational coefficients")->required();
  eval->add_option("--agg", aggregation, "Loss aggregation")
      ->check(CLI::IsMember({"sum", "max"}));
  eval->add_option("--p", prime, "Prime overriding the dataset header");

  CLI::App* solve = app.add_subcommand("solve", "Minimize the sum loss exactly");
  solve->add_option("data", data_path, "Dataset file")->required();
  solve->add_option("--method", method, "Solver")
      ->check(CLI::IsMember({"binary", "enum", "both"}));
  solve->add_option("--p", prime, "Prime overriding the dataset header");
  add_cap_flags(solve);

  CLI::App* reduce = app.add_subcommand("reduce", "Build the 2-adic instance of a graph");
  reduce->add_option("graph", graph_path, "Graph file")->required();
  reduce->add_option("out", out_path, "Output dataset file")->required();
  reduce->add_option("--M", M_override,
                     "Forcing multiplicity override (canonical is m + 1)");

  CLI::App* roundtrip =
      app.add_subcommand("roundtrip", "Check max cut against the recovered cut size");
  roundtrip->add_option("graph", graph_path, "Graph file")->required();
  add_cap_flags(roundtrip);

  CLI::App* sweep = app.add_subcommand("sweep", "Solve across a forcing multiplicity range");
  sweep->add_option("graph", graph_path, "Graph file")->required();
  sweep->add_option("out", out_path, "Output CSV file")->required();
  sweep->add_option("--from", sweep_from, "First M value")->required();
  sweep->add_option("--to", sweep_to, "Last M value")->required();
  add_cap_flags(sweep);

  CLI::App* check = app.add_subcommand("check", "Run the property suites");
  check->add_option("--trials", trials, "Random trials per suite");
  check->add_option("--seed", seed, "Base seed for the random trials");

  try {
    app.parse(argc, argv);

    SolverOptions options;
    options.binary_cap = cap_binary;
    options.enum_cap = cap_enum;
    for (CLI::App* cmd : {solve, roundtrip, sweep}) {
      if (cmd->count("--cap-binary") > 0) {
        std::cerr << "warning: binary solver cap overridden to " << cap_binary
                  << "; runtime grows as 2^n\n";
      }
      if (cmd->count("--cap-enum") > 0) {
        std::cerr << "warning: enumeration solver cap overridden to " << cap_enum
                  << "; runtime grows as C(m, n)\n";
      }
    }

    std::optional<std::int64_t> prime_override;
    for (CLI::App* cmd : {eval, solve}) {
      if (cmd->count("--p") > 0) {
        require_prime(prime);
        prime_override = prime;
      }
    }

    if (eval->parsed()) return run_eval(data_path, beta_literal, aggregation, prime_override);
    if (solve->parsed()) return run_solve(data_path, method, prime_override, options);
    if (reduce->parsed()) {
      std::optional<std::size_t> override_value;
      if (reduce->count("--M") > 0) override_value = static_cast<std::size_t>(M_override);
      return run_reduce(graph_path, out_path, override_value);
    }
    if (roundtrip->parsed()) return run_roundtrip(graph_path, options);
    if (sweep->parsed()) {
      return run_sweep(graph_path, out_path, static_cast<std::size_t>(sweep_from),
                       static_cast<std::size_t>(sweep_to), options);
    }
    if (check->parsed()) return run_check(trials, seed);
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
