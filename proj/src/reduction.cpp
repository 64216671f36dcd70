#include "padicreg/reduction.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "padicreg/padic.hpp"

namespace padicreg {

namespace {

void require_dimension(const ReductionInstance& instance, std::span<const Rational> beta) {
  if (beta.size() != instance.source.vertex_count()) {
    throw std::invalid_argument("beta length " + std::to_string(beta.size()) +
                                " does not match vertex count " +
                                std::to_string(instance.source.vertex_count()));
  }
}

}  // namespace

ReductionInstance build_reduction(const Graph& graph, std::optional<std::size_t> M_override) {
  const std::size_t n = graph.vertex_count();
  const std::size_t m = graph.edge_count();
  const std::size_t M = M_override.value_or(m + 1);
  const bool canonical = (M == m + 1);

  std::vector<DataPoint> points;
  points.reserve(m + 2 * M * n);
  const Rational zero(0);
  const Rational one(1);

  for (const auto& [u, v] : graph.edges()) {
    DataPoint point;
    point.x.assign(n, zero);
    point.x[u] = 1;
    point.x[v] = 1;
    point.y = one;
    points.push_back(std::move(point));
  }
  for (std::size_t j = 0; j < n; ++j) {
    DataPoint forcing;
    forcing.x.assign(n, zero);
    forcing.x[j] = 1;
    forcing.y = zero;
    for (std::size_t c = 0; c < M; ++c) points.push_back(forcing);
    forcing.y = one;
    for (std::size_t c = 0; c < M; ++c) points.push_back(forcing);
  }

  ReductionInstance instance{Dataset(n, 2, std::move(points)), graph, M, canonical, {}};
  instance.vertex_coordinate.resize(n);
  for (std::size_t j = 0; j < n; ++j) instance.vertex_coordinate[j] = j;
  return instance;
}

LossBreakdown total_loss(const ReductionInstance& instance, std::span<const Rational> beta) {
  require_dimension(instance, beta);
  LossBreakdown out{Rational(0), Rational(0), Rational(0)};
  Rational term;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    out.forcing += magnitude_to_rational(valuation(beta[j], 2), 2);
    term = beta[j] - 1;
    out.forcing += magnitude_to_rational(valuation(term, 2), 2);
  }
  out.forcing *= static_cast<unsigned long>(instance.M);
  for (const auto& [u, v] : instance.source.edges()) {
    term = 1 - beta[u] - beta[v];
    out.edge += magnitude_to_rational(valuation(term, 2), 2);
  }
  out.total = out.forcing + out.edge;
  return out;
}

Assignment round_beta(std::span<const Rational> beta) {
  Assignment colours(beta.size(), 0);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const ExtendedValuation v = valuation(beta[j], 2);
    if (v < ExtendedValuation::finite(0)) {
      throw std::domain_error("coordinate " + std::to_string(j) + " = " + to_string(beta[j]) +
                              " has |.|_2 > 1 and cannot be rounded");
    }
    colours[j] = static_cast<std::uint8_t>(first_digit(beta[j], 2));
  }
  return colours;
}

std::size_t recover_cutsize(const ReductionInstance& instance, const Rational& optimal_loss) {
  if (!instance.canonical) {
    throw std::domain_error("cut size recovery requires the canonical multiplicity M = m + 1, "
                            "instance has M = " + std::to_string(instance.M));
  }
  const std::size_t n = instance.source.vertex_count();
  const std::size_t m = instance.source.edge_count();
  Rational value(static_cast<unsigned long>(instance.M));
  value *= static_cast<unsigned long>(n);
  value += static_cast<unsigned long>(m);
  value -= optimal_loss;
  if (value.get_den() != 1 || sgn(value) < 0 || cmp(value, static_cast<unsigned long>(m)) > 0) {
    throw std::domain_error("recovered value " + to_string(value) + " is not an integer in [0, " +
                            std::to_string(m) + "]; the supplied loss is not the optimum of a "
                            "canonical instance");
  }
  return static_cast<std::size_t>(value.get_num().get_ui());
}

RoundtripReport verify_roundtrip(const Graph& graph, const SolverOptions& options) {
  const ReductionInstance instance = build_reduction(graph);
  const MaxCutResult cut = maxcut_bruteforce(graph, options.binary_cap);
  const SolveResult binary = solve_binary(instance.dataset, options);

  RoundtripReport report;
  report.maxcut = cut.cut;
  report.loss_binary = binary.loss;
  if (graph.vertex_count() <= options.enum_cap) {
    report.loss_enum = solve_enum(instance.dataset, options).loss;
  }
  report.recovered = recover_cutsize(instance, binary.loss);
  report.all_equal = report.recovered == report.maxcut &&
                     (!report.loss_enum || *report.loss_enum == report.loss_binary);
  return report;
}

void write_reduction(std::ostream& out, const ReductionInstance& instance,
                     const std::string& source_graph) {
  nlohmann::json header;
  header["n"] = instance.dataset.dimension();
  header["p"] = instance.dataset.prime();
  header["M"] = instance.M;
  header["canonical"] = instance.canonical;
  header["source_graph"] = source_graph;
  out << header.dump() << '\n';
  detail::write_dataset_records(out, instance.dataset);
}

}  // namespace padicreg
