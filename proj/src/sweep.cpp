#include "padicreg/sweep.hpp"

#include <ostream>

#include "padicreg/reduction.hpp"

namespace padicreg {

std::vector<SweepRecord> run_sweep(const Graph& graph, std::size_t from, std::size_t to,
                                   const SolverOptions& options) {
  std::vector<SweepRecord> records;
  for (std::size_t M = from; M <= to; ++M) {
    const ReductionInstance instance = build_reduction(graph, M);
    const SolveResult binary = solve_binary(instance.dataset, options);
    const SolveResult enumerated = solve_enum(instance.dataset, options);

    SweepRecord record;
    record.M = M;
    record.loss_binary = binary.loss;
    record.loss_enum = enumerated.loss;
    Rational value(static_cast<unsigned long>(M));
    value *= static_cast<unsigned long>(graph.vertex_count());
    value += static_cast<unsigned long>(graph.edge_count());
    value -= std::min(binary.loss, enumerated.loss);
    record.implied_value = value;
    record.canonical = instance.canonical;
    records.push_back(std::move(record));
    if (M == to) break;  // guards against size_t wrap at to = SIZE_MAX
  }
  return records;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << "M,loss_binary,loss_enum,implied_value,canonical\n";
  for (const SweepRecord& record : records) {
    out << record.M << ',' << to_string(record.loss_binary) << ','
        << to_string(record.loss_enum) << ',' << to_string(record.implied_value) << ','
        << (record.canonical ? "true" : "false") << '\n';
  }
}

}  // namespace padicreg
