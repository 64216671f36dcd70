#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "padicreg/graph.hpp"
#include "padicreg/rational.hpp"
#include "padicreg/solvers.hpp"

namespace padicreg {

// One row of the forcing-multiplicity sweep. Both solvers run because
// the binary optimum is only known optimal at M = m + 1; below that,
// fractional fits can beat every binary one.
struct SweepRecord {
  std::size_t M;
  Rational loss_binary;
  Rational loss_enum;
  Rational implied_value;  // M*n + m - min(loss_binary, loss_enum)
  bool canonical;
};

// Builds the instance for every M in [from, to] and solves with both
// methods. Empty when from > to.
std::vector<SweepRecord> run_sweep(const Graph& graph, std::size_t from, std::size_t to,
                                   const SolverOptions& options = {});

// CSV with header M,loss_binary,loss_enum,implied_value,canonical.
void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records);

}  // namespace padicreg
