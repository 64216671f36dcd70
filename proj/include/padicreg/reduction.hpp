#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicreg/dataset.hpp"
#include "padicreg/graph.hpp"
#include "padicreg/solvers.hpp"

namespace padicreg {

// A 2-adic regression instance built from a graph: one point
// (e_u + e_v, 1) per edge, then M copies each of (e_j, 0) and (e_j, 1)
// per vertex. The canonical forcing multiplicity is M = m + 1.
struct ReductionInstance {
  Dataset dataset;
  Graph source;
  std::size_t M;
  bool canonical;
  // vertex_coordinate[j] is the beta coordinate of 0-based vertex j.
  // The map is the identity by construction; it is stored so emitted
  // files and datasets can be cross-referenced without convention.
  std::vector<std::size_t> vertex_coordinate;
};

ReductionInstance build_reduction(const Graph& graph,
                                  std::optional<std::size_t> M_override = std::nullopt);

struct LossBreakdown {
  Rational total;
  Rational forcing;
  Rational edge;
};

// Evaluates the instance loss directly from the gadget structure:
// forcing = M * sum_j (|beta_j| + |beta_j - 1|), edge = sum of
// |1 - beta_u - beta_v| over edges, all 2-adic. Equals eval_loss_sum on
// the underlying dataset.
LossBreakdown total_loss(const ReductionInstance& instance, std::span<const Rational> beta);

// s_j = first 2-adic digit of beta_j. Coordinates with negative
// valuation are a domain error: they are never optimal, so hitting one
// signals a solver bug rather than something to project away.
Assignment round_beta(std::span<const Rational> beta);

// cutsize* = M*n + m - L*. Requires a canonical instance and an
// integral result in [0, m]; anything else means the supplied loss was
// not the optimum.
std::size_t recover_cutsize(const ReductionInstance& instance, const Rational& optimal_loss);

struct RoundtripReport {
  std::size_t maxcut;
  Rational loss_binary;
  std::optional<Rational> loss_enum;  // absent when n exceeds the enum cap
  std::size_t recovered;
  bool all_equal;
};

// Max cut by brute force on one side, optimal regression loss on the
// other, linked through recover_cutsize. all_equal also requires the
// enumeration solver to agree whenever it ran.
RoundtripReport verify_roundtrip(const Graph& graph, const SolverOptions& options = {});

// Dataset serialization with the reduction header fields
// {"source_graph", "M", "canonical"} added.
void write_reduction(std::ostream& out, const ReductionInstance& instance,
                     const std::string& source_graph);

}  // namespace padicreg
