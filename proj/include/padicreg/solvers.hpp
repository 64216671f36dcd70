#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "padicreg/dataset.hpp"

namespace padicreg {

struct SolverOptions {
  /// Largest dimension the 2^n binary scan accepts.
  std::size_t binary_cap = 20;
  /// Largest dimension the subset enumeration accepts unconditionally.
  std::size_t enum_cap = 6;
  /// Past the enum cap, enumeration still runs when C(m, n) stays below
  /// this subset budget.
  std::uint64_t enum_work_budget = 20'000'000;
  /// Worker count; -1 defers to PADIC_THREADS / hardware.
  int threads = -1;
};

struct SolveResult {
  std::vector<Rational> beta;
  Rational loss;
  std::string method;
  std::uint64_t candidates_examined = 0;
};

/// Solve x_i^T beta = y_i for exactly n = dim rows over exact rationals.
/// Returns the unique solution, or nullopt when the row matrix is
/// singular. Fraction-free (Bareiss) elimination with full pivoting.
std::optional<std::vector<Rational>> solve_exact_linear(std::span<const DataPoint> rows);

/// Exhaustive scan of all 2^n binary coefficient vectors; returns the
/// minimum-loss one, ties broken toward the lexicographically smallest
/// beta. Throws InstanceTooLarge past options.binary_cap.
SolveResult solve_binary(const Dataset& dataset, const SolverOptions& options = {});

/// Candidate enumeration: the exact interpolant of every size-n subset of
/// points with an invertible row matrix, plus the zero vector. Exact on
/// forcing-style instances whose optimum interpolates n points; a
/// heuristic on arbitrary data. Same tie-break as solve_binary.
SolveResult solve_enum(const Dataset& dataset, const SolverOptions& options = {});

}  // namespace padicreg
