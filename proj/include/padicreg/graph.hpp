#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "padicreg/rational.hpp"

namespace padicreg {

// Simple undirected graph. Vertices are 0-based in memory; the file
// format and constructors accept 1-based endpoints.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  // Edges are given with 1-based endpoints u != v; they are stored
  // normalized (u < v, 0-based) and sorted. Self-loops and duplicates
  // are rejected.
  Graph(std::size_t vertex_count, std::vector<Edge> edges_one_based);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::size_t vertex_count_;
  std::vector<Edge> edges_;  // 0-based, u < v, sorted
};

using Assignment = std::vector<std::uint8_t>;

std::size_t cutsize(const Graph& graph, const Assignment& colours);

struct MaxCutResult {
  std::size_t cut;
  Assignment colours;
};

// Exhaustive search over the 2^(n-1) assignments with the first vertex
// coloured 0 (cut size is invariant under a global flip). Ties go to the
// lexicographically smallest witnessing assignment.
MaxCutResult maxcut_bruteforce(const Graph& graph, std::size_t cap = 20);

Graph random_graph(std::size_t n, const Rational& edge_probability, std::uint64_t seed);

// Named small graphs used throughout the tests and docs.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
Graph petersen_graph();

// Edge-list format: optional "c ..." comment lines, one "p <n> <m>"
// line, then m lines "<u> <v>" with 1-based endpoints.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& graph);

}  // namespace padicreg
