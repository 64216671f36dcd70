#include "padicreg/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "padicreg/errors.hpp"
#include "padicreg/parallel.hpp"
#include "padicreg/rng.hpp"

namespace padicreg {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges_one_based)
    : vertex_count_(vertex_count) {
  if (vertex_count == 0) throw std::invalid_argument("graph needs at least one vertex");
  edges_.reserve(edges_one_based.size());
  for (const auto& [u1, v1] : edges_one_based) {
    if (u1 < 1 || v1 < 1 || u1 > vertex_count || v1 > vertex_count) {
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u1) + ", " +
                                  std::to_string(v1) + ")");
    }
    if (u1 == v1) {
      throw std::invalid_argument("self-loop rejected at vertex " + std::to_string(u1));
    }
    const std::size_t u = std::min(u1, v1) - 1;
    const std::size_t v = std::max(u1, v1) - 1;
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge rejected: (" + std::to_string(dup->first + 1) +
                                ", " + std::to_string(dup->second + 1) + ")");
  }
}

std::size_t cutsize(const Graph& graph, const Assignment& colours) {
  if (colours.size() != graph.vertex_count()) {
    throw std::invalid_argument("assignment length " + std::to_string(colours.size()) +
                                " does not match vertex count " +
                                std::to_string(graph.vertex_count()));
  }
  std::size_t cut = 0;
  for (const auto& [u, v] : graph.edges()) {
    if (colours[u] != colours[v]) ++cut;
  }
  return cut;
}

namespace {

std::size_t cutsize_mask(const Graph& graph, std::uint64_t mask) {
  std::size_t cut = 0;
  for (const auto& [u, v] : graph.edges()) {
    if (((mask >> u) ^ (mask >> v)) & 1u) ++cut;
  }
  return cut;
}

// Assignment order with vertex 1 most significant, so the smallest mask
// under this comparison is the lexicographically smallest assignment.
bool mask_lex_less(std::uint64_t a, std::uint64_t b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const unsigned bit_a = (a >> j) & 1u;
    const unsigned bit_b = (b >> j) & 1u;
    if (bit_a != bit_b) return bit_a < bit_b;
  }
  return false;
}

}  // namespace

MaxCutResult maxcut_bruteforce(const Graph& graph, std::size_t cap) {
  const std::size_t n = graph.vertex_count();
  if (n > cap || n > 63) {
    throw InstanceTooLarge("max cut brute force requires n <= " +
                           std::to_string(std::min<std::size_t>(cap, 63)) +
                           ", graph has n = " + std::to_string(n));
  }

  // Vertex 0 is fixed to colour 0; masks store colours of vertices 1..n-1
  // in bits 1..n-1.
  const std::uint64_t total = n == 1 ? 1 : (std::uint64_t{1} << (n - 1));

  struct Best {
    bool any = false;
    std::size_t cut = 0;
    std::uint64_t mask = 0;
  };

  auto better = [&](const Best& candidate, const Best& incumbent) {
    if (!candidate.any) return false;
    if (!incumbent.any) return true;
    if (candidate.cut != incumbent.cut) return candidate.cut > incumbent.cut;
    return mask_lex_less(candidate.mask, incumbent.mask, n);
  };

  const int workers =
      static_cast<int>(std::min<std::uint64_t>(resolve_worker_count(-1), total));
  std::vector<Best> best_per_chunk(static_cast<std::size_t>(workers));

  auto scan = [&](int chunk, std::uint64_t lo, std::uint64_t hi) {
    Best local;
    for (std::uint64_t half = lo; half < hi; ++half) {
      const std::uint64_t mask = half << 1;
      const Best candidate{true, cutsize_mask(graph, mask), mask};
      if (better(candidate, local)) local = candidate;
    }
    best_per_chunk[static_cast<std::size_t>(chunk)] = local;
  };

  if (workers <= 1) {
    scan(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::uint64_t step = total / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = step * static_cast<std::uint64_t>(w);
      const std::uint64_t hi = (w + 1 == workers) ? total : lo + step;
      pool.emplace_back(scan, w, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  Best best;
  for (const Best& chunk : best_per_chunk) {
    if (better(chunk, best)) best = chunk;
  }

  Assignment colours(n, 0);
  for (std::size_t j = 0; j < n; ++j) colours[j] = (best.mask >> j) & 1u;
  return MaxCutResult{best.cut, std::move(colours)};
}

Graph random_graph(std::size_t n, const Rational& edge_probability, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random graph needs n >= 1");
  if (sgn(edge_probability) < 0 || cmp(edge_probability, 1) > 0) {
    throw std::invalid_argument("edge probability must lie in [0, 1], got " +
                                to_string(edge_probability));
  }

  // Include an edge iff draw / 2^64 < probability, i.e.
  // draw * den < num * 2^64, compared exactly.
  Integer threshold = edge_probability.get_num();
  threshold <<= 64;
  SplitMix64 rng(seed);
  Integer lhs;
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) {
      const std::uint64_t draw = rng.next();
      mpz_set_ui(lhs.get_mpz_t(), static_cast<unsigned long>(draw >> 32));
      mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), 32);
      mpz_add_ui(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(draw & 0xFFFFFFFFULL));
      lhs *= edge_probability.get_den();
      if (cmp(lhs, threshold) < 0) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 1; u <= n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle graph needs n >= 3");
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 1; u < n; ++u) edges.emplace_back(u, u + 1);
  edges.emplace_back(1, n);
  return Graph(n, std::move(edges));
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw std::invalid_argument("bipartite sides must be nonempty");
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 1; u <= a; ++u) {
    for (std::size_t v = a + 1; v <= a + b; ++v) edges.emplace_back(u, v);
  }
  return Graph(a + b, std::move(edges));
}

Graph petersen_graph() {
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 1; u <= 5; ++u) {
    edges.emplace_back(u, u % 5 + 1);       // outer cycle
    edges.emplace_back(u, u + 5);           // spokes
    edges.emplace_back(u + 5, (u + 1) % 5 + 6);  // inner pentagram
  }
  return Graph(10, std::move(edges));
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  std::size_t n = 0, m = 0;
  bool header_seen = false;
  std::vector<Graph::Edge> edges;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream fields(line);
    if (!header_seen) {
      char tag = 0;
      if (!(fields >> tag) || tag != 'p' || !(fields >> n >> m)) {
        throw ParseError("graph line " + std::to_string(line_number) +
                         ": expected \"p <n> <m>\" header");
      }
      std::string extra;
      if (fields >> extra) {
        throw ParseError("graph line " + std::to_string(line_number) +
                         ": trailing fields after header");
      }
      header_seen = true;
      continue;
    }
    std::size_t u = 0, v = 0;
    if (!(fields >> u >> v)) {
      throw ParseError("graph line " + std::to_string(line_number) + ": expected \"<u> <v>\"");
    }
    std::string extra;
    if (fields >> extra) {
      throw ParseError("graph line " + std::to_string(line_number) + ": trailing fields after edge");
    }
    edges.emplace_back(u, v);
  }
  if (!header_seen) throw ParseError("graph file has no \"p <n> <m>\" header");
  if (edges.size() != m) {
    throw ParseError("graph header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << "p " << graph.vertex_count() << ' ' << graph.edge_count() << '\n';
  for (const auto& [u, v] : graph.edges()) {
    out << u + 1 << ' ' << v + 1 << '\n';
  }
}

}  // namespace padicreg
