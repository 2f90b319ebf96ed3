#ifndef COREQ_TESTS_ORACLES_HPP_
#define COREQ_TESTS_ORACLES_HPP_

// Brute-force references for the graph queries. They share no code with the
// library beyond the Digraph container.

#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "coreq/graph.hpp"

namespace coreq::oracle {

// Sign products of every directed path from `from` to `to`, enumerated one
// path at a time. Returns {saw_positive, saw_negative}.
inline void enumerate_paths(const Digraph& g, NodeId at, NodeId to, int sign, bool& pos, bool& neg) {
  if (at == to) {
    (sign > 0 ? pos : neg) = true;
    // A DAG cannot return to `to`, so the walk stops here.
    return;
  }
  for (auto ei : g.out_edges(at)) {
    const Edge& e = g.edges()[ei];
    enumerate_paths(g, e.to, to, sign * e.sign, pos, neg);
  }
}

// nullopt when `to` is unreachable.
inline std::optional<Parity> path_parity(const Digraph& g, NodeId from, NodeId to, Parity seed) {
  bool pos = false, neg = false;
  enumerate_paths(g, from, to, 1, pos, neg);
  if (!pos && !neg) return std::nullopt;
  if (seed == Parity::Mixed || (pos && neg)) return Parity::Mixed;
  const bool flipped = neg;
  if (seed == Parity::Positive) return flipped ? Parity::Negative : Parity::Positive;
  return flipped ? Parity::Positive : Parity::Negative;
}

// Seed from the incoming edges, Positive when forced or when there are none.
inline Parity incoming_seed(const Digraph& g, NodeId n, bool forced) {
  if (forced) return Parity::Positive;
  bool pos = false, neg = false;
  for (const auto& e : g.edges()) {
    if (e.to == n) (e.sign > 0 ? pos : neg) = true;
  }
  if (pos && neg) return Parity::Mixed;
  return neg ? Parity::Negative : Parity::Positive;
}

// All-pairs unit-weight distances; max() marks "no path".
inline std::vector<std::vector<std::size_t>> floyd_warshall(const Digraph& g) {
  const std::size_t n = g.node_count();
  const std::size_t inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) d[e.from][e.to] = std::min<std::size_t>(d[e.from][e.to], 1);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[k][j] != inf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

// Random DAG: edges only go from lower to higher ids, parallel edges allowed.
inline Digraph random_dag(std::mt19937_64& rng, std::size_t max_nodes, double density) {
  std::uniform_int_distribution<std::size_t> size(1, max_nodes);
  std::bernoulli_distribution edge(density), negative(0.4), parallel(0.1);
  Digraph g;
  const std::size_t n = size(rng);
  for (std::size_t i = 0; i < n; ++i) g.add_node();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!edge(rng)) continue;
      g.add_edge(i, j, negative(rng) ? -1 : 1);
      if (parallel(rng)) g.add_edge(i, j, negative(rng) ? -1 : 1, 1);
    }
  }
  return g;
}

}  // namespace coreq::oracle

#endif  // COREQ_TESTS_ORACLES_HPP_
