#ifndef COREQ_GRAPH_HPP_
#define COREQ_GRAPH_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coreq/formula.hpp"
#include "coreq/sequent.hpp"

namespace coreq {

using NodeId = std::size_t;

struct Edge {
  NodeId from;
  NodeId to;
  int sign;          // +1 or -1
  std::size_t slot;  // child index at `from`
};

class GraphError : public Error {
 public:
  using Error::Error;
};

// Plain directed multigraph with signed edges. ProblemGraph builds on it;
// the parity and distance queries are defined here so they can be exercised
// on arbitrary DAGs.
class Digraph {
 public:
  NodeId add_node();
  void add_edge(NodeId from, NodeId to, int sign, std::size_t slot = 0);

  std::size_t node_count() const { return out_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& out_edges(NodeId n) const { return out_.at(n); }
  const std::vector<std::size_t>& in_edges(NodeId n) const { return in_.at(n); }

  bool is_acyclic() const;
  std::vector<NodeId> topological_order() const;  // throws GraphError on a cycle

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

enum class Parity { Positive, Negative, Mixed };

std::string_view parity_name(Parity p);

// Seed for the parity walk when starting at `ancestor`: the agreement of its
// incoming edge signs. `forced_positive` marks nodes seeded Positive
// regardless (the problem root and its direct children).
Parity seed_parity(const Digraph& g, NodeId ancestor, bool forced_positive);

// Walks every descending path from `ancestor` to `target`, inverting on
// negative edges; Mixed when paths disagree or the seed is Mixed. Throws
// GraphError when `target` is unreachable.
Parity parity_from(const Digraph& g, NodeId ancestor, NodeId target, Parity seed);

// Unit-weight Dijkstra. nullopt stands for an infinite distance.
std::optional<std::size_t> shortest_distance(const Digraph& g, NodeId from, NodeId to);

// The problem graph: one node per distinct canonical subformula, a Root node
// linked to the conclusion and to every premise. Negative edges lead to
// conditional antecedents and negated formulas.
class ProblemGraph {
 public:
  static constexpr NodeId kRoot = 0;

  explicit ProblemGraph(const Sequent& s);

  const Digraph& digraph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }
  NodeId root() const { return kRoot; }
  NodeId conclusion_node() const { return conclusion_; }
  const std::vector<NodeId>& premise_nodes() const { return premises_; }

  // nullopt for the root.
  const std::optional<Formula>& formula(NodeId n) const { return labels_.at(n); }
  std::optional<NodeId> node_of(const Formula& f) const;

  bool is_root_child(NodeId n) const;

  Parity parity(NodeId ancestor, NodeId target) const;
  std::optional<std::size_t> distance(NodeId from, NodeId to) const;

  // Graphviz rendering with stable node numbering.
  std::string to_dot() const;

 private:
  NodeId intern(const Formula& f);

  Digraph graph_;
  std::vector<std::optional<Formula>> labels_;
  std::unordered_map<Formula, NodeId, FormulaHash> index_;
  NodeId conclusion_ = 0;
  std::vector<NodeId> premises_;
};

inline ProblemGraph build_graph(const Sequent& s) { return ProblemGraph(s); }

}  // namespace coreq

#endif  // COREQ_GRAPH_HPP_
