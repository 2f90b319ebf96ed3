#include "coreq/graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

namespace coreq {

NodeId Digraph::add_node() {
  out_.emplace_back();
  in_.emplace_back();
  return out_.size() - 1;
}

void Digraph::add_edge(NodeId from, NodeId to, int sign, std::size_t slot) {
  if (from >= out_.size() || to >= out_.size()) throw GraphError("edge endpoint out of range");
  if (sign != 1 && sign != -1) throw GraphError("edge sign must be +1 or -1");
  edges_.push_back({from, to, sign, slot});
  out_[from].push_back(edges_.size() - 1);
  in_[to].push_back(edges_.size() - 1);
}

std::vector<NodeId> Digraph::topological_order() const {
  std::vector<std::size_t> indegree(node_count(), 0);
  for (const auto& e : edges_) ++indegree[e.to];
  std::vector<NodeId> order;
  std::vector<NodeId> ready;
  for (NodeId n = 0; n < node_count(); ++n) {
    if (indegree[n] == 0) ready.push_back(n);
  }
  while (!ready.empty()) {
    NodeId n = ready.back();
    ready.pop_back();
    order.push_back(n);
    for (auto ei : out_[n]) {
      if (--indegree[edges_[ei].to] == 0) ready.push_back(edges_[ei].to);
    }
  }
  if (order.size() != node_count()) throw GraphError("graph has a cycle");
  return order;
}

bool Digraph::is_acyclic() const {
  try {
    topological_order();
    return true;
  } catch (const GraphError&) {
    return false;
  }
}

std::string_view parity_name(Parity p) {
  switch (p) {
    case Parity::Positive: return "positive";
    case Parity::Negative: return "negative";
    case Parity::Mixed: return "mixed";
  }
  return "?";
}

Parity seed_parity(const Digraph& g, NodeId ancestor, bool forced_positive) {
  if (forced_positive) return Parity::Positive;
  bool pos = false, neg = false;
  for (auto ei : g.in_edges(ancestor)) {
    (g.edges()[ei].sign > 0 ? pos : neg) = true;
  }
  if (pos && neg) return Parity::Mixed;
  return neg ? Parity::Negative : Parity::Positive;
}

namespace {

constexpr unsigned kPos = 1;
constexpr unsigned kNeg = 2;

unsigned mask_of(Parity p) {
  switch (p) {
    case Parity::Positive: return kPos;
    case Parity::Negative: return kNeg;
    default: return kPos | kNeg;
  }
}

unsigned flip(unsigned mask) { return ((mask & kPos) ? kNeg : 0) | ((mask & kNeg) ? kPos : 0); }

}  // namespace

Parity parity_from(const Digraph& g, NodeId ancestor, NodeId target, Parity seed) {
  if (ancestor >= g.node_count() || target >= g.node_count()) throw GraphError("unknown node");
  // Set of parity counters that reach each node; propagated in topological
  // order and stopped at the target.
  std::vector<unsigned> reach(g.node_count(), 0);
  reach[ancestor] = mask_of(seed);
  for (NodeId n : g.topological_order()) {
    if (reach[n] == 0 || n == target) continue;
    for (auto ei : g.out_edges(n)) {
      const Edge& e = g.edges()[ei];
      reach[e.to] |= e.sign < 0 ? flip(reach[n]) : reach[n];
    }
  }
  switch (reach[target]) {
    case 0: throw GraphError("target is not reachable from the ancestor");
    case kPos: return Parity::Positive;
    case kNeg: return Parity::Negative;
    default: return Parity::Mixed;
  }
}

std::optional<std::size_t> shortest_distance(const Digraph& g, NodeId from, NodeId to) {
  if (from >= g.node_count() || to >= g.node_count()) throw GraphError("unknown node");
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.node_count(), kInf);
  using Item = std::pair<std::size_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[from] = 0;
  queue.push({0, from});
  while (!queue.empty()) {
    auto [d, n] = queue.top();
    queue.pop();
    if (d != dist[n]) continue;
    if (n == to) return d;
    for (auto ei : g.out_edges(n)) {
      NodeId m = g.edges()[ei].to;
      if (d + 1 < dist[m]) {
        dist[m] = d + 1;
        queue.push({d + 1, m});
      }
    }
  }
  return std::nullopt;
}

ProblemGraph::ProblemGraph(const Sequent& s) {
  graph_.add_node();
  labels_.emplace_back(std::nullopt);
  conclusion_ = intern(s.conclusion);
  graph_.add_edge(kRoot, conclusion_, +1, 0);
  for (std::size_t i = 0; i < s.premises.size(); ++i) {
    NodeId n = intern(s.premises[i]);
    premises_.push_back(n);
    graph_.add_edge(kRoot, n, +1, i + 1);
  }
}

NodeId ProblemGraph::intern(const Formula& f) {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  NodeId n = graph_.add_node();
  labels_.emplace_back(f);
  index_.emplace(f, n);
  for (std::size_t i = 0; i < f.arity(); ++i) {
    NodeId child = intern(f.child(i));
    bool negative = f.is(Connective::Not) || (f.is(Connective::Implies) && i == 0);
    graph_.add_edge(n, child, negative ? -1 : +1, i);
  }
  return n;
}

std::optional<NodeId> ProblemGraph::node_of(const Formula& f) const {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  return std::nullopt;
}

bool ProblemGraph::is_root_child(NodeId n) const {
  return n == conclusion_ || std::find(premises_.begin(), premises_.end(), n) != premises_.end();
}

Parity ProblemGraph::parity(NodeId ancestor, NodeId target) const {
  if (ancestor >= node_count()) throw GraphError("unknown node");
  Parity seed = seed_parity(graph_, ancestor, ancestor == kRoot || is_root_child(ancestor));
  return parity_from(graph_, ancestor, target, seed);
}

std::optional<std::size_t> ProblemGraph::distance(NodeId from, NodeId to) const {
  return shortest_distance(graph_, from, to);
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string ProblemGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph problem {\n";
  for (NodeId n = 0; n < node_count(); ++n) {
    os << "  n" << n << " [label=\""
       << (labels_[n] ? dot_escape(format_formula(*labels_[n])) : std::string("⊢?")) << "\"];\n";
  }
  for (const auto& e : graph_.edges()) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << (e.sign > 0 ? "+1" : "-1") << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace coreq
