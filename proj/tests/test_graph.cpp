#include <functional>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace coreq;
using namespace coreq::test;

namespace {

const char* kDisjSyllogism = "A(a), A(a) -> (B(a) | C(a)), ~C(a) |- B(a)";

NodeId node(const ProblemGraph& g, const std::string& f) {
  auto n = g.node_of(F(f));
  REQUIRE(n.has_value());
  return *n;
}

std::size_t subformula_count(const Formula& f) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < f.arity(); ++i) n += subformula_count(f.child(i));
  return n;
}

}  // namespace

TEST_CASE("problem graph shares subformulas") {
  ProblemGraph g(S(kDisjSyllogism));
  CHECK(g.node_count() == 7);
  CHECK(node(g, "A(a)") == g.premise_nodes()[0]);
  CHECK(node(g, "B(a)") == g.conclusion_node());
  // The antecedent of the conditional is the premise node itself.
  bool antecedent_shared = false, disjunct_shared = false;
  for (const auto& e : g.digraph().edges()) {
    if (e.from == node(g, "A(a) -> (B(a) | C(a))") && e.sign < 0) antecedent_shared = e.to == node(g, "A(a)");
    if (e.from == node(g, "B(a) | C(a)") && e.slot == 0) disjunct_shared = e.to == g.conclusion_node();
  }
  CHECK(antecedent_shared);
  CHECK(disjunct_shared);
  CHECK(g.digraph().in_edges(g.root()).empty());
}

TEST_CASE("single atom graph") {
  ProblemGraph g(S("|- A(a)"));
  CHECK(g.node_count() == 2);
  REQUIRE(g.digraph().edges().size() == 1);
  CHECK(g.digraph().edges()[0].sign == 1);
  CHECK(g.digraph().edges()[0].from == g.root());
}

TEST_CASE("parallel edges for repeated children") {
  ProblemGraph g(S("A(a) & A(a) |- B(a)"));
  NodeId conj = node(g, "A(a) & A(a)");
  auto outs = g.digraph().out_edges(conj);
  REQUIRE(outs.size() == 2);
  for (auto ei : outs) {
    CHECK(g.digraph().edges()[ei].to == node(g, "A(a)"));
    CHECK(g.digraph().edges()[ei].sign == 1);
  }
}

TEST_CASE("edge signs") {
  ProblemGraph g(S("~A(a), B(a) -> C(a), forall x. A(x) |- A(a) & B(a)"));
  for (const auto& e : g.digraph().edges()) {
    if (e.from == g.root()) {
      CHECK(e.sign == 1);
      continue;
    }
    const Formula& f = *g.formula(e.from);
    const bool negative = f.is(Connective::Not) || (f.is(Connective::Implies) && e.slot == 0);
    CHECK(e.sign == (negative ? -1 : 1));
  }
}

TEST_CASE("parity examples") {
  ProblemGraph g(S(kDisjSyllogism));
  CHECK(g.parity(node(g, "A(a) -> (B(a) | C(a))"), node(g, "B(a)")) == Parity::Positive);
  CHECK(g.parity(g.root(), node(g, "A(a)")) == Parity::Mixed);
  CHECK(g.parity(g.root(), node(g, "C(a)")) == Parity::Mixed);
  CHECK(g.parity(g.root(), node(g, "B(a)")) == Parity::Positive);
  CHECK(g.parity(node(g, "~C(a)"), node(g, "C(a)")) == Parity::Negative);
  CHECK_THROWS_AS(g.parity(node(g, "A(a)"), node(g, "B(a)")), GraphError);
}

TEST_CASE("distance examples") {
  ProblemGraph g(S(kDisjSyllogism));
  for (NodeId n = 0; n < g.node_count(); ++n) CHECK(g.distance(n, n) == 0u);
  CHECK(g.distance(node(g, "A(a) -> (B(a) | C(a))"), node(g, "B(a)")) == 2u);
  CHECK_FALSE(g.distance(node(g, "A(a)"), node(g, "B(a)")).has_value());
  CHECK_THROWS_AS(g.distance(0, 99), GraphError);
}

TEST_CASE("dot export") {
  ProblemGraph g(S("~A(a) |- B(a)"));
  auto dot = g.to_dot();
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("label=\"⊢?\"") != std::string::npos);
  CHECK(dot.find("label=\"-1\"") != std::string::npos);
  CHECK(dot.find("label=\"+1\"") != std::string::npos);
  CHECK(dot == ProblemGraph(S("~A(a) |- B(a)")).to_dot());
}

TEST_CASE("property: graphs are acyclic, shared and agree with the oracles") {
  for (const auto& s : random_sequents(300, 31, 4)) {
    ProblemGraph g(s);
    CHECK(g.digraph().is_acyclic());
    std::size_t total = 0;
    for (const auto& p : s.premises) total += subformula_count(p);
    total += subformula_count(s.conclusion);
    CHECK(g.node_count() <= total + 1);

    for (NodeId anc = 0; anc < g.node_count(); ++anc) {
      Parity seed = oracle::incoming_seed(g.digraph(), anc, anc == g.root() || g.is_root_child(anc));
      for (NodeId t = 0; t < g.node_count(); ++t) {
        auto want = oracle::path_parity(g.digraph(), anc, t, seed);
        if (want) {
          CHECK(g.parity(anc, t) == *want);
        } else {
          CHECK_THROWS_AS(g.parity(anc, t), GraphError);
        }
      }
    }
  }
}

TEST_CASE("property: mixed parity is absorbed downstream") {
  for (const auto& s : random_sequents(300, 32, 4)) {
    ProblemGraph g(s);
    const auto& d = g.digraph();
    for (NodeId n = 1; n < g.node_count(); ++n) {
      if (g.parity(g.root(), n) != Parity::Mixed) continue;
      // Nodes reachable from Root only through n.
      for (NodeId m = 1; m < g.node_count(); ++m) {
        if (m == n || !g.distance(n, m)) continue;
        std::vector<bool> seen(g.node_count(), false);
        std::function<bool(NodeId)> avoid = [&](NodeId at) {
          if (at == m) return true;
          if (at == n || seen[at]) return false;
          seen[at] = true;
          for (auto ei : d.out_edges(at)) {
            if (avoid(d.edges()[ei].to)) return true;
          }
          return false;
        };
        if (!avoid(g.root())) CHECK(g.parity(g.root(), m) == Parity::Mixed);
      }
    }
  }
}

TEST_CASE("property: parity and distance on random DAGs") {
  std::mt19937_64 rng(33);
  for (int round = 0; round < 300; ++round) {
    Digraph g = oracle::random_dag(rng, 12, 0.3);
    auto fw = oracle::floyd_warshall(g);
    for (NodeId a = 0; a < g.node_count(); ++a) {
      for (Parity seed : {Parity::Positive, Parity::Negative, Parity::Mixed}) {
        for (NodeId t = 0; t < g.node_count(); ++t) {
          auto want = oracle::path_parity(g, a, t, seed);
          if (want) {
            CHECK(parity_from(g, a, t, seed) == *want);
          } else {
            CHECK_THROWS_AS(parity_from(g, a, t, seed), GraphError);
          }
        }
      }
      CHECK(seed_parity(g, a, false) == oracle::incoming_seed(g, a, false));
      for (NodeId b = 0; b < g.node_count(); ++b) {
        auto d = shortest_distance(g, a, b);
        if (fw[a][b] == std::numeric_limits<std::size_t>::max()) {
          CHECK_FALSE(d.has_value());
        } else {
          CHECK(d == fw[a][b]);
        }
      }
    }
  }
}

TEST_CASE("topological order rejects cycles") {
  Digraph g;
  g.add_node();
  g.add_node();
  g.add_edge(0, 1, 1);
  CHECK(g.is_acyclic());
  g.add_edge(1, 0, -1);
  CHECK_FALSE(g.is_acyclic());
  CHECK_THROWS_AS(g.topological_order(), GraphError);
}
