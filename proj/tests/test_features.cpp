#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace coreq;
using namespace coreq::test;

namespace {

Action elim(Rule r, const std::string& major) { return {r, F(major), std::nullopt}; }
Action intro(Rule r) { return {r, std::nullopt, std::nullopt}; }

// Every rule/major pairing of a state, applicable or not.
std::vector<Action> probe_actions(const Sequent& s) {
  std::vector<Action> out;
  for (Rule r : kAllRules) {
    if (is_elimination(r)) {
      for (const auto& p : s.premises) out.push_back({r, p, takes_instance(r) ? std::optional(c("a")) : std::nullopt});
    } else {
      out.push_back({r, std::nullopt, takes_instance(r) ? std::optional(c("a")) : std::nullopt});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("rule ordering") {
  Goal g(S("A(a) |- A(a)"));
  CHECK(rule_ordering(g, intro(Rule::Hypothesis)) == 1.0);
  CHECK(rule_ordering(g, intro(Rule::OrIntroL)) == 0.0);
  CHECK(rule_ordering(g, intro(Rule::OrIntroR)) == 0.0);
  CHECK(rule_ordering(g, elim(Rule::NegElim, "~A(a)")) == rule_ordering(g, elim(Rule::NegElim, "~B(a)")));
  // Strictly decreasing along the priority table.
  const Rule order[] = {Rule::Hypothesis, Rule::NegElim,     Rule::AndElim,    Rule::ImpElim,
                        Rule::OrElim,     Rule::AndIntro,    Rule::NegIntro,   Rule::ImpIntro,
                        Rule::ForAllIntro, Rule::ExistsElim, Rule::ForAllElim, Rule::ExistsIntro,
                        Rule::OrIntroL};
  for (std::size_t i = 1; i < std::size(order); ++i) {
    CHECK(rule_ordering(g, intro(order[i - 1])) > rule_ordering(g, intro(order[i])));
  }
}

TEST_CASE("basic rule filter") {
  CHECK(basic_rule_filter(Goal(S("|- A(a) & B(a)")), intro(Rule::AndIntro)) == 1.0);
  CHECK(basic_rule_filter(Goal(S("|- A(a) | B(a)")), intro(Rule::AndIntro)) == -1.0);
  CHECK(basic_rule_filter(Goal(S("~A(a), A(a) |- bot")), elim(Rule::NegElim, "~A(a)")) == 1.0);
  CHECK(basic_rule_filter(Goal(S("A(a) |- B(a)")), elim(Rule::ImpElim, "A(a) -> B(a)")) == -1.0);
}

TEST_CASE("atomic accessibility") {
  CHECK(atomic_accessibility(Goal(S("A(a) |- A(a) -> B(a)")), intro(Rule::ImpIntro)) == 0.0);
  CHECK(atomic_accessibility(Goal(S("C(a), ~B(a) |- B(a)")), intro(Rule::Hypothesis)) == -1.0);
  CHECK(atomic_accessibility(Goal(S("B(a), C(a) |- B(a)")), intro(Rule::Hypothesis)) == 1.0);
  CHECK(atomic_accessibility(Goal(S("A(a) |- bot")), intro(Rule::Hypothesis)) == 0.0);
  // Tier table.
  CHECK(accessibility_tier(F("B(a)"), std::vector{F("A(a) & (C(a) -> B(a))")}) == 0.8);
  CHECK(accessibility_tier(F("B(a)"), std::vector{F("A(a) | B(a)")}) == 0.5);
  CHECK(accessibility_tier(F("B(a)"), std::vector{F("forall x. B(x)")}) == 0.25);
  CHECK(accessibility_tier(F("B(a)"), std::vector{F("B(a) -> C(a)")}) == -1.0);
  CHECK(accessibility_tier(F("B(a)"), std::vector{F("A(a) | B(a)"), F("C(a) & B(a)")}) == 0.8);
}

TEST_CASE("major complexity score") {
  Goal g(S("A(a), A(a) -> B(a), (A(a) -> B(a)) -> C(a) |- C(a)"));
  CHECK(major_complexity_score(g, elim(Rule::ImpElim, "A(a) -> B(a)")) == doctest::Approx(0.5));
  CHECK(major_complexity_score(g, elim(Rule::ImpElim, "(A(a) -> B(a)) -> C(a)")) == 0.0);
  CHECK(major_complexity_score(g, intro(Rule::ImpIntro)) == 0.0);
  CHECK(major_complexity_score(Goal(S("A(a), B(a) |- A(a)")), intro(Rule::Hypothesis)) == 0.0);
}

TEST_CASE("weighted major complexity score") {
  Goal g(S("A(a) & B(a), A(a) -> B(a) |- B(a)"));
  CHECK(weighted_major_complexity_score(g, elim(Rule::AndElim, "A(a) & B(a)")) == 0.0);
  CHECK(weighted_major_complexity_score(g, elim(Rule::ImpElim, "A(a) -> B(a)")) == 0.0);
  Goal h(S("~(A(a) & B(a)), A(a) -> B(a) |- B(a)"));
  CHECK(weighted_major_complexity_score(h, elim(Rule::ImpElim, "A(a) -> B(a)")) == doctest::Approx(0.75));
  CHECK(weighted_major_complexity_score(h, intro(Rule::Hypothesis)) == 0.0);
}

TEST_CASE("shortest path score") {
  Sequent fig = S("A(a), A(a) -> (B(a) | C(a)), ~C(a) |- B(a)");
  ProblemGraph g(fig);
  Goal goal(fig);
  CHECK(shortest_path_score(goal, elim(Rule::ImpElim, "A(a) -> (B(a) | C(a))"), g) == doctest::Approx(1.0 / 3.0));
  CHECK(shortest_path_score(goal, elim(Rule::NegElim, "~C(a)"), g) == 0.0);
  CHECK(shortest_path_score(goal, intro(Rule::Hypothesis), g) == 0.0);
  Sequent self = S("A(a) & B(a) |- A(a) & B(a)");
  CHECK(shortest_path_score(Goal(self), elim(Rule::AndElim, "A(a) & B(a)"), ProblemGraph(self)) == 1.0);
}

TEST_CASE("feature vectors") {
  Sequent s = S("A(a), A(a) -> B(a) |- B(a)");
  ProblemGraph g(s);
  Goal goal(s);
  Action a = elim(Rule::ImpElim, "A(a) -> B(a)");
  CHECK(feature_vector(goal, a, FeatureSet(), g).size() == 2);
  auto all = feature_vector(goal, a, FeatureSet::all(), g);
  CHECK(all.size() == 6);
  CHECK(all == feature_vector(goal, a, FeatureSet::all(), g));
  CHECK(FeatureSet::parse("C,A").letters() == "A,C");
  CHECK(FeatureSet::parse("").size() == 2);
  CHECK_THROWS_AS(FeatureSet::parse("E"), Error);
}

TEST_CASE("property: ranges, order reversal and antitonicity") {
  for (const auto& s : random_sequents(500, 41, 3)) {
    ProblemGraph g(s);
    auto fw = oracle::floyd_warshall(g.digraph());
    for (bool flag : {false, true}) {
      Goal goal(s, flag);
      auto actions = probe_actions(s);
      for (const auto& a : applicable_actions(goal)) actions.push_back(a);
      for (const auto& a : actions) {
        auto v = feature_vector(goal, a, FeatureSet::all(), g);
        for (double x : v) CHECK(std::isfinite(x));
        CHECK(v[0] >= 0.0);
        CHECK(v[0] <= 1.0);
        CHECK((v[1] == 1.0 || v[1] == -1.0));
        CHECK((v[2] == -1.0 || (v[2] >= 0.0 && v[2] <= 1.0)));
        for (int i = 3; i < 6; ++i) {
          CHECK(v[i] >= 0.0);
          CHECK(v[i] <= 1.0);
        }
      }
      for (const auto& a : actions) {
        for (const auto& b : actions) {
          if (!a.major || !b.major) continue;
          if (complexity(*a.major) < complexity(*b.major)) {
            CHECK(major_complexity_score(goal, a) > major_complexity_score(goal, b));
          }
          if (weighted_complexity(*a.major) < weighted_complexity(*b.major)) {
            CHECK(weighted_major_complexity_score(goal, a) > weighted_major_complexity_score(goal, b));
          }
          const auto inf = std::numeric_limits<std::size_t>::max();
          std::size_t da = fw[*g.node_of(*a.major)][g.conclusion_node()];
          std::size_t db = fw[*g.node_of(*b.major)][g.conclusion_node()];
          if (da < db) CHECK(shortest_path_score(goal, a, g) > shortest_path_score(goal, b, g));
          if (da == inf) CHECK(shortest_path_score(goal, a, g) == 0.0);
        }
      }
    }
  }
}
