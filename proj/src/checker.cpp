// Proof checker. Deliberately shares nothing with the search engine beyond
// the formula utilities: every node is re-validated against its schema.

#include <algorithm>

#include "coreq/kernel.hpp"

namespace coreq {

namespace {

using FormulaSet = std::vector<Formula>;

void add(FormulaSet& set, const Formula& f) {
  if (std::find(set.begin(), set.end(), f) == set.end()) set.push_back(f);
}

bool contains(const FormulaSet& set, const Formula& f) {
  return std::find(set.begin(), set.end(), f) != set.end();
}

void remove(FormulaSet& set, const Formula& f) {
  set.erase(std::remove(set.begin(), set.end(), f), set.end());
}

bool same_multiset(std::vector<Formula> a, std::vector<Formula> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::vector<Formula> minus_one(std::vector<Formula> premises, const Formula& f) {
  auto it = std::find(premises.begin(), premises.end(), f);
  if (it != premises.end()) premises.erase(it);
  return premises;
}

std::vector<Formula> plus(std::vector<Formula> premises, std::initializer_list<Formula> extra) {
  premises.insert(premises.end(), extra.begin(), extra.end());
  return premises;
}

// The discharge predicate. Every rule that discharges requires at least one
// of its discharged assumptions to be used in the subproof it closes over;
// for all rules except AndElim this means the single assumption.
bool discharge_used(Rule rule, const FormulaSet& discharged_here, const FormulaSet& used) {
  if (discharged_here.empty()) return true;
  if (rule == Rule::AndElim) {
    return std::any_of(discharged_here.begin(), discharged_here.end(),
                       [&](const Formula& f) { return contains(used, f); });
  }
  return std::all_of(discharged_here.begin(), discharged_here.end(),
                     [&](const Formula& f) { return contains(used, f); });
}

class Checker {
 public:
  Verdict verdict;

  // Returns the undischarged assumptions the subproof uses.
  FormulaSet check(const Proof& p, const std::string& where) {
    std::vector<FormulaSet> used;
    for (std::size_t i = 0; i < p.children.size(); ++i) {
      used.push_back(check(p.children[i], where.empty() ? std::to_string(i) : where + "." + std::to_string(i)));
    }
    return check_node(p, where, used);
  }

 private:
  void fail(const std::string& where, const std::string& message) {
    verdict.violations.push_back({where.empty() ? "root" : where, message});
  }

  bool expect_children(const Proof& p, const std::string& where, std::size_t n) {
    if (p.children.size() == n) return true;
    if (p.major && is_elimination(p.rule)) {
      for (const auto& c : p.children) {
        if (c.sequent.conclusion == *p.major) {
          fail(where, "major not standing proud: " + format_formula(*p.major) + " is derived by a subproof");
          return false;
        }
      }
    }
    fail(where, std::string(rule_name(p.rule)) + " expects " + std::to_string(n) + " subproof(s), found " +
                    std::to_string(p.children.size()));
    return false;
  }

  void expect_premises(const Proof& child, const std::vector<Formula>& premises, const std::string& where) {
    if (!same_multiset(child.sequent.premises, premises)) {
      fail(where, "subproof premises do not match the rule schema");
    }
  }

  void expect_conclusion(const Proof& child, const Formula& f, const std::string& where) {
    if (!(child.sequent.conclusion == f)) {
      fail(where, "subproof proves " + format_formula(child.sequent.conclusion) + ", expected " +
                      format_formula(f));
    }
  }

  void expect_discharged(const Proof& p, const std::vector<Formula>& expected, const std::string& where) {
    if (!same_multiset(p.discharged, expected)) fail(where, "discharged assumptions do not match the rule schema");
  }

  bool expect_fresh(const Proof& p, const Formula& extra, const std::string& where) {
    if (!p.instance || p.instance->is_variable()) {
      fail(where, "quantifier rule without a parameter");
      return false;
    }
    auto used = p.sequent.constants();
    auto more = constants(extra);
    used.insert(more.begin(), more.end());
    if (used.count(p.instance->name) != 0) {
      fail(where, "parameter " + p.instance->name + " is not fresh");
      return false;
    }
    return true;
  }

  // Majors must sit among the node's assumptions, untouched by proof work.
  bool expect_major(const Proof& p, Connective c, const std::string& where) {
    if (!p.major) {
      fail(where, "elimination without a major premise");
      return false;
    }
    if (!p.major->is(c)) {
      fail(where, "major premise has the wrong principal connective");
      return false;
    }
    if (!p.sequent.has_premise(*p.major)) {
      fail(where, "major not standing proud: " + format_formula(*p.major) + " is not an assumption");
      return false;
    }
    return true;
  }

  FormulaSet check_node(const Proof& p, const std::string& where, std::vector<FormulaSet>& used) {
    const auto& gamma = p.sequent.premises;
    const Formula& c = p.sequent.conclusion;
    const Formula bot = Formula::falsum();
    FormulaSet result;

    if (!is_elimination(p.rule) && p.major) fail(where, "introduction rule carries a major premise");
    if (!takes_instance(p.rule) && p.instance) fail(where, "rule carries an instantiation term");

    switch (p.rule) {
      case Rule::Hypothesis:
        if (!p.children.empty()) fail(where, "Hypothesis has subproofs");
        if (!p.sequent.has_premise(c)) fail(where, "Hypothesis conclusion is not an assumption");
        expect_discharged(p, {}, where);
        add(result, c);
        return result;

      case Rule::AndIntro:
        if (!c.is(Connective::And)) {
          fail(where, "AndIntro conclusion is not a conjunction");
          break;
        }
        if (!expect_children(p, where, 2)) break;
        expect_premises(p.children[0], gamma, where);
        expect_premises(p.children[1], gamma, where);
        expect_conclusion(p.children[0], c.left(), where);
        expect_conclusion(p.children[1], c.right(), where);
        expect_discharged(p, {}, where);
        result = used[0];
        for (const auto& f : used[1]) add(result, f);
        return result;

      case Rule::OrIntroL:
      case Rule::OrIntroR:
        if (!c.is(Connective::Or)) {
          fail(where, "disjunction introduction conclusion is not a disjunction");
          break;
        }
        if (!expect_children(p, where, 1)) break;
        expect_premises(p.children[0], gamma, where);
        expect_conclusion(p.children[0], p.rule == Rule::OrIntroL ? c.left() : c.right(), where);
        expect_discharged(p, {}, where);
        return used[0];

      case Rule::ImpIntro: {
        if (!c.is(Connective::Implies)) {
          fail(where, "ImpIntro conclusion is not a conditional");
          break;
        }
        if (!expect_children(p, where, 1)) break;
        const Proof& sub = p.children[0];
        expect_premises(sub, plus(gamma, {c.left()}), where);
        if (!(sub.sequent.conclusion == c.right() || sub.sequent.conclusion == bot)) {
          fail(where, "ImpIntro subproof must end in the consequent or in bot");
        }
        expect_discharged(p, {c.left()}, where);
        if (!discharge_used(p.rule, {c.left()}, used[0])) fail(where, "vacuous discharge of " + format_formula(c.left()));
        result = used[0];
        remove(result, c.left());
        return result;
      }

      case Rule::NegIntro: {
        if (!c.is(Connective::Not)) {
          fail(where, "NegIntro conclusion is not a negation");
          break;
        }
        if (!expect_children(p, where, 1)) break;
        expect_premises(p.children[0], plus(gamma, {c.body()}), where);
        expect_conclusion(p.children[0], bot, where);
        expect_discharged(p, {c.body()}, where);
        if (!discharge_used(p.rule, {c.body()}, used[0])) fail(where, "vacuous discharge of " + format_formula(c.body()));
        result = used[0];
        remove(result, c.body());
        return result;
      }

      case Rule::ForAllIntro: {
        if (!c.is(Connective::ForAll)) {
          fail(where, "ForAllIntro conclusion is not universal");
          break;
        }
        if (!expect_children(p, where, 1)) break;
        if (!expect_fresh(p, c, where)) break;
        expect_premises(p.children[0], gamma, where);
        expect_conclusion(p.children[0], instantiate(c, *p.instance), where);
        expect_discharged(p, {}, where);
        return used[0];
      }

      case Rule::ExistsIntro: {
        if (!c.is(Connective::Exists)) {
          fail(where, "ExistsIntro conclusion is not existential");
          break;
        }
        if (!expect_children(p, where, 1)) break;
        if (!p.instance || p.instance->is_variable()) {
          fail(where, "ExistsIntro without a witness");
          break;
        }
        expect_premises(p.children[0], gamma, where);
        expect_conclusion(p.children[0], instantiate(c, *p.instance), where);
        expect_discharged(p, {}, where);
        return used[0];
      }

      case Rule::AndElim: {
        if (!expect_major(p, Connective::And, where) || !expect_children(p, where, 1)) break;
        const Formula& m = *p.major;
        const Proof& sub = p.children[0];
        expect_premises(sub, plus(minus_one(gamma, m), {m.left(), m.right()}), where);
        expect_conclusion(sub, c, where);
        expect_discharged(p, {m.left(), m.right()}, where);
        if (!discharge_used(p.rule, {m.left(), m.right()}, used[0])) {
          fail(where, "vacuous discharge: neither conjunct of " + format_formula(m) + " is used");
        }
        result = used[0];
        remove(result, m.left());
        remove(result, m.right());
        add(result, m);
        return result;
      }

      case Rule::OrElim: {
        if (!expect_major(p, Connective::Or, where) || !expect_children(p, where, 2)) break;
        const Formula& m = *p.major;
        auto rest = minus_one(gamma, m);
        expect_premises(p.children[0], plus(rest, {m.left()}), where);
        expect_premises(p.children[1], plus(rest, {m.right()}), where);
        const Formula& c0 = p.children[0].sequent.conclusion;
        const Formula& c1 = p.children[1].sequent.conclusion;
        const Formula& expected = c0.is_falsum() ? c1 : c0;
        if (!(c0 == c1 || c0.is_falsum() || c1.is_falsum())) {
          fail(where, "OrElim cases end in different conclusions");
        } else if (!(expected == c)) {
          fail(where, "OrElim conclusion does not match its cases");
        }
        expect_discharged(p, {m.left(), m.right()}, where);
        if (!discharge_used(p.rule, {m.left()}, used[0])) fail(where, "vacuous discharge of " + format_formula(m.left()));
        if (!discharge_used(p.rule, {m.right()}, used[1])) fail(where, "vacuous discharge of " + format_formula(m.right()));
        result = used[0];
        remove(result, m.left());
        FormulaSet second = used[1];
        remove(second, m.right());
        for (const auto& f : second) add(result, f);
        add(result, m);
        return result;
      }

      case Rule::ImpElim: {
        if (!expect_major(p, Connective::Implies, where) || !expect_children(p, where, 2)) break;
        const Formula& m = *p.major;
        auto rest = minus_one(gamma, m);
        expect_premises(p.children[0], rest, where);
        expect_conclusion(p.children[0], m.left(), where);
        expect_premises(p.children[1], plus(rest, {m.right()}), where);
        expect_conclusion(p.children[1], c, where);
        expect_discharged(p, {m.right()}, where);
        if (!discharge_used(p.rule, {m.right()}, used[1])) fail(where, "vacuous discharge of " + format_formula(m.right()));
        result = used[0];
        FormulaSet second = used[1];
        remove(second, m.right());
        for (const auto& f : second) add(result, f);
        add(result, m);
        return result;
      }

      case Rule::NegElim: {
        if (!expect_major(p, Connective::Not, where) || !expect_children(p, where, 1)) break;
        const Formula& m = *p.major;
        if (!c.is_falsum()) fail(where, "NegElim must conclude bot");
        expect_premises(p.children[0], minus_one(gamma, m), where);
        expect_conclusion(p.children[0], m.body(), where);
        expect_discharged(p, {}, where);
        result = used[0];
        add(result, m);
        return result;
      }

      case Rule::ForAllElim:
      case Rule::ExistsElim: {
        Connective q = p.rule == Rule::ForAllElim ? Connective::ForAll : Connective::Exists;
        if (!expect_major(p, q, where) || !expect_children(p, where, 1)) break;
        const Formula& m = *p.major;
        if (!p.instance || p.instance->is_variable()) {
          fail(where, "quantifier elimination without a term");
          break;
        }
        if (p.rule == Rule::ExistsElim && !expect_fresh(p, c, where)) break;
        Formula inst = instantiate(m, *p.instance);
        expect_premises(p.children[0], plus(minus_one(gamma, m), {inst}), where);
        expect_conclusion(p.children[0], c, where);
        expect_discharged(p, {inst}, where);
        if (!discharge_used(p.rule, {inst}, used[0])) fail(where, "vacuous discharge of " + format_formula(inst));
        result = used[0];
        remove(result, inst);
        add(result, m);
        return result;
      }
    }
    for (const auto& u : used) {
      for (const auto& f : u) add(result, f);
    }
    return result;
  }
};

}  // namespace

Verdict check_proof(const Proof& p) {
  Checker checker;
  checker.check(p, "");
  return std::move(checker.verdict);
}

}  // namespace coreq
