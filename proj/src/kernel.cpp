#include "coreq/kernel.hpp"

#include <algorithm>
#include <array>

namespace coreq {

namespace {

struct RuleInfo {
  Rule rule;
  std::string_view name;
  int tier;
  bool elimination;
};

// Hypothesis > NegElim > AndElim > ImpElim > OrElim > AndIntro > NegIntro >
// ImpIntro > ForAllIntro > ExistsElim > ForAllElim > ExistsIntro > OrIntro
constexpr std::array<RuleInfo, 14> kRuleInfo = {{
    {Rule::Hypothesis, "Hypothesis", 0, false},
    {Rule::AndIntro, "AndIntro", 5, false},
    {Rule::AndElim, "AndElim", 2, true},
    {Rule::OrIntroL, "OrIntroL", 12, false},
    {Rule::OrIntroR, "OrIntroR", 12, false},
    {Rule::OrElim, "OrElim", 4, true},
    {Rule::ImpIntro, "ImpIntro", 7, false},
    {Rule::ImpElim, "ImpElim", 3, true},
    {Rule::NegIntro, "NegIntro", 6, false},
    {Rule::NegElim, "NegElim", 1, true},
    {Rule::ForAllIntro, "ForAllIntro", 8, false},
    {Rule::ForAllElim, "ForAllElim", 10, true},
    {Rule::ExistsIntro, "ExistsIntro", 11, false},
    {Rule::ExistsElim, "ExistsElim", 9, true},
}};

const RuleInfo& info(Rule r) { return kRuleInfo[static_cast<std::size_t>(r)]; }

std::vector<Formula> without(const std::vector<Formula>& premises, const Formula& f) {
  std::vector<Formula> out = premises;
  auto it = std::find(out.begin(), out.end(), f);
  if (it != out.end()) out.erase(it);
  return out;
}

std::vector<Formula> with(std::vector<Formula> premises, std::initializer_list<Formula> extra) {
  premises.insert(premises.end(), extra.begin(), extra.end());
  return premises;
}

Connective major_connective(Rule r) {
  switch (r) {
    case Rule::AndElim: return Connective::And;
    case Rule::OrElim: return Connective::Or;
    case Rule::ImpElim: return Connective::Implies;
    case Rule::NegElim: return Connective::Not;
    case Rule::ForAllElim: return Connective::ForAll;
    case Rule::ExistsElim: return Connective::Exists;
    default: return Connective::Atom;
  }
}

std::string constant_name(std::size_t k) {
  std::string name(1, static_cast<char>('a' + k % 20));
  if (k >= 20) name += std::to_string(k / 20);
  return name;
}

}  // namespace

std::string_view rule_name(Rule r) { return info(r).name; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& ri : kRuleInfo) {
    if (ri.name == name) return ri.rule;
  }
  return std::nullopt;
}

bool is_elimination(Rule r) { return info(r).elimination; }

bool takes_instance(Rule r) {
  return r == Rule::ForAllIntro || r == Rule::ForAllElim || r == Rule::ExistsIntro ||
         r == Rule::ExistsElim;
}

int rule_tier(Rule r) { return info(r).tier; }

std::string format_action(const Action& a) {
  std::string out(rule_name(a.rule));
  if (a.major) out += " [" + format_formula(*a.major) + "]";
  if (a.instance) out += " @" + a.instance->name;
  return out;
}

std::string fresh_constant(const Sequent& s) {
  auto used = s.constants();
  for (std::size_t k = 0;; ++k) {
    std::string name = constant_name(k);
    if (used.count(name) == 0) return name;
  }
}

std::vector<Term> instantiation_terms(const Sequent& s) {
  std::vector<Term> out;
  for (const auto& c : s.constants()) out.push_back(Term::constant(c));
  out.push_back(Term::constant(fresh_constant(s)));
  return out;
}

Formula instantiate(const Formula& quantified, const Term& t) {
  return canonicalize(substitute(quantified.body(), quantified.variable(), t));
}

std::vector<Action> applicable_actions(const Goal& g) {
  const Sequent& s = g.sequent;
  const Formula& c = s.conclusion;
  std::vector<Action> out;

  if (s.has_premise(c) || (g.absurd_ok && s.has_premise(Formula::falsum()))) {
    out.push_back({Rule::Hypothesis, std::nullopt, std::nullopt});
  }

  std::vector<Term> terms;
  auto need_terms = [&]() -> const std::vector<Term>& {
    if (terms.empty()) terms = instantiation_terms(s);
    return terms;
  };

  switch (c.kind()) {
    case Connective::And: out.push_back({Rule::AndIntro, std::nullopt, std::nullopt}); break;
    case Connective::Or:
      out.push_back({Rule::OrIntroL, std::nullopt, std::nullopt});
      out.push_back({Rule::OrIntroR, std::nullopt, std::nullopt});
      break;
    case Connective::Implies: out.push_back({Rule::ImpIntro, std::nullopt, std::nullopt}); break;
    case Connective::Not: out.push_back({Rule::NegIntro, std::nullopt, std::nullopt}); break;
    case Connective::ForAll:
      out.push_back({Rule::ForAllIntro, std::nullopt, Term::constant(fresh_constant(s))});
      break;
    case Connective::Exists:
      for (const auto& t : need_terms()) out.push_back({Rule::ExistsIntro, std::nullopt, t});
      break;
    default: break;
  }

  const bool falsum_sought = c.is_falsum() || g.absurd_ok;
  for (std::size_t i = 0; i < s.premises.size(); ++i) {
    const Formula& p = s.premises[i];
    if (std::find(s.premises.begin(), s.premises.begin() + static_cast<std::ptrdiff_t>(i), p) !=
        s.premises.begin() + static_cast<std::ptrdiff_t>(i)) {
      continue;  // duplicate premise; first occurrence stands for it
    }
    switch (p.kind()) {
      case Connective::And: out.push_back({Rule::AndElim, p, std::nullopt}); break;
      case Connective::Or: out.push_back({Rule::OrElim, p, std::nullopt}); break;
      case Connective::Implies: out.push_back({Rule::ImpElim, p, std::nullopt}); break;
      case Connective::Not:
        if (falsum_sought) out.push_back({Rule::NegElim, p, std::nullopt});
        break;
      case Connective::ForAll:
        for (const auto& t : need_terms()) out.push_back({Rule::ForAllElim, p, t});
        break;
      case Connective::Exists:
        out.push_back({Rule::ExistsElim, p, Term::constant(fresh_constant(s))});
        break;
      default: break;
    }
  }

  // Premise order within a tier is already the insertion order.
  std::stable_sort(out.begin(), out.end(),
                   [](const Action& a, const Action& b) { return rule_tier(a.rule) < rule_tier(b.rule); });
  return out;
}

bool is_applicable(const Goal& g, const Action& a) {
  // Cheap structural pre-check before enumerating.
  if (is_elimination(a.rule)) {
    if (!a.major || !g.sequent.has_premise(*a.major) || !a.major->is(major_connective(a.rule))) {
      return false;
    }
  } else if (a.major) {
    return false;
  }
  auto all = applicable_actions(g);
  return std::find(all.begin(), all.end(), a) != all.end();
}

std::vector<Goal> apply_action(const Goal& g, const Action& a) {
  if (!is_applicable(g, a)) {
    throw InapplicableAction("action " + format_action(a) + " is not applicable to " +
                             format_sequent(g.sequent));
  }
  const auto& gamma = g.sequent.premises;
  const Formula& c = g.sequent.conclusion;
  auto goal = [](std::vector<Formula> premises, Formula conclusion, bool absurd) {
    Sequent s;
    s.premises = std::move(premises);
    s.conclusion = std::move(conclusion);
    return Goal(std::move(s), absurd);
  };

  switch (a.rule) {
    case Rule::Hypothesis: return {};
    case Rule::AndIntro: return {goal(gamma, c.left(), false), goal(gamma, c.right(), false)};
    case Rule::OrIntroL: return {goal(gamma, c.left(), false)};
    case Rule::OrIntroR: return {goal(gamma, c.right(), false)};
    case Rule::ImpIntro: return {goal(with(gamma, {c.left()}), c.right(), true)};
    case Rule::NegIntro: return {goal(with(gamma, {c.body()}), Formula::falsum(), false)};
    case Rule::ForAllIntro:
    case Rule::ExistsIntro: return {goal(gamma, instantiate(c, *a.instance), false)};
    default: break;
  }

  const Formula& m = *a.major;
  auto rest = without(gamma, m);
  switch (a.rule) {
    case Rule::AndElim: return {goal(with(rest, {m.left(), m.right()}), c, g.absurd_ok)};
    case Rule::OrElim:
      return {goal(with(rest, {m.left()}), c, true), goal(with(rest, {m.right()}), c, true)};
    case Rule::ImpElim:
      return {goal(rest, m.left(), false), goal(with(rest, {m.right()}), c, g.absurd_ok)};
    case Rule::NegElim: return {goal(rest, m.body(), false)};
    case Rule::ForAllElim:
    case Rule::ExistsElim: return {goal(with(rest, {instantiate(m, *a.instance)}), c, g.absurd_ok)};
    default: break;
  }
  throw InapplicableAction("unhandled rule");
}

std::size_t proof_length(const Proof& p) {
  std::size_t n = p.rule == Rule::Hypothesis ? 0 : 1;
  for (const auto& child : p.children) n += proof_length(child);
  return n;
}

namespace {

void format_proof_into(const Proof& p, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += rule_name(p.rule);
  out += ": ";
  out += format_sequent(p.sequent);
  if (p.major) out += "  [major " + format_formula(*p.major) + "]";
  if (p.instance) out += "  [term " + p.instance->name + "]";
  out += '\n';
  for (const auto& child : p.children) format_proof_into(child, depth + 1, out);
}

}  // namespace

std::string format_proof(const Proof& p) {
  std::string out;
  format_proof_into(p, 0, out);
  return out;
}

}  // namespace coreq
