#ifndef COREQ_KERNEL_HPP_
#define COREQ_KERNEL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coreq/formula.hpp"
#include "coreq/sequent.hpp"

namespace coreq {

// Core Logic inference rules. Eliminations are in parallelized form: the
// major premise is taken from the assumptions and the minor subproof carries
// the sought conclusion.
enum class Rule {
  Hypothesis,
  AndIntro,
  AndElim,
  OrIntroL,
  OrIntroR,
  OrElim,
  ImpIntro,
  ImpElim,
  NegIntro,
  NegElim,
  ForAllIntro,
  ForAllElim,
  ExistsIntro,
  ExistsElim,
};

inline constexpr Rule kAllRules[] = {
    Rule::Hypothesis, Rule::AndIntro,    Rule::AndElim,    Rule::OrIntroL,    Rule::OrIntroR,
    Rule::OrElim,     Rule::ImpIntro,    Rule::ImpElim,    Rule::NegIntro,    Rule::NegElim,
    Rule::ForAllIntro, Rule::ForAllElim, Rule::ExistsIntro, Rule::ExistsElim,
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
bool is_elimination(Rule r);
bool takes_instance(Rule r);

// Priority tier of a rule, 0 for the most preferred (Hypothesis). The two
// disjunction introductions share the last tier.
int rule_tier(Rule r);
inline constexpr int kRuleTiers = 13;

class InapplicableAction : public Error {
 public:
  using Error::Error;
};

// A rule together with its major premise (eliminations only) and the term
// used by the quantifier rules.
struct Action {
  Rule rule = Rule::Hypothesis;
  std::optional<Formula> major;
  std::optional<Term> instance;

  friend bool operator==(const Action&, const Action&) = default;
};

std::string format_action(const Action& a);

// A sub-problem as the engine sees it. When `absurd_ok` is set the goal is
// also closed by deriving falsum instead of the conclusion; this is how the
// liberalized disjunction-elimination cases and the second form of
// conditional introduction are expressed.
struct Goal {
  Sequent sequent;
  bool absurd_ok = false;

  Goal() = default;
  Goal(Sequent s, bool absurd = false) : sequent(std::move(s)), absurd_ok(absurd) {}  // NOLINT

  bool accepts(const Formula& proved) const {
    return proved == sequent.conclusion || (absurd_ok && proved.is_falsum());
  }
};

// First constant in a, b, ..., t, a1, b1, ... that does not occur in `s`.
std::string fresh_constant(const Sequent& s);
// Constants of `s` in lexical order followed by one fresh parameter.
std::vector<Term> instantiation_terms(const Sequent& s);

// Every action passing the hard applicability test, in canonical order
// (rule tier, premise position, instantiation term).
std::vector<Action> applicable_actions(const Goal& g);
bool is_applicable(const Goal& g, const Action& a);

// Conjunctive sub-problems produced by `a`; throws InapplicableAction.
std::vector<Goal> apply_action(const Goal& g, const Action& a);

// Instance of a quantified formula's body, canonicalized.
Formula instantiate(const Formula& quantified, const Term& t);

struct Proof {
  Sequent sequent;  // premises available at the node and the formula it proves
  Rule rule = Rule::Hypothesis;
  std::optional<Formula> major;
  std::optional<Term> instance;
  std::vector<Proof> children;
  std::vector<Formula> discharged;
};

struct Violation {
  std::string where;  // path of child indices from the root, e.g. "0.1"
  std::string message;
};

struct Verdict {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Independent verifier: rule schemas, majors standing proud, non-vacuous
// discharge and parameter freshness.
Verdict check_proof(const Proof& p);

// Number of inference steps; Hypothesis leaves do not count.
std::size_t proof_length(const Proof& p);

// One node per line, children indented by two spaces.
std::string format_proof(const Proof& p);

}  // namespace coreq

#endif  // COREQ_KERNEL_HPP_
