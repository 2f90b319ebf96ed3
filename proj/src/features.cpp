#include "coreq/features.hpp"

#include <algorithm>

namespace coreq {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames = {"ordering", "filter", "A", "B", "C", "D"};

// Path classes used by the backgrounding tiers, from most to least preferred.
enum class Path { Direct, Conjunctive, Disjunctive, Quantified };

double tier_value(Path p) {
  switch (p) {
    case Path::Direct: return 1.0;
    case Path::Conjunctive: return 0.8;
    case Path::Disjunctive: return 0.5;
    case Path::Quantified: return 0.25;
  }
  return -1.0;
}

// Atom with a bound variable matches any ground instance of its predicate.
bool atom_matches(const Formula& candidate, const Formula& goal) {
  if (!candidate.is_atom()) return false;
  if (candidate.predicate() != goal.predicate()) return false;
  return candidate.argument().is_variable() || candidate.argument() == goal.argument();
}

// Best path class reaching `goal` through elimination-accessible positions
// (conjuncts, disjuncts, consequents, quantifier bodies).
std::optional<Path> search_accessible(const Formula& f, const Formula& goal, Path so_far) {
  if (atom_matches(f, goal)) return so_far;
  auto worse = [](Path a, Path b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; };
  std::optional<Path> best;
  auto consider = [&](const Formula& child, Path via) {
    auto r = search_accessible(child, goal, worse(so_far, via));
    if (r && (!best || static_cast<int>(*r) < static_cast<int>(*best))) best = r;
  };
  switch (f.kind()) {
    case Connective::And:
      consider(f.left(), Path::Conjunctive);
      consider(f.right(), Path::Conjunctive);
      break;
    case Connective::Or:
      consider(f.left(), Path::Disjunctive);
      consider(f.right(), Path::Disjunctive);
      break;
    case Connective::Implies: consider(f.right(), Path::Conjunctive); break;
    case Connective::ForAll:
    case Connective::Exists: consider(f.body(), Path::Quantified); break;
    default: break;
  }
  return best;
}

double major_score(const Action& a, unsigned max_value, unsigned (*measure)(const Formula&)) {
  if (!a.major || max_value == 0) return 0.0;
  double v = 1.0 - static_cast<double>(measure(*a.major)) / static_cast<double>(max_value);
  return std::clamp(v, 0.0, 1.0);
}

unsigned max_over(std::span<const Formula> premises, unsigned (*measure)(const Formula&)) {
  unsigned best = 0;
  for (const auto& p : premises) best = std::max(best, measure(p));
  return best;
}

}  // namespace

std::string_view feature_name(FeatureId id) { return kNames[static_cast<std::size_t>(id)]; }

FeatureSet::FeatureSet() {
  enable(FeatureId::RuleOrdering);
  enable(FeatureId::BasicRuleFilter);
}

FeatureSet FeatureSet::parse(std::string_view letters) {
  FeatureSet fs;
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = letters.find(',', i);
    if (j == std::string_view::npos) j = letters.size();
    std::string_view tok = letters.substr(i, j - i);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok == "A") {
      fs.enable(FeatureId::AtomicAccessibility);
    } else if (tok == "B") {
      fs.enable(FeatureId::MajorComplexity);
    } else if (tok == "C") {
      fs.enable(FeatureId::WeightedMajorComplexity);
    } else if (tok == "D") {
      fs.enable(FeatureId::ShortestPathToGoal);
    } else if (!tok.empty()) {
      throw Error("unknown feature '" + std::string(tok) + "' (expected letters A-D)");
    }
    i = j + 1;
  }
  return fs;
}

FeatureSet FeatureSet::all() { return parse("A,B,C,D"); }

void FeatureSet::enable(FeatureId id) { mask_[static_cast<std::size_t>(id)] = true; }

std::vector<FeatureId> FeatureSet::ids() const {
  std::vector<FeatureId> out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (mask_[i]) out.push_back(static_cast<FeatureId>(i));
  }
  return out;
}

std::size_t FeatureSet::size() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true)); }

std::string FeatureSet::letters() const {
  std::string out;
  for (std::size_t i = 2; i < kFeatureCount; ++i) {
    if (!mask_[i]) continue;
    if (!out.empty()) out += ',';
    out += kNames[i];
  }
  return out;
}

double accessibility_tier(const Formula& atom, std::span<const Formula> premises) {
  if (!atom.is_atom()) return 0.0;
  std::optional<Path> best;
  for (const auto& p : premises) {
    if (p == atom) return tier_value(Path::Direct);
    auto r = search_accessible(p, atom, Path::Conjunctive);
    if (r && (!best || static_cast<int>(*r) < static_cast<int>(*best))) best = r;
  }
  return best ? tier_value(*best) : -1.0;
}

double rule_ordering(const Goal&, const Action& a) {
  return static_cast<double>(kRuleTiers - 1 - rule_tier(a.rule)) / static_cast<double>(kRuleTiers - 1);
}

double basic_rule_filter(const Goal& s, const Action& a) { return is_applicable(s, a) ? 1.0 : -1.0; }

double atomic_accessibility(const Goal& s, const Action&) {
  return accessibility_tier(s.sequent.conclusion, s.sequent.premises);
}

double major_complexity_score(const Goal& s, const Action& a) {
  return major_score(a, max_over(s.sequent.premises, &complexity), &complexity);
}

double weighted_major_complexity_score(const Goal& s, const Action& a) {
  return major_score(a, max_over(s.sequent.premises, &weighted_complexity), &weighted_complexity);
}

double shortest_path_score(const Goal&, const Action& a, const ProblemGraph& g) {
  if (!a.major) return 0.0;
  auto from = g.node_of(*a.major);
  if (!from) return 0.0;
  auto d = g.distance(*from, g.conclusion_node());
  if (!d) return 0.0;
  return 1.0 / (1.0 + static_cast<double>(*d));
}

FeatureVector feature_vector(const Goal& s, const Action& a, const FeatureSet& enabled, const ProblemGraph& g) {
  return FeatureContext(s, &g).vector(a, enabled);
}

FeatureContext::FeatureContext(const Goal& s, const ProblemGraph* g)
    : goal_(s),
      graph_(g),
      applicable_(applicable_actions(s)),
      accessibility_(accessibility_tier(s.sequent.conclusion, s.sequent.premises)),
      max_complexity_(max_over(s.sequent.premises, &complexity)),
      max_weighted_(max_over(s.sequent.premises, &weighted_complexity)) {}

double FeatureContext::value(FeatureId id, const Action& a) const {
  switch (id) {
    case FeatureId::RuleOrdering: return rule_ordering(goal_, a);
    case FeatureId::BasicRuleFilter:
      return std::find(applicable_.begin(), applicable_.end(), a) != applicable_.end() ? 1.0 : -1.0;
    case FeatureId::AtomicAccessibility: return accessibility_;
    case FeatureId::MajorComplexity: return major_score(a, max_complexity_, &complexity);
    case FeatureId::WeightedMajorComplexity: return major_score(a, max_weighted_, &weighted_complexity);
    case FeatureId::ShortestPathToGoal:
      if (!graph_) throw Error("shortest-path feature requires the problem graph");
      return shortest_path_score(goal_, a, *graph_);
  }
  return 0.0;
}

FeatureVector FeatureContext::vector(const Action& a, const FeatureSet& enabled) const {
  FeatureVector out;
  for (FeatureId id : enabled.ids()) out.push_back(value(id, a));
  return out;
}

}  // namespace coreq
