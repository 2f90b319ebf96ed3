#include "coreq/formula.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <utility>

namespace coreq {

ParseError::ParseError(const std::string& message, std::size_t position)
    : Error(message + " at position " + std::to_string(position)), position_(position) {}

Term Term::constant(std::string name) {
  if (name.empty() || is_variable_name(name)) {
    throw Error("invalid constant name '" + name + "'");
  }
  return Term{Kind::Constant, std::move(name)};
}

Term Term::variable(std::string name) {
  if (!is_variable_name(name)) {
    throw Error("invalid variable name '" + name + "'");
  }
  return Term{Kind::Variable, std::move(name)};
}

bool is_variable_name(std::string_view name) {
  return !name.empty() && name.front() >= 'u' && name.front() <= 'z';
}

struct Formula::Node {
  Connective kind;
  std::string name;  // predicate for atoms, bound variable for quantifiers
  Term term;         // atoms only
  std::vector<Formula> children;
  std::size_t hash = 0;
  unsigned complexity = 0;
  unsigned weighted = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

unsigned connective_weight(Connective c) {
  switch (c) {
    case Connective::And: return 1;
    case Connective::Or: return 2;
    case Connective::Not: return 3;
    case Connective::Implies: return 4;
    case Connective::ForAll:
    case Connective::Exists: return 5;
    default: return 0;
  }
}

}  // namespace

Formula Formula::atom(std::string predicate, Term argument) {
  if (predicate.empty() || !(predicate.front() >= 'A' && predicate.front() <= 'Z')) {
    throw Error("predicate names must start with an uppercase letter: '" + predicate + "'");
  }
  auto node = std::make_shared<Node>();
  node->kind = Connective::Atom;
  node->name = std::move(predicate);
  node->term = std::move(argument);
  std::hash<std::string> h;
  node->hash = mix(mix(mix(1, h(node->name)), h(node->term.name)),
                   static_cast<std::size_t>(node->term.kind));
  return Formula(std::move(node));
}

Formula Formula::falsum() {
  static const Formula bot = [] {
    auto node = std::make_shared<Node>();
    node->kind = Connective::Falsum;
    node->hash = 2;
    return Formula(std::move(node));
  }();
  return bot;
}

Formula Formula::negation(Formula child) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Not;
  node->children = {std::move(child)};
  node->hash = mix(3, node->children[0].hash());
  node->complexity = 1 + complexity(node->children[0]);
  node->weighted = 1 + 3 * weighted_complexity(node->children[0]);
  return Formula(std::move(node));
}

namespace {

template <typename NodeT>
void finish_binary(NodeT& node) {
  const Formula& l = node.children[0];
  const Formula& r = node.children[1];
  node.hash = mix(mix(static_cast<std::size_t>(node.kind) + 10, l.hash()), r.hash());
  node.complexity = 1 + complexity(l) + complexity(r);
  node.weighted =
      1 + connective_weight(node.kind) * (weighted_complexity(l) + weighted_complexity(r));
}

}  // namespace

Formula Formula::conjunction(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::And;
  node->children = {std::move(left), std::move(right)};
  finish_binary(*node);
  return Formula(std::move(node));
}

Formula Formula::disjunction(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Or;
  node->children = {std::move(left), std::move(right)};
  finish_binary(*node);
  return Formula(std::move(node));
}

Formula Formula::implication(Formula antecedent, Formula consequent) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Implies;
  node->children = {std::move(antecedent), std::move(consequent)};
  finish_binary(*node);
  return Formula(std::move(node));
}

namespace {

template <typename NodeT>
void finish_quantifier(NodeT& node) {
  if (!is_variable_name(node.name)) {
    throw Error("quantified name '" + node.name + "' is not a variable");
  }
  const Formula& b = node.children[0];
  node.hash = mix(mix(static_cast<std::size_t>(node.kind) + 20, std::hash<std::string>{}(node.name)),
                  b.hash());
  node.complexity = 1 + complexity(b);
  node.weighted = 1 + 5 * weighted_complexity(b);
}

}  // namespace

Formula Formula::forall(std::string variable, Formula body) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::ForAll;
  node->name = std::move(variable);
  node->children = {std::move(body)};
  finish_quantifier(*node);
  return Formula(std::move(node));
}

Formula Formula::exists(std::string variable, Formula body) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Exists;
  node->name = std::move(variable);
  node->children = {std::move(body)};
  finish_quantifier(*node);
  return Formula(std::move(node));
}

Connective Formula::kind() const { return node_->kind; }

const std::string& Formula::predicate() const {
  if (!is_atom()) throw Error("predicate() on a non-atomic formula");
  return node_->name;
}

const Term& Formula::argument() const {
  if (!is_atom()) throw Error("argument() on a non-atomic formula");
  return node_->term;
}

const std::string& Formula::variable() const {
  if (!is_quantifier()) throw Error("variable() on an unquantified formula");
  return node_->name;
}

std::size_t Formula::arity() const { return node_->children.size(); }

const Formula& Formula::child(std::size_t i) const {
  if (i >= node_->children.size()) throw Error("formula child index out of range");
  return node_->children[i];
}

std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.name != y.name || x.term != y.term ||
      x.children.size() != y.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.term <=> y.term; c != 0) return c;
  for (std::size_t i = 0; i < x.children.size() && i < y.children.size(); ++i) {
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  }
  return x.children.size() <=> y.children.size();
}

unsigned complexity(const Formula& f) { return f.node_->complexity; }

unsigned weighted_complexity(const Formula& f) { return f.node_->weighted; }

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      if (f.argument().is_variable() &&
          std::find(bound.begin(), bound.end(), f.argument().name) == bound.end()) {
        out.insert(f.argument().name);
      }
      return;
    case Connective::Falsum: return;
    case Connective::ForAll:
    case Connective::Exists:
      bound.push_back(f.variable());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      for (std::size_t i = 0; i < f.arity(); ++i) collect_free(f.child(i), bound, out);
  }
}

void collect_constants(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    if (!f.argument().is_variable()) out.insert(f.argument().name);
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_constants(f.child(i), out);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> constants(const Formula& f) {
  std::set<std::string> out;
  collect_constants(f, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> children) {
  switch (f.kind()) {
    case Connective::Not: return Formula::negation(std::move(children[0]));
    case Connective::And: return Formula::conjunction(std::move(children[0]), std::move(children[1]));
    case Connective::Or: return Formula::disjunction(std::move(children[0]), std::move(children[1]));
    case Connective::Implies:
      return Formula::implication(std::move(children[0]), std::move(children[1]));
    case Connective::ForAll: return Formula::forall(f.variable(), std::move(children[0]));
    case Connective::Exists: return Formula::exists(f.variable(), std::move(children[0]));
    default: return f;
  }
}

Formula substitute_impl(const Formula& f, const std::string& var, const Term& term) {
  switch (f.kind()) {
    case Connective::Atom:
      if (f.argument().is_variable() && f.argument().name == var) {
        return Formula::atom(f.predicate(), term);
      }
      return f;
    case Connective::Falsum: return f;
    case Connective::ForAll:
    case Connective::Exists: {
      if (f.variable() == var) return f;
      if (term.is_variable() && term.name == f.variable() &&
          free_variables(f.body()).count(var) != 0) {
        throw CaptureError("substituting " + term.name + " for " + var +
                           " would be captured by a binder");
      }
      Formula body = substitute_impl(f.body(), var, term);
      if (body == f.body()) return f;
      return rebuild(f, {std::move(body)});
    }
    default: {
      std::vector<Formula> children;
      bool changed = false;
      for (std::size_t i = 0; i < f.arity(); ++i) {
        children.push_back(substitute_impl(f.child(i), var, term));
        changed = changed || !(children.back() == f.child(i));
      }
      return changed ? rebuild(f, std::move(children)) : f;
    }
  }
}

Formula canonicalize_impl(const Formula& f, std::vector<std::pair<std::string, std::string>>& scope) {
  switch (f.kind()) {
    case Connective::Atom: {
      const Term& t = f.argument();
      if (!t.is_variable()) return f;
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == t.name) {
          if (it->second == t.name) return f;
          return Formula::atom(f.predicate(), Term::variable(it->second));
        }
      }
      return f;
    }
    case Connective::Falsum: return f;
    case Connective::ForAll:
    case Connective::Exists: {
      std::string fresh = "v" + std::to_string(scope.size());
      scope.emplace_back(f.variable(), fresh);
      Formula body = canonicalize_impl(f.body(), scope);
      scope.pop_back();
      return f.is(Connective::ForAll) ? Formula::forall(fresh, std::move(body))
                                      : Formula::exists(fresh, std::move(body));
    }
    default: {
      std::vector<Formula> children;
      for (std::size_t i = 0; i < f.arity(); ++i) children.push_back(canonicalize_impl(f.child(i), scope));
      return rebuild(f, std::move(children));
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::string& variable, const Term& term) {
  return substitute_impl(f, variable, term);
}

Formula canonicalize(const Formula& f) {
  std::vector<std::pair<std::string, std::string>> scope;
  return canonicalize_impl(f, scope);
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << format_formula(f); }

}  // namespace coreq
