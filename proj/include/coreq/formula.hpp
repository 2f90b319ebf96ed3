#ifndef COREQ_FORMULA_HPP_
#define COREQ_FORMULA_HPP_

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coreq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the formula and sequent parsers. `position` is a 0-based byte
// offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class CaptureError : public Error {
 public:
  using Error::Error;
};

// An individual. Identifiers starting with u..z are variables, everything
// else lowercase is a constant.
struct Term {
  enum class Kind { Constant, Variable };
  Kind kind = Kind::Constant;
  std::string name;

  static Term constant(std::string name);
  static Term variable(std::string name);

  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

// True when `name` lexically denotes a variable.
bool is_variable_name(std::string_view name);

enum class Connective { Atom, Falsum, Not, And, Or, Implies, ForAll, Exists };

// Immutable, structurally shared formula tree with value semantics.
class Formula {
 public:
  static Formula atom(std::string predicate, Term argument);
  static Formula falsum();
  static Formula negation(Formula child);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula implication(Formula antecedent, Formula consequent);
  static Formula forall(std::string variable, Formula body);
  static Formula exists(std::string variable, Formula body);

  Connective kind() const;
  bool is(Connective c) const { return kind() == c; }
  bool is_atom() const { return is(Connective::Atom); }
  bool is_falsum() const { return is(Connective::Falsum); }
  // Atoms and falsum.
  bool is_atomic() const { return is_atom() || is_falsum(); }
  bool is_quantifier() const { return is(Connective::ForAll) || is(Connective::Exists); }

  const std::string& predicate() const;
  const Term& argument() const;
  const std::string& variable() const;

  std::size_t arity() const;
  const Formula& child(std::size_t i) const;
  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(1); }
  const Formula& body() const { return child(0); }

  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  // Total structural order; used to key premise multisets.
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  friend unsigned complexity(const Formula& f);
  friend unsigned weighted_complexity(const Formula& f);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Structural complexity: 0 for atoms and falsum, else 1 + sum over children.
unsigned complexity(const Formula& f);
// Connective-weighted complexity: and 1, or 2, not 3, implies 4, quantifiers 5.
unsigned weighted_complexity(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> constants(const Formula& f);
bool is_sentence(const Formula& f);

// Replaces free occurrences of `variable` with `term`. Throws CaptureError
// when `term` is a variable that a binder inside `f` would capture.
Formula substitute(const Formula& f, const std::string& variable, const Term& term);

// Renames bound variables to v<depth>, where depth counts enclosing binders.
Formula canonicalize(const Formula& f);

Formula parse_formula(std::string_view text);
std::string format_formula(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace coreq

#endif  // COREQ_FORMULA_HPP_
