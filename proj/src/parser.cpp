// Recursive-descent parser and printer for the ASCII formula syntax.
//
//   formula := "bot" | IDENT "(" term ")" | "~" formula
//            | formula "&" formula | formula "|" formula | formula "->" formula
//            | "forall" VAR "." formula | "exists" VAR "." formula
//
// Binding from tightest: ~, &, |, ->. "->" associates to the right, "&" and
// "|" to the left. Quantifier bodies extend as far right as possible.

#include <algorithm>
#include <cctype>

#include "coreq/formula.hpp"
#include "coreq/sequent.hpp"

namespace coreq {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Not, And, Or, Arrow, Dot, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view in) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < in.size()) {
    char ch = in[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < in.size() && (std::isalnum(static_cast<unsigned char>(in[i])) || in[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(in.substr(start, i - start)), start});
      continue;
    }
    switch (ch) {
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case ',': out.push_back({Tok::Comma, ",", start}); ++i; continue;
      case '~': out.push_back({Tok::Not, "~", start}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", start}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
      case '|':
        if (i + 1 < in.size() && in[i + 1] == '-') {
          out.push_back({Tok::Turnstile, "|-", start});
          i += 2;
        } else {
          out.push_back({Tok::Or, "|", start});
          ++i;
        }
        continue;
      case '-':
        if (i + 1 < in.size() && in[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", start});
          i += 2;
          continue;
        }
        break;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", start);
  }
  out.push_back({Tok::End, "", in.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Formula formula() { return implication(); }

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) {
      throw ParseError(std::string("expected ") + what + (at(Tok::End) ? " but reached end of input"
                                                                        : " but found '" + peek().text + "'"),
                       peek().pos);
    }
    return tokens_[pos_++];
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) {
      Formula rhs = implication();
      return Formula::implication(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (accept(Tok::Or)) lhs = Formula::disjunction(std::move(lhs), conjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (accept(Tok::And)) lhs = Formula::conjunction(std::move(lhs), unary());
    return lhs;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (accept(Tok::LParen)) {
      Formula inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    Token id = expect(Tok::Ident, "a formula");
    if (id.text == "bot") return Formula::falsum();
    if (id.text == "forall" || id.text == "exists") {
      Token var = expect(Tok::Ident, "a bound variable");
      if (!is_variable_name(var.text)) {
        throw ParseError("'" + var.text + "' is not a variable name (variables start with u-z)", var.pos);
      }
      expect(Tok::Dot, "'.'");
      bound_.push_back(var.text);
      Formula body = formula();
      bound_.pop_back();
      return id.text == "forall" ? Formula::forall(var.text, std::move(body))
                                 : Formula::exists(var.text, std::move(body));
    }
    if (!std::isupper(static_cast<unsigned char>(id.text.front()))) {
      throw ParseError("predicate '" + id.text + "' must start with an uppercase letter", id.pos);
    }
    expect(Tok::LParen, "'(' after predicate");
    if (at(Tok::RParen)) {
      throw ParseError("predicate " + id.text + " must have exactly one argument", peek().pos);
    }
    Token arg = expect(Tok::Ident, "a term");
    if (at(Tok::Comma)) {
      throw ParseError("predicate " + id.text + " must have exactly one argument", peek().pos);
    }
    expect(Tok::RParen, "')'");
    if (!std::islower(static_cast<unsigned char>(arg.text.front())) || arg.text == "bot" ||
        arg.text == "forall" || arg.text == "exists") {
      throw ParseError("invalid term '" + arg.text + "'", arg.pos);
    }
    if (is_variable_name(arg.text)) {
      if (std::find(bound_.begin(), bound_.end(), arg.text) == bound_.end()) {
        throw ParseError("unbound variable '" + arg.text + "'", arg.pos);
      }
      return Formula::atom(id.text, Term::variable(arg.text));
    }
    return Formula::atom(id.text, Term::constant(arg.text));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out, bool parens) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

bool is_binary(const Formula& f) {
  return f.is(Connective::And) || f.is(Connective::Or) || f.is(Connective::Implies);
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out += f.predicate();
      out += '(';
      out += f.argument().name;
      out += ')';
      return;
    case Connective::Falsum: out += "bot"; return;
    case Connective::Not:
      out += '~';
      print_operand(f.body(), out, is_binary(f.body()) || f.body().is_quantifier());
      return;
    case Connective::ForAll:
    case Connective::Exists:
      out += f.is(Connective::ForAll) ? "forall " : "exists ";
      out += f.variable();
      out += ". ";
      print(f.body(), out);
      return;
    default: break;
  }
  const char* op = f.is(Connective::And) ? " & " : f.is(Connective::Or) ? " | " : " -> ";
  const Formula& l = f.left();
  const Formula& r = f.right();
  // Mixed binary connectives are always parenthesized for readability; a
  // same-connective operand needs parentheses only on the non-associative side.
  bool right_assoc = f.is(Connective::Implies);
  bool lparen = l.is_quantifier() || (is_binary(l) && (l.kind() != f.kind() || right_assoc));
  bool rparen = r.is_quantifier() || (is_binary(r) && (r.kind() != f.kind() || !right_assoc));
  print_operand(l, out, lparen);
  out += op;
  print_operand(r, out, rparen);
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  if (!p.at(Tok::End)) {
    throw ParseError("unexpected '" + p.peek().text + "' after formula", p.peek().pos);
  }
  return f;
}

std::string format_formula(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(text);
  std::vector<Formula> premises;
  if (!p.at(Tok::Turnstile)) {
    premises.push_back(p.formula());
    while (p.accept(Tok::Comma)) premises.push_back(p.formula());
  }
  p.expect(Tok::Turnstile, "'|-'");
  Formula conclusion = p.formula();
  if (!p.at(Tok::End)) {
    throw ParseError("unexpected '" + p.peek().text + "' after sequent", p.peek().pos);
  }
  return make_sequent(std::move(premises), std::move(conclusion));
}

std::string format_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.premises.size(); ++i) {
    if (i) out += ", ";
    out += format_formula(s.premises[i]);
  }
  out += out.empty() ? "|- " : " |- ";
  out += format_formula(s.conclusion);
  return out;
}

}  // namespace coreq
