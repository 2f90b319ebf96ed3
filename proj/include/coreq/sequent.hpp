#ifndef COREQ_SEQUENT_HPP_
#define COREQ_SEQUENT_HPP_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coreq/formula.hpp"

namespace coreq {

// A problem state: an ordered multiset of premises and a sought conclusion.
struct Sequent {
  std::vector<Formula> premises;
  Formula conclusion = Formula::falsum();

  bool has_premise(const Formula& f) const;
  std::set<std::string> constants() const;

  // Order-insensitive multiset equality.
  bool same_as(const Sequent& other) const;

  // Premise order matters here.
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

// Canonicalizes every member formula. Throws Error when one is not closed.
Sequent make_sequent(std::vector<Formula> premises, Formula conclusion);

// "P1, P2 |- C"; the premise list may be empty ("|- C").
Sequent parse_sequent(std::string_view text);
std::string format_sequent(const Sequent& s);

std::vector<Formula> sorted_premises(const Sequent& s);

}  // namespace coreq

#endif  // COREQ_SEQUENT_HPP_
