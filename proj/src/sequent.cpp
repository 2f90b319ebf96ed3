#include "coreq/sequent.hpp"

#include <algorithm>

namespace coreq {

bool Sequent::has_premise(const Formula& f) const {
  return std::find(premises.begin(), premises.end(), f) != premises.end();
}

std::set<std::string> Sequent::constants() const {
  std::set<std::string> out = coreq::constants(conclusion);
  for (const auto& p : premises) {
    auto c = coreq::constants(p);
    out.insert(c.begin(), c.end());
  }
  return out;
}

bool Sequent::same_as(const Sequent& other) const {
  return conclusion == other.conclusion && premises.size() == other.premises.size() &&
         sorted_premises(*this) == sorted_premises(other);
}

Sequent make_sequent(std::vector<Formula> premises, Formula conclusion) {
  Sequent s;
  for (auto& p : premises) {
    if (!is_sentence(p)) throw Error("premise '" + format_formula(p) + "' is not a closed sentence");
    s.premises.push_back(canonicalize(p));
  }
  if (!is_sentence(conclusion)) {
    throw Error("conclusion '" + format_formula(conclusion) + "' is not a closed sentence");
  }
  s.conclusion = canonicalize(conclusion);
  return s;
}

std::vector<Formula> sorted_premises(const Sequent& s) {
  std::vector<Formula> out = s.premises;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coreq
