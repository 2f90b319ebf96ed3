#ifndef COREQ_GEN_HPP_
#define COREQ_GEN_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "coreq/formula.hpp"
#include "coreq/problem_io.hpp"
#include "coreq/qlearn.hpp"
#include "coreq/sequent.hpp"

namespace coreq {

struct GenConfig {
  std::size_t num_predicates = 3;
  std::size_t num_individuals = 3;
  std::set<Connective> connectives = {Connective::Not,     Connective::And,    Connective::Or,
                                      Connective::Implies, Connective::ForAll, Connective::Exists};
  std::size_t max_depth = 4;  // connective nesting of each sampled formula
  std::size_t max_premises = 3;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::size_t solve_budget = 500;
  std::size_t jobs = 1;

  void validate() const;
};

class SpaceExhausted : public Error {
 public:
  using Error::Error;
};

// Alphabet used by the generator: A, B, C, ... and a, b, c, ...
std::string predicate_name(std::size_t i);
std::string individual_name(std::size_t i);

std::set<Connective> parse_connectives(const std::string& list);

// One closed formula drawn by uniform choice over {atom} and the enabled
// connectives at each level; at the depth bound only atoms remain.
Formula random_formula(const GenConfig& cfg, Rng& rng);
Sequent random_sequent(const GenConfig& cfg, Rng& rng);

// Baseline verdict within the budget; empty when the budget runs out.
std::optional<Label> decide(const Sequent& s, std::size_t budget);

// Exactly cfg.count decided, pairwise distinct problems. Throws
// SpaceExhausted when too many candidates fail to yield a new problem.
std::vector<LabeledProblem> generate_problems(const GenConfig& cfg);

}  // namespace coreq

#endif  // COREQ_GEN_HPP_
