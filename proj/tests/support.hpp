#ifndef COREQ_TESTS_SUPPORT_HPP_
#define COREQ_TESTS_SUPPORT_HPP_

#include <string>
#include <vector>

#include "coreq/formula.hpp"
#include "coreq/gen.hpp"
#include "coreq/search.hpp"
#include "coreq/kernel.hpp"
#include "coreq/sequent.hpp"

namespace coreq::test {

inline Formula F(const std::string& text) { return canonicalize(parse_formula(text)); }
inline Sequent S(const std::string& text) { return parse_sequent(text); }
inline Term c(const std::string& name) { return Term::constant(name); }
inline Formula atom(const std::string& p, const std::string& arg) {
  return Formula::atom(p, is_variable_name(arg) ? Term::variable(arg) : Term::constant(arg));
}

// Random closed sentences with every connective enabled.
inline std::vector<Formula> random_formulas(std::size_t n, std::uint64_t seed, std::size_t depth = 4) {
  GenConfig cfg;
  cfg.max_depth = depth;
  Rng rng(seed);
  std::vector<Formula> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_formula(cfg, rng));
  return out;
}

inline std::vector<Sequent> random_sequents(std::size_t n, std::uint64_t seed, std::size_t depth = 3) {
  GenConfig cfg;
  cfg.max_depth = depth;
  Rng rng(seed);
  std::vector<Sequent> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_sequent(cfg, rng));
  return out;
}

}  // namespace coreq::test

#endif  // COREQ_TESTS_SUPPORT_HPP_
