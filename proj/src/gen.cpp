#include "coreq/gen.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

#include "coreq/search.hpp"

namespace coreq {

void GenConfig::validate() const {
  if (num_predicates < 1) throw Error("generator needs at least one predicate");
  if (num_individuals < 1) throw Error("generator needs at least one individual");
  if (count < 1) throw Error("generator count must be at least 1");
  if (solve_budget < 1) throw Error("generator solve budget must be at least 1");
  for (Connective c : connectives) {
    if (c == Connective::Atom || c == Connective::Falsum) throw Error("only connectives may be enabled");
  }
}

std::string predicate_name(std::size_t i) {
  std::string name(1, static_cast<char>('A' + i % 26));
  if (i >= 26) name += std::to_string(i / 26);
  return name;
}

std::string individual_name(std::size_t i) {
  // Names starting with u..z are variables.
  std::string name(1, static_cast<char>('a' + i % 20));
  if (i >= 20) name += std::to_string(i / 20);
  return name;
}

std::set<Connective> parse_connectives(const std::string& list) {
  std::set<Connective> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string tok = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok == "not" || tok == "~") {
      out.insert(Connective::Not);
    } else if (tok == "and" || tok == "&") {
      out.insert(Connective::And);
    } else if (tok == "or" || tok == "|") {
      out.insert(Connective::Or);
    } else if (tok == "implies" || tok == "->") {
      out.insert(Connective::Implies);
    } else if (tok == "forall" || tok == "all") {
      out.insert(Connective::ForAll);
    } else if (tok == "exists" || tok == "some") {
      out.insert(Connective::Exists);
    } else if (!tok.empty()) {
      throw Error("unknown connective '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Formula sample(const GenConfig& cfg, Rng& rng, std::size_t depth, std::vector<std::string>& scope) {
  std::vector<Connective> options{Connective::Atom};
  if (depth < cfg.max_depth) options.insert(options.end(), cfg.connectives.begin(), cfg.connectives.end());
  const Connective chosen = options[pick(rng, options.size())];
  switch (chosen) {
    case Connective::Not: return Formula::negation(sample(cfg, rng, depth + 1, scope));
    case Connective::And: {
      auto l = sample(cfg, rng, depth + 1, scope);
      return Formula::conjunction(l, sample(cfg, rng, depth + 1, scope));
    }
    case Connective::Or: {
      auto l = sample(cfg, rng, depth + 1, scope);
      return Formula::disjunction(l, sample(cfg, rng, depth + 1, scope));
    }
    case Connective::Implies: {
      auto l = sample(cfg, rng, depth + 1, scope);
      return Formula::implication(l, sample(cfg, rng, depth + 1, scope));
    }
    case Connective::ForAll:
    case Connective::Exists: {
      std::string var = "x" + std::to_string(scope.size());
      scope.push_back(var);
      auto body = sample(cfg, rng, depth + 1, scope);
      scope.pop_back();
      return chosen == Connective::ForAll ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    default: {
      std::string pred = predicate_name(pick(rng, cfg.num_predicates));
      std::size_t k = pick(rng, cfg.num_individuals + scope.size());
      Term arg = k < cfg.num_individuals ? Term::constant(individual_name(k))
                                         : Term::variable(scope[k - cfg.num_individuals]);
      return Formula::atom(pred, arg);
    }
  }
}

std::string problem_key(const Sequent& s) {
  std::string key;
  for (const auto& p : sorted_premises(s)) {
    key += format_formula(p);
    key += ';';
  }
  return key + "|-" + format_formula(s.conclusion);
}

}  // namespace

Formula random_formula(const GenConfig& cfg, Rng& rng) {
  std::vector<std::string> scope;
  return sample(cfg, rng, 0, scope);
}

Sequent random_sequent(const GenConfig& cfg, Rng& rng) {
  std::size_t n = pick(rng, cfg.max_premises + 1);
  std::vector<Formula> premises;
  for (std::size_t i = 0; i < n; ++i) premises.push_back(random_formula(cfg, rng));
  return make_sequent(std::move(premises), random_formula(cfg, rng));
}

std::optional<Label> decide(const Sequent& s, std::size_t budget) {
  BaselineStrategy baseline;
  SearchLimits limits;
  limits.max_steps = budget;
  Rng rng(0);
  switch (prove(s, baseline, limits, rng).stats.outcome) {
    case Outcome::Proved: return Label::Provable;
    case Outcome::Refuted: return Label::Refutable;
    case Outcome::BudgetExhausted: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<LabeledProblem> generate_problems(const GenConfig& cfg) {
  cfg.validate();
  const std::size_t max_attempts = std::max<std::size_t>(10000, 100 * cfg.count);
  const std::size_t batch = std::max<std::size_t>(64, 2 * cfg.count);
  const std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);

  Rng rng(cfg.seed);
  std::unordered_set<std::string> seen;
  std::vector<LabeledProblem> out;
  std::size_t attempts = 0;
  while (out.size() < cfg.count) {
    if (attempts >= max_attempts) {
      throw SpaceExhausted("problem space exhausted after " + std::to_string(attempts) + " candidates with " +
                           std::to_string(out.size()) + " of " + std::to_string(cfg.count) + " problems kept");
    }
    // Candidates are drawn sequentially; only the verdicts run in parallel.
    std::vector<Sequent> candidates;
    while (candidates.size() < batch && attempts < max_attempts) {
      ++attempts;
      Sequent s = random_sequent(cfg, rng);
      if (seen.insert(problem_key(s)).second) candidates.push_back(std::move(s));
    }
    std::vector<std::optional<Label>> labels(candidates.size());
    auto work = [&](std::size_t begin) {
      for (std::size_t i = begin; i < candidates.size(); i += jobs) labels[i] = decide(candidates[i], cfg.solve_budget);
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work, j);
      for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < candidates.size() && out.size() < cfg.count; ++i) {
      if (labels[i]) out.push_back({std::move(candidates[i]), labels[i]});
    }
  }
  return out;
}

}  // namespace coreq
