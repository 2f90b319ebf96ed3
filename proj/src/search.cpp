#include "coreq/search.hpp"

#include <algorithm>
#include <unordered_set>

namespace coreq {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Proved: return "proved";
    case Outcome::Refuted: return "refuted";
    case Outcome::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

const ProblemGraph& SearchState::graph() const {
  if (!graph_) graph_.emplace(goal_.sequent);
  return *graph_;
}

namespace {

using FormulaSet = std::vector<Formula>;

void add(FormulaSet& set, const Formula& f) {
  if (std::find(set.begin(), set.end(), f) == set.end()) set.push_back(f);
}

bool contains(const FormulaSet& set, const Formula& f) {
  return std::find(set.begin(), set.end(), f) != set.end();
}

void drop(FormulaSet& set, const Formula& f) { set.erase(std::remove(set.begin(), set.end(), f), set.end()); }

std::string goal_key(const Goal& g) {
  std::string key;
  for (const auto& p : sorted_premises(g.sequent)) {
    key += format_formula(p);
    key += ',';
  }
  key += g.absurd_ok ? "|-? " : "|- ";
  key += format_formula(g.sequent.conclusion);
  return key;
}

class Engine {
 public:
  Engine(Strategy& strategy, const SearchLimits& limits, Rng& rng)
      : strategy_(strategy), limits_(limits), rng_(rng) {}

  struct Solved {
    Proof proof;
    FormulaSet used;  // undischarged assumptions the proof rests on
  };

  std::optional<Solved> solve(const Goal& g, std::size_t depth) {
    if (exhausted_) return std::nullopt;
    if (depth > limits_.max_depth) {
      cut_ = true;
      strategy_.on_dead_end();
      return std::nullopt;
    }
    std::string key = goal_key(g);
    if (!path_.insert(key).second) {
      strategy_.on_dead_end();
      return std::nullopt;
    }

    std::optional<Solved> result;
    auto candidates = applicable_actions(g);
    if (candidates.empty()) {
      strategy_.on_dead_end();
    } else {
      SearchState state(g, depth, rng_);
      for (const Action& a : strategy_.order(state, candidates)) {
        strategy_.on_apply(state, a);
        auto children = apply_action(g, a);
        T_ += children.size();
        if (T_ > limits_.max_steps) {
          exhausted_ = true;
          break;
        }
        result = finish(g, a, children, depth);
        if (result || exhausted_) break;
      }
    }
    path_.erase(key);
    return result;
  }

  std::size_t T() const { return T_; }
  bool incomplete() const { return exhausted_ || cut_; }

 private:
  std::optional<Solved> finish(const Goal& g, const Action& a, std::vector<Goal>& children, std::size_t depth) {
    Solved out;
    Proof& node = out.proof;
    node.sequent.premises = g.sequent.premises;
    node.sequent.conclusion = g.sequent.conclusion;
    node.rule = a.rule;
    node.major = a.major;
    node.instance = a.instance;

    if (a.rule == Rule::Hypothesis) {
      if (!g.sequent.has_premise(g.sequent.conclusion)) node.sequent.conclusion = Formula::falsum();
      out.used = {node.sequent.conclusion};
      return out;
    }

    std::vector<Solved> subs;
    if (a.rule == Rule::OrElim) {
      if (!solve_cases(g, children, depth, subs)) return std::nullopt;
    } else {
      for (const auto& child : children) {
        auto s = solve(child, depth + 1);
        if (!s) return std::nullopt;
        subs.push_back(std::move(*s));
      }
    }

    // Conclusion, discharged assumptions and their use.
    const Formula& c = g.sequent.conclusion;
    FormulaSet& used = out.used;
    auto take = [&](std::size_t i, std::initializer_list<Formula> discharged) {
      FormulaSet u = subs[i].used;
      for (const auto& d : discharged) drop(u, d);
      for (const auto& f : u) add(used, f);
    };
    switch (a.rule) {
      case Rule::AndIntro:
      case Rule::OrIntroL:
      case Rule::OrIntroR:
      case Rule::ForAllIntro:
      case Rule::ExistsIntro:
        for (std::size_t i = 0; i < subs.size(); ++i) take(i, {});
        break;
      case Rule::ImpIntro:
      case Rule::NegIntro: {
        const Formula& assumption = c.is(Connective::Implies) ? c.left() : c.body();
        if (!contains(subs[0].used, assumption)) return std::nullopt;
        node.discharged = {assumption};
        take(0, {assumption});
        break;
      }
      case Rule::AndElim: {
        const Formula& m = *a.major;
        if (!contains(subs[0].used, m.left()) && !contains(subs[0].used, m.right())) return std::nullopt;
        node.discharged = {m.left(), m.right()};
        node.sequent.conclusion = subs[0].proof.sequent.conclusion;
        take(0, {m.left(), m.right()});
        add(used, m);
        break;
      }
      case Rule::OrElim: {
        const Formula& m = *a.major;
        if (!contains(subs[0].used, m.left()) || !contains(subs[1].used, m.right())) return std::nullopt;
        node.discharged = {m.left(), m.right()};
        const Formula& c0 = subs[0].proof.sequent.conclusion;
        node.sequent.conclusion = c0.is_falsum() ? subs[1].proof.sequent.conclusion : c0;
        take(0, {m.left()});
        take(1, {m.right()});
        add(used, m);
        break;
      }
      case Rule::ImpElim: {
        const Formula& m = *a.major;
        if (!contains(subs[1].used, m.right())) return std::nullopt;
        node.discharged = {m.right()};
        node.sequent.conclusion = subs[1].proof.sequent.conclusion;
        take(0, {});
        take(1, {m.right()});
        add(used, m);
        break;
      }
      case Rule::NegElim:
        node.sequent.conclusion = Formula::falsum();
        take(0, {});
        add(used, *a.major);
        break;
      case Rule::ForAllElim:
      case Rule::ExistsElim: {
        const Formula inst = instantiate(*a.major, *a.instance);
        if (!contains(subs[0].used, inst)) return std::nullopt;
        node.discharged = {inst};
        node.sequent.conclusion = subs[0].proof.sequent.conclusion;
        take(0, {inst});
        add(used, *a.major);
        break;
      }
      case Rule::Hypothesis: break;
    }
    if (!g.accepts(node.sequent.conclusion)) return std::nullopt;
    for (auto& s : subs) node.children.push_back(std::move(s.proof));
    return out;
  }

  // Disjunction cases may each close with falsum, but under a strict goal at
  // least one of them has to reach the conclusion itself.
  bool solve_cases(const Goal& g, std::vector<Goal>& cases, std::size_t depth, std::vector<Solved>& subs) {
    const bool strict = !g.absurd_ok && !g.sequent.conclusion.is_falsum();
    auto first = solve(cases[0], depth + 1);
    if (!first) return false;
    if (strict && first->proof.sequent.conclusion.is_falsum()) {
      Goal second_strict(cases[1].sequent, false);
      if (auto second = solve(second_strict, depth + 1)) {
        subs.push_back(std::move(*first));
        subs.push_back(std::move(*second));
        return true;
      }
      Goal first_strict(cases[0].sequent, false);
      first = solve(first_strict, depth + 1);
      if (!first) return false;
    }
    auto second = solve(cases[1], depth + 1);
    if (!second) return false;
    subs.push_back(std::move(*first));
    subs.push_back(std::move(*second));
    return true;
  }

  Strategy& strategy_;
  const SearchLimits& limits_;
  Rng& rng_;
  std::size_t T_ = 0;
  bool exhausted_ = false;
  bool cut_ = false;
  std::unordered_set<std::string> path_;
};

}  // namespace

ProveResult prove(const Sequent& s, Strategy& strategy, const SearchLimits& limits, Rng& rng) {
  if (limits.max_steps < 1 || limits.max_depth < 1) throw Error("search limits must be at least 1");
  Engine engine(strategy, limits, rng);
  auto solved = engine.solve(Goal(s, false), 0);
  ProveResult result;
  result.stats.T = engine.T();
  if (solved) {
    result.stats.outcome = Outcome::Proved;
    result.stats.p = proof_length(solved->proof);
    result.proof = std::move(solved->proof);
    strategy.on_proved(result.stats.p, result.stats.T);
  } else {
    result.stats.outcome = engine.incomplete() ? Outcome::BudgetExhausted : Outcome::Refuted;
  }
  strategy.on_attempt_end();
  return result;
}

bool is_relevant(const Goal& g, const Action& a) {
  if (!is_elimination(a.rule)) return true;
  for (const auto& child : apply_action(g, a)) {
    const Formula& c = child.sequent.conclusion;
    if (child.absurd_ok || !c.is_atom()) continue;
    if (accessibility_tier(c, child.sequent.premises) < 0.0) return false;
  }
  return true;
}

std::vector<Action> BaselineStrategy::order(const SearchState& state, std::span<const Action> candidates) {
  FeatureContext ctx(state.goal(), nullptr);
  std::vector<Action> kept;
  for (const auto& a : candidates) {
    if (ctx.value(FeatureId::BasicRuleFilter, a) < 0.0) continue;
    if (!is_relevant(state.goal(), a)) continue;
    kept.push_back(a);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Action& x, const Action& y) {
    int tx = rule_tier(x.rule), ty = rule_tier(y.rule);
    if (tx != ty) return tx < ty;
    unsigned cx = x.major ? complexity(*x.major) : 0;
    unsigned cy = y.major ? complexity(*y.major) : 0;
    return cx < cy;
  });
  return kept;
}

QStrategy::QStrategy(QModel model, EpsilonSchedule schedule, bool learning)
    : model_(std::move(model)), schedule_(schedule), learning_(learning) {
  model_.validate();
}

std::vector<Action> QStrategy::order(const SearchState& state, std::span<const Action> candidates) {
  const bool needs_graph = model_.features.contains(FeatureId::ShortestPathToGoal);
  FeatureContext ctx(state.goal(), needs_graph ? &state.graph() : nullptr);
  Expansion exp;
  for (const auto& a : candidates) {
    if (is_relevant(state.goal(), a)) exp.candidates.push_back(a);
  }
  for (const auto& a : exp.candidates) exp.features.push_back(ctx.vector(a, model_.features));

  if (learning_ && pending_) {
    // A successor without relevant actions is a dead end, which ends the
    // update stream instead of bootstrapping from nothing.
    if (!exp.features.empty()) {
      model_ = update(model_, *pending_, 0.0, exp.features);
      ++transitions_;
    }
    pending_.reset();
  }

  std::vector<double> q;
  for (const auto& f : exp.features) q.push_back(model_.evaluate(f));
  std::vector<Action> out;
  for (std::size_t i : epsilon_greedy_order(q, schedule_.epsilon, state.rng())) out.push_back(exp.candidates[i]);

  if (expansions_.size() <= state.depth()) expansions_.resize(state.depth() + 1);
  expansions_[state.depth()] = std::move(exp);
  return out;
}

void QStrategy::on_apply(const SearchState& state, const Action& action) {
  if (!learning_) return;
  // A previous action whose successor was never expanded ends its stream here.
  pending_.reset();
  if (state.depth() >= expansions_.size()) return;
  const auto& exp = expansions_[state.depth()];
  auto it = std::find(exp.candidates.begin(), exp.candidates.end(), action);
  if (it != exp.candidates.end()) pending_ = exp.features[static_cast<std::size_t>(it - exp.candidates.begin())];
}

void QStrategy::on_proved(std::size_t p, std::size_t T) {
  if (!learning_ || !pending_) return;
  model_ = update(model_, *pending_, reward(std::max<std::size_t>(p, 1), std::max<std::size_t>(T, 1)), {});
  pending_.reset();
  ++transitions_;
  ++terminal_;
}

void QStrategy::on_dead_end() { pending_.reset(); }

void QStrategy::on_attempt_end() {
  pending_.reset();
  expansions_.clear();
}

std::unique_ptr<Strategy> baseline_strategy() { return std::make_unique<BaselineStrategy>(); }

std::unique_ptr<QStrategy> q_strategy(QModel model, EpsilonSchedule schedule, bool learning) {
  return std::make_unique<QStrategy>(std::move(model), schedule, learning);
}

}  // namespace coreq
