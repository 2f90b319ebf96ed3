#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace coreq;
using namespace coreq::test;

namespace {

// Adversarial ordering: every candidate, uniformly shuffled.
class RandomStrategy : public Strategy {
 public:
  std::string id() const override { return "random"; }
  std::vector<Action> order(const SearchState& state, std::span<const Action> candidates) override {
    std::vector<Action> out(candidates.begin(), candidates.end());
    std::shuffle(out.begin(), out.end(), state.rng());
    return out;
  }
};

// Forwards to another strategy and counts the sub-problems its choices create.
class Counting : public Strategy {
 public:
  explicit Counting(Strategy& inner) : inner_(inner) {}
  std::string id() const override { return inner_.id(); }
  std::vector<Action> order(const SearchState& state, std::span<const Action> candidates) override {
    auto out = inner_.order(state, candidates);
    for (const auto& a : out) CHECK(std::find(candidates.begin(), candidates.end(), a) != candidates.end());
    return out;
  }
  void on_apply(const SearchState& state, const Action& action) override {
    generated += apply_action(state.goal(), action).size();
    inner_.on_apply(state, action);
  }
  void on_proved(std::size_t p, std::size_t T) override { inner_.on_proved(p, T); }
  void on_dead_end() override { inner_.on_dead_end(); }

  std::size_t generated = 0;

 private:
  Strategy& inner_;
};

bool proves(const Proof& p, const Sequent& s) { return check_proof(p).valid() && p.sequent.same_as(s); }

ProveResult run(const Sequent& s, Strategy& strat, SearchLimits lim = {}, std::uint64_t seed = 0) {
  Rng rng(seed);
  return prove(s, strat, lim, rng);
}

ProveResult run_baseline(const std::string& text) {
  auto b = baseline_strategy();
  return run(S(text), *b);
}

std::vector<Sequent> corpus(std::size_t n, std::uint64_t seed) {
  GenConfig cfg;
  cfg.count = n;
  cfg.seed = seed;
  cfg.max_depth = 3;
  cfg.solve_budget = 300;
  std::vector<Sequent> out;
  for (const auto& lp : generate_problems(cfg)) out.push_back(lp.sequent);
  return out;
}

}  // namespace

TEST_CASE("prove examples") {
  auto mp = run_baseline("A(a), A(a) -> B(a) |- B(a)");
  CHECK(mp.stats.outcome == Outcome::Proved);
  CHECK(mp.stats.p == 1);
  REQUIRE(mp.proof);
  CHECK(proves(*mp.proof, S("A(a), A(a) -> B(a) |- B(a)")));

  auto lem = run_baseline("|- A(a) | ~A(a)");
  CHECK(lem.stats.outcome == Outcome::Refuted);
  CHECK_FALSE(lem.proof);
  CHECK(lem.stats.p == 0);

  auto fig = run_baseline("A(a), A(a) -> (B(a) | C(a)), ~C(a) |- B(a)");
  CHECK(fig.stats.outcome == Outcome::Proved);
  CHECK(fig.stats.p == 3);
  REQUIRE(fig.proof);
  CHECK(fig.proof->rule == Rule::ImpElim);
  CHECK(fig.stats.T >= fig.stats.p);

  CHECK(run_baseline("~~A(a) |- A(a)").stats.outcome == Outcome::Refuted);
  CHECK(run_baseline("bot |- A(a)").stats.outcome == Outcome::Refuted);
  CHECK(run_baseline("forall x. A(x) |- A(b)").stats.outcome == Outcome::Proved);
  CHECK(run_baseline("A(b) |- exists x. A(x)").stats.outcome == Outcome::Proved);
}

TEST_CASE("budget exhaustion is distinct from refutation") {
  auto b = baseline_strategy();
  auto r = run(S("A(a), A(a) -> B(a), B(a) -> C(a), C(a) -> A(b) |- A(b) & B(a)"), *b, SearchLimits{1, 64});
  CHECK(r.stats.outcome == Outcome::BudgetExhausted);
  CHECK_FALSE(r.proof);
  CHECK_THROWS_AS(run(S("A(a) |- A(a)"), *b, SearchLimits{0, 5}), Error);
}

TEST_CASE("baseline ordering") {
  BaselineStrategy b;
  Rng rng(0);
  {
    Goal g(S("A(a) |- A(a)"));
    SearchState st(g, 0, rng);
    auto out = b.order(st, applicable_actions(g));
    REQUIRE_FALSE(out.empty());
    CHECK(out.front().rule == Rule::Hypothesis);
  }
  {
    Goal g(S("|- A(a) & B(a)"));
    SearchState st(g, 0, rng);
    auto cands = applicable_actions(g);
    auto out = b.order(st, cands);
    CHECK(out == b.order(st, cands));
    for (const auto& a : out) CHECK(a.rule != Rule::OrIntroL);
    REQUIRE_FALSE(out.empty());
    CHECK(out.front().rule == Rule::AndIntro);
  }
  {
    // Cheaper majors first within a rule.
    Goal g(S("(A(a) -> B(a)) -> C(a), A(a) -> C(a), A(a) |- C(a)"));
    SearchState st(g, 0, rng);
    auto out = b.order(st, applicable_actions(g));
    std::vector<Formula> imp;
    for (const auto& a : out) {
      if (a.rule == Rule::ImpElim) imp.push_back(*a.major);
    }
    CHECK(std::is_sorted(imp.begin(), imp.end(),
                         [](const Formula& x, const Formula& y) { return complexity(x) < complexity(y); }));
  }
}

TEST_CASE("q strategy bookkeeping") {
  Sequent s = S("A(a), A(a) -> B(a) |- B(a)");
  QModel m = QModel::zero(FeatureSet::all(), 0.1, 0.9);

  auto frozen = q_strategy(m, EpsilonSchedule{0.0, 1.0, 0}, false);
  CHECK(run(s, *frozen).stats.outcome == Outcome::Proved);
  CHECK(frozen->model() == m);
  CHECK(frozen->transitions() == 0);

  auto learner = q_strategy(m, EpsilonSchedule{0.0, 1.0, 0}, true);
  auto r = run(s, *learner);
  CHECK(r.stats.outcome == Outcome::Proved);
  CHECK(learner->terminal_transitions() == 1);
  CHECK(learner->transitions() >= 1);
  CHECK_FALSE(learner->model() == m);
  CHECK(learner->model().bias > 0.0);

  auto failing = q_strategy(m, EpsilonSchedule{0.0, 1.0, 0}, true);
  CHECK(run(S("|- A(a) | ~A(a)"), *failing).stats.outcome == Outcome::Refuted);
  CHECK(failing->terminal_transitions() == 0);
}

TEST_CASE("property: proofs are sound and T counts generated sub-problems") {
  auto problems = corpus(120, 61);
  QModel m = QModel::zero(FeatureSet::all(), 0.05, 0.9);
  std::mt19937_64 wr(62);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& w : m.weights) w = u(wr);
  SearchLimits lim{2000, 40};
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto& s = problems[i];
    BaselineStrategy base;
    RandomStrategy rnd;
    QStrategy q(m, EpsilonSchedule{0.3, 1.0, 0}, true);
    for (Strategy* inner : std::initializer_list<Strategy*>{&base, &rnd, &q}) {
      Counting counting(*inner);
      auto r = run(s, counting, lim, i);
      INFO(format_sequent(s), " ", inner->id());
      CHECK(r.stats.T == counting.generated);
      if (r.stats.outcome == Outcome::Proved) {
        REQUIRE(r.proof);
        CHECK(proves(*r.proof, s));
        CHECK(r.stats.p == proof_length(*r.proof));
        CHECK(r.stats.p >= 1);
        CHECK(r.stats.T >= r.stats.p);
      } else {
        CHECK(r.stats.p == 0);
        CHECK_FALSE(r.proof);
      }
    }
  }
}

TEST_CASE("property: refutations agree across strategies") {
  auto problems = corpus(150, 63);
  SearchLimits lim{20000, 64};
  std::size_t refuted = 0;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    BaselineStrategy base;
    auto rb = run(problems[i], base, lim);
    if (rb.stats.outcome != Outcome::Refuted) continue;
    ++refuted;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      RandomStrategy rnd;
      auto rr = run(problems[i], rnd, lim, seed);
      INFO(format_sequent(problems[i]));
      CHECK(rr.stats.outcome != Outcome::Proved);
    }
    QStrategy q(QModel::zero(FeatureSet::all()), EpsilonSchedule{1.0, 1.0, 0}, false);
    CHECK(run(problems[i], q, lim, i).stats.outcome != Outcome::Proved);
  }
  CHECK(refuted > 0);
}

TEST_CASE("train") {
  auto problems = corpus(30, 64);
  QModel m = QModel::zero(FeatureSet::parse("B,C"), 1e-2, 0.9);
  SearchLimits lim{500, 40};
  EpsilonSchedule sched{0.5, 0.9, 0};

  Rng r0(1);
  auto none = train(problems, m, sched, lim, 0, r0);
  CHECK(none.model == m);
  CHECK(none.epochs.empty());

  QModel still = m;
  still.alpha = 0.0;
  Rng r1(1);
  CHECK(train(problems, still, sched, lim, 3, r1).model == still);

  Rng a(7), b(7);
  auto ta = train(problems, m, sched, lim, 2, a);
  auto tb = train(problems, m, sched, lim, 2, b);
  CHECK(ta.model == tb.model);
  REQUIRE(ta.epochs.size() == 2);
  CHECK(ta.epochs[0].stats.count == problems.size());
  CHECK(ta.schedule.epsilon == doctest::Approx(0.5 * std::pow(0.9, 2 * problems.size())));
  CHECK(ta.epochs[1].epsilon == doctest::Approx(ta.schedule.epsilon));
  CHECK_THROWS_AS(train({}, m, sched, lim, 1, a), Error);
}

TEST_CASE("folds") {
  auto f = make_folds(154, 3, 5);
  REQUIRE(f.size() == 3);
  CHECK(f[0].size() == 52);
  CHECK(f[1].size() == 51);
  CHECK(f[2].size() == 51);
  std::multiset<std::size_t> all;
  for (const auto& fold : f) all.insert(fold.begin(), fold.end());
  CHECK(all.size() == 154);
  CHECK(std::set<std::size_t>(all.begin(), all.end()).size() == 154);
  CHECK(make_folds(154, 3, 5) == f);

  auto loo = make_folds(7, 7, 1);
  for (const auto& fold : loo) CHECK(fold.size() == 1);
  CHECK_THROWS_AS(make_folds(2, 3, 1), InsufficientProblems);
  CHECK_THROWS_AS(make_folds(10, 1, 1), Error);
}

TEST_CASE("cross validation") {
  auto problems = corpus(24, 65);
  CvConfig cfg;
  cfg.features = FeatureSet::parse("C");
  cfg.alpha = 1e-2;
  cfg.epochs = 2;
  cfg.limits = {500, 40};
  cfg.seed = 3;
  auto rep = cross_validate(problems, 3, cfg);
  REQUIRE(rep.folds.size() == 3);
  std::multiset<std::size_t> seen;
  for (const auto& f : rep.folds) {
    seen.insert(f.validation.begin(), f.validation.end());
    CHECK(f.validation_runs.size() == f.validation.size());
    CHECK(f.baseline_runs.size() == f.validation.size());
    CHECK(f.training.epochs.size() == 2);
  }
  CHECK(std::set<std::size_t>(seen.begin(), seen.end()).size() == problems.size());
  CHECK(seen.size() == problems.size());
  CHECK(rep.validation.count == problems.size());
  CHECK(rep.baseline.count == problems.size());

  cfg.jobs = 4;
  auto par = cross_validate(problems, 3, cfg);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(par.folds[k].training.model == rep.folds[k].training.model);
    for (std::size_t i = 0; i < rep.folds[k].validation_runs.size(); ++i) {
      CHECK(par.folds[k].validation_runs[i].stats.T == rep.folds[k].validation_runs[i].stats.T);
    }
  }
  CHECK_THROWS_AS(cross_validate(std::span(problems).first(2), 3, cfg), InsufficientProblems);
}

TEST_CASE("evaluate is independent of the job count") {
  auto problems = corpus(40, 66);
  StrategyFactory f = [] { return q_strategy(QModel::zero(FeatureSet::all()), EpsilonSchedule{0.5, 1.0, 0}, false); };
  auto one = evaluate(problems, f, {800, 40}, 9, 1);
  auto many = evaluate(problems, f, {800, 40}, 9, 5);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].index == i);
    CHECK(many[i].index == i);
    CHECK(one[i].stats.T == many[i].stats.T);
    CHECK(one[i].stats.outcome == many[i].stats.outcome);
  }
  CHECK(derive_seed(9, 0) != derive_seed(9, 1));
  CHECK(derive_seed(9, 0) == derive_seed(9, 0));
}

TEST_CASE("summarize") {
  std::vector<SearchStats> runs{{2, 5, Outcome::Proved}, {0, 9, Outcome::Refuted}, {4, 7, Outcome::Proved}};
  auto s = summarize(runs);
  CHECK(s.count == 3);
  CHECK(s.solved == 2);
  CHECK(s.mean_T == doctest::Approx(7.0));
  CHECK(s.mean_T_solved == doctest::Approx(6.0));
  CHECK(s.mean_p == doctest::Approx(3.0));
  CHECK(summarize({}).count == 0);
}
