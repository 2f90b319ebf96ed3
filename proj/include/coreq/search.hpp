#ifndef COREQ_SEARCH_HPP_
#define COREQ_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coreq/features.hpp"
#include "coreq/graph.hpp"
#include "coreq/kernel.hpp"
#include "coreq/qlearn.hpp"

namespace coreq {

struct SearchLimits {
  std::size_t max_steps = 10000;  // budget on T
  std::size_t max_depth = 64;
};

enum class Outcome { Proved, Refuted, BudgetExhausted };

std::string_view outcome_name(Outcome o);

// p: inference steps in the proof. T: sub-problems generated by the search.
struct SearchStats {
  std::size_t p = 0;
  std::size_t T = 0;
  Outcome outcome = Outcome::Refuted;
};

// What a strategy sees when asked to order the actions of one sub-problem.
class SearchState {
 public:
  SearchState(const Goal& goal, std::size_t depth, Rng& rng) : goal_(goal), depth_(depth), rng_(rng) {}

  const Goal& goal() const { return goal_; }
  std::size_t depth() const { return depth_; }
  Rng& rng() const { return rng_; }
  // Built on first use.
  const ProblemGraph& graph() const;

 private:
  const Goal& goal_;
  std::size_t depth_;
  Rng& rng_;
  mutable std::optional<ProblemGraph> graph_;
};

// Interchangeable action-ordering policy consulted at every expansion.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string id() const = 0;

  // Actions to try, best first. The result is a permutation of the
  // candidates, or of a subset when the strategy discards actions that cannot
  // lead to a proof.
  virtual std::vector<Action> order(const SearchState& state, std::span<const Action> candidates) = 0;

  virtual void on_apply(const SearchState& /*state*/, const Action& /*action*/) {}
  // A sub-problem closed without expansion: loop, depth cut or no actions.
  virtual void on_dead_end() {}
  virtual void on_proved(std::size_t /*p*/, std::size_t /*T*/) {}
  virtual void on_attempt_end() {}
};

struct ProveResult {
  std::optional<Proof> proof;
  SearchStats stats;
};

// Depth-first backward chaining with ancestor loop checking. Conjunctive
// sub-problems are solved in order; every returned proof passes check_proof.
ProveResult prove(const Sequent& s, Strategy& strategy, const SearchLimits& limits, Rng& rng);

// Elimination actions with a strict atomic sub-goal that no premise can
// supply (atomic accessibility -1) cannot succeed.
bool is_relevant(const Goal& g, const Action& a);

// Ordering of choices plus the basic relevance filter.
class BaselineStrategy : public Strategy {
 public:
  std::string id() const override { return "baseline"; }
  std::vector<Action> order(const SearchState& state, std::span<const Action> candidates) override;
};

// Orders the relevant actions by the linear Q model with epsilon-greedy
// exploration; when learning, applies one temporal-difference update per
// applied action.
class QStrategy : public Strategy {
 public:
  QStrategy(QModel model, EpsilonSchedule schedule, bool learning);

  std::string id() const override { return "q"; }
  std::vector<Action> order(const SearchState& state, std::span<const Action> candidates) override;
  void on_apply(const SearchState& state, const Action& action) override;
  void on_dead_end() override;
  void on_proved(std::size_t p, std::size_t T) override;
  void on_attempt_end() override;

  const QModel& model() const { return model_; }
  const EpsilonSchedule& schedule() const { return schedule_; }
  void set_schedule(EpsilonSchedule s) { schedule_ = s; }
  void decay_epsilon() { schedule_ = decay(schedule_); }

  std::size_t transitions() const { return transitions_; }
  std::size_t terminal_transitions() const { return terminal_; }

 private:
  struct Expansion {
    std::vector<Action> candidates;
    std::vector<FeatureVector> features;
  };

  QModel model_;
  EpsilonSchedule schedule_;
  bool learning_;
  std::vector<Expansion> expansions_;  // indexed by depth
  std::optional<FeatureVector> pending_;
  std::size_t transitions_ = 0;
  std::size_t terminal_ = 0;
};

std::unique_ptr<Strategy> baseline_strategy();
std::unique_ptr<QStrategy> q_strategy(QModel model, EpsilonSchedule schedule, bool learning);

// Aggregates over a batch of attempts. p means are over proved problems;
// T is reported both over all attempts and over proved ones.
struct PhaseStats {
  std::size_t count = 0;
  std::size_t solved = 0;
  double mean_T = 0.0;
  double mean_T_solved = 0.0;
  double mean_p = 0.0;
};

PhaseStats summarize(std::span<const SearchStats> runs);

struct EpochStats {
  std::size_t epoch = 0;
  PhaseStats stats;
  double max_weight_delta = 0.0;
  double epsilon = 0.0;  // at the end of the epoch
};

struct TrainResult {
  QModel model;
  EpsilonSchedule schedule;
  std::vector<EpochStats> epochs;
  bool converged = false;
};

inline constexpr double kConvergenceThreshold = 1e-6;

// Epochs x problems with the learning Q strategy; epsilon decays once per
// problem attempt.
TrainResult train(std::span<const Sequent> problems, QModel model, EpsilonSchedule schedule,
                  const SearchLimits& limits, std::size_t epochs, Rng& rng);

struct ProblemRun {
  std::size_t index = 0;
  SearchStats stats;
  double wall_ms = 0.0;
};

using StrategyFactory = std::function<std::unique_ptr<Strategy>()>;

// Independent attempts, one fresh strategy and rng per problem, so results do
// not depend on `jobs`.
std::vector<ProblemRun> evaluate(std::span<const Sequent> problems, const StrategyFactory& factory,
                                 const SearchLimits& limits, std::uint64_t seed, std::size_t jobs = 1);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct CvConfig {
  FeatureSet features;
  double alpha = 1e-4;
  double gamma = 0.9;
  EpsilonSchedule schedule;
  std::size_t epochs = 3;
  SearchLimits limits;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool with_baseline = true;
};

struct FoldReport {
  std::size_t fold = 0;
  std::vector<std::size_t> validation;  // problem indices
  TrainResult training;
  PhaseStats validation_stats;
  PhaseStats baseline_stats;
  std::vector<ProblemRun> validation_runs;
  std::vector<ProblemRun> baseline_runs;
};

struct CvReport {
  std::vector<FoldReport> folds;
  PhaseStats train;       // last training epoch, pooled over folds
  PhaseStats validation;  // pooled over folds
  PhaseStats baseline;    // baseline on the same held-out problems
};

class InsufficientProblems : public Error {
 public:
  using Error::Error;
};

// Seeded shuffle into k contiguous folds; the first n % k folds get one more.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k, std::uint64_t seed);

CvReport cross_validate(std::span<const Sequent> problems, std::size_t folds, const CvConfig& config);

}  // namespace coreq

#endif  // COREQ_SEARCH_HPP_
