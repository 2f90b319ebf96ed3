#ifndef COREQ_QLEARN_HPP_
#define COREQ_QLEARN_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coreq/features.hpp"
#include "coreq/graph.hpp"
#include "coreq/kernel.hpp"

namespace coreq {

using Rng = std::mt19937_64;

// Linear action-value model Q(s,a) = w0 + sum_i w_i f_i(s,a).
struct QModel {
  double bias = 0.0;
  std::vector<double> weights;
  double alpha = 1e-4;
  double gamma = 0.9;
  FeatureSet features;
  // When false the bias stays fixed during updates.
  bool learn_bias = true;

  static QModel zero(FeatureSet features, double alpha = 1e-4, double gamma = 0.9);

  // Raw linear form over an already computed feature vector.
  double evaluate(std::span<const double> f) const;
  void validate() const;  // throws Error on a broken invariant

  friend bool operator==(const QModel&, const QModel&) = default;
};

struct EpsilonSchedule {
  double epsilon = 0.1;
  double decay = 0.95;
  std::uint64_t step = 0;
};

EpsilonSchedule decay(const EpsilonSchedule& sched);

// One (s_t, a_t, r_t, s_{t+1}) step. `next` lists the candidate actions of
// the successor state; it is empty at a terminal transition.
struct Transition {
  Goal state;
  Action action;
  double reward = 0.0;
  std::vector<std::pair<Goal, Action>> next;
};

double q_value(const QModel& m, const Goal& s, const Action& a, const ProblemGraph& g);

// Gradient step on the temporal-difference error, over precomputed features.
QModel update(const QModel& m, std::span<const double> features, double reward,
              std::span<const FeatureVector> next_features);
// Same step with features evaluated from the transition itself.
QModel update(const QModel& m, const Transition& t);

// Temporal-difference error of a transition under `m`.
double td_error(const QModel& m, std::span<const double> features, double reward,
                std::span<const FeatureVector> next_features);

// Reference tabular Q-learning over opaque state/action keys.
struct TabularTransition {
  std::string state;
  std::string action;
  double reward = 0.0;
  std::vector<std::pair<std::string, std::string>> next;
};

using QTable = std::map<std::pair<std::string, std::string>, double>;

double table_value(const QTable& q, const std::string& state, const std::string& action);
QTable tabular_update(const QTable& q, const TabularTransition& t, double alpha, double gamma);

// 1 / (ln(1+p) ln(1+T)); throws Error unless p >= 1 and T >= 1.
double reward(std::size_t p, std::size_t T);

// Epsilon-greedy ordering. Greedy branch sorts by Q descending, ties kept in
// the incoming (canonical) order; exploratory branch shuffles with `rng`.
std::vector<Action> order_actions(const QModel& m, const Goal& s, std::span<const Action> actions,
                                  const EpsilonSchedule& sched, Rng& rng, const ProblemGraph& g);

// Index permutation used by order_actions, given each action's Q value.
std::vector<std::size_t> epsilon_greedy_order(std::span<const double> q, double epsilon, Rng& rng);

// Versioned text model file.
void write_model(std::ostream& os, const QModel& m);
QModel read_model(std::istream& is);
std::string format_real(double v);

}  // namespace coreq

#endif  // COREQ_QLEARN_HPP_
