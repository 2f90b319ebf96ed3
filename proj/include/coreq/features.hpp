#ifndef COREQ_FEATURES_HPP_
#define COREQ_FEATURES_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coreq/graph.hpp"
#include "coreq/kernel.hpp"

namespace coreq {

enum class FeatureId {
  RuleOrdering,
  BasicRuleFilter,
  AtomicAccessibility,      // A
  MajorComplexity,          // B
  WeightedMajorComplexity,  // C
  ShortestPathToGoal,       // D
};

inline constexpr std::size_t kFeatureCount = 6;

std::string_view feature_name(FeatureId id);

// Enabled features in canonical order. The two primitive features are always
// present.
class FeatureSet {
 public:
  FeatureSet();
  // "A,C" style selection using the letters A-D; empty selects primitives only.
  static FeatureSet parse(std::string_view letters);
  static FeatureSet all();

  void enable(FeatureId id);
  bool contains(FeatureId id) const { return mask_[static_cast<std::size_t>(id)]; }
  std::vector<FeatureId> ids() const;
  std::size_t size() const;
  // Letters only, e.g. "A,C"; "" for primitives only.
  std::string letters() const;

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;

 private:
  std::array<bool, kFeatureCount> mask_{};
};

using FeatureVector = std::vector<double>;

double rule_ordering(const Goal& s, const Action& a);
double basic_rule_filter(const Goal& s, const Action& a);
double atomic_accessibility(const Goal& s, const Action& a);
double major_complexity_score(const Goal& s, const Action& a);
double weighted_major_complexity_score(const Goal& s, const Action& a);
double shortest_path_score(const Goal& s, const Action& a, const ProblemGraph& g);

// Backgrounding tier of an atomic goal against a premise set: 1.0 when it is
// a premise, 0.8 through conjunctions and consequents only, 0.5 under a
// disjunction, 0.25 under a quantifier, -1.0 when not accessible at all.
double accessibility_tier(const Formula& atom, std::span<const Formula> premises);

FeatureVector feature_vector(const Goal& s, const Action& a, const FeatureSet& enabled,
                             const ProblemGraph& g);

// Evaluates many candidate actions of one state, sharing the per-state work.
class FeatureContext {
 public:
  FeatureContext(const Goal& s, const ProblemGraph* g);

  double value(FeatureId id, const Action& a) const;
  FeatureVector vector(const Action& a, const FeatureSet& enabled) const;

 private:
  const Goal& goal_;
  const ProblemGraph* graph_;
  std::vector<Action> applicable_;
  double accessibility_ = 0.0;
  unsigned max_complexity_ = 0;
  unsigned max_weighted_ = 0;
};

}  // namespace coreq

#endif  // COREQ_FEATURES_HPP_
